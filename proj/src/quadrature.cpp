// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace rhlab {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    GaussRule r;
    r.node.resize(n);
    r.weight.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton iteration from the Chebyshev-like initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.node[n - 1 - i] = x;
        r.weight[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

AngularQuadrature build_angular_quadrature(int order) {
    if (order < 1 || order > 64)
        throw std::invalid_argument("build_angular_quadrature: order out of range [1, 64]");
    AngularQuadrature q;
    q.order = order;
    q.n_polar = order;
    q.n_azimuth = 2 * order;
    const GaussRule polar = gauss_legendre(order);
    const double dphi = 2.0 * M_PI / q.n_azimuth;
    q.omega.reserve(static_cast<std::size_t>(q.n_polar) * q.n_azimuth);
    q.weight.reserve(q.omega.capacity());
    for (int ip = 0; ip < q.n_polar; ++ip) {
        const double mu = polar.node[ip];
        const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
        for (int ia = 0; ia < q.n_azimuth; ++ia) {
            const double phi = dphi * (ia + 0.5);
            q.omega.push_back({mu, st * std::cos(phi), st * std::sin(phi)});
            q.weight.push_back(polar.weight[ip] * dphi);
        }
    }
    return q;
}

FrequencyGrid build_frequency_grid(int groups, double v_max) {
    if (groups < 1) throw std::invalid_argument("build_frequency_grid: groups must be positive");
    if (!(v_max > 0.0)) throw std::invalid_argument("build_frequency_grid: v_max must be positive");
    const GaussRule r = gauss_legendre(groups);
    FrequencyGrid f;
    f.v_max = v_max;
    f.node.resize(groups);
    f.weight.resize(groups);
    for (int i = 0; i < groups; ++i) {
        f.node[i] = 0.5 * (r.node[i] + 1.0) * v_max;
        f.weight[i] = 0.5 * r.weight[i] * v_max;
    }
    return f;
}

}  // namespace rhlab
