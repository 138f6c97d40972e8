// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/fieldops.hpp"

#include <cmath>
#include <stdexcept>

namespace rhlab {

namespace {

// One-dimensional kernel taps for the scaled bump profile, normalized to sum 1.
std::vector<double> bump_taps(double epsilon, double h) {
    const int reach = static_cast<int>(std::floor(epsilon / h));
    std::vector<double> taps(2 * reach + 1, 0.0);
    double total = 0.0;
    for (int o = -reach; o <= reach; ++o) {
        const double r = (o * h) / epsilon;
        const double r2 = r * r;
        const double v = r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
        taps[o + reach] = v;
        total += v;
    }
    for (auto& t : taps) t /= total;
    return taps;
}

Field convolve_axis(const Grid& g, const Field& f, int axis, const std::vector<double>& taps,
                    Sample mode) {
    const int reach = (static_cast<int>(taps.size()) - 1) / 2;
    const int n = g.n(axis);
    Field out(g.cells(), 0.0);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int pos = axis == 0 ? i : (axis == 1 ? j : k);
                double acc = 0.0;
                for (int o = -reach; o <= reach; ++o) {
                    int q = pos + o;
                    if (mode == Sample::periodic) {
                        q %= n;
                        if (q < 0) q += n;
                    } else {
                        q = q < 0 ? 0 : (q >= n ? n - 1 : q);
                    }
                    int t[3] = {i, j, k};
                    t[axis] = q;
                    acc += taps[o + reach] * f[g.index(t[0], t[1], t[2])];
                }
                out[g.index(i, j, k)] = acc;
            }
    return out;
}

}  // namespace

MollifyResult mollify(const Grid& g, const Field& f, double epsilon, Sample mode) {
    if (f.size() != g.cells()) throw std::invalid_argument("mollify: field size mismatch");
    MollifyResult res;
    res.epsilon = epsilon;
    bool any_axis = false;
    for (int a = 0; a < 3; ++a)
        if (g.n(a) > 1 && epsilon >= 2.0 * g.h[a]) any_axis = true;
    if (!any_axis) {
        res.field = f;
        res.applied = false;
        return res;
    }
    Field cur = f;
    for (int a = 0; a < 3; ++a) {
        if (g.n(a) == 1 || epsilon < 2.0 * g.h[a]) continue;
        cur = convolve_axis(g, cur, a, bump_taps(epsilon, g.h[a]), mode);
    }
    res.field = std::move(cur);
    res.applied = true;
    return res;
}

double l2_norm(const Grid& g, const Field& f) {
    double acc = 0.0;
    for (double v : f) acc += v * v;
    return std::sqrt(acc * g.cell_volume());
}

double l2_norm(const Grid& g, const Field& w, const Vec3Field& u) {
    double acc = 0.0;
    for (std::size_t c = 0; c < w.size(); ++c)
        acc += w[c] * w[c] + u.x[c] * u.x[c] + u.y[c] * u.y[c] + u.z[c] * u.z[c];
    return std::sqrt(acc * g.cell_volume());
}

double sobolev_norm(const Grid& g, const Field& f, int s, Sample mode) {
    if (s < 0 || s > 3) throw std::invalid_argument("sobolev_norm: order must be in [0, 3]");
    if (f.size() != g.cells()) throw std::invalid_argument("sobolev_norm: field size mismatch");
    double acc = 0.0;
    // breadth-first over multi-indices: level p holds all distinct derivatives
    // of total order p; each entry remembers the first axis it may still
    // differentiate along so every multi-index is produced exactly once
    std::vector<std::pair<Field, int>> level;
    level.emplace_back(f, 0);
    for (int p = 0; p <= s; ++p) {
        for (const auto& [d, axis0] : level) {
            (void)axis0;
            double sq = 0.0;
            for (double v : d) sq += v * v;
            acc += sq;
        }
        if (p == s) break;
        std::vector<std::pair<Field, int>> next;
        for (const auto& [d, axis0] : level)
            for (int a = axis0; a < 3; ++a) {
                if (g.n(a) == 1) continue;
                next.emplace_back(derivative(g, d, a, mode), a);
            }
        level = std::move(next);
    }
    return std::sqrt(acc * g.cell_volume());
}

double sobolev_norm(const Grid& g, const Field& w, const Vec3Field& u, int s, Sample mode) {
    const double a = sobolev_norm(g, w, s, mode);
    const double b = sobolev_norm(g, u.x, s, mode);
    const double c = sobolev_norm(g, u.y, s, mode);
    const double d = sobolev_norm(g, u.z, s, mode);
    return std::sqrt(a * a + b * b + c * c + d * d);
}

Field multiscale_profile(const Grid& g, double amplitude, int octaves, double k0) {
    Field f(g.cells(), 0.0);
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double x = g.center(i, j, k)[0];
                double v = 0.0;
                for (int o = 0; o < octaves; ++o)
                    v += std::ldexp(1.0, -o) * std::sin(std::ldexp(1.0, o) * k0 * x + o);
                f[g.index(i, j, k)] = amplitude * v;
            }
    return f;
}

}  // namespace rhlab
