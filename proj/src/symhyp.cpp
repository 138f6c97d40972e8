// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/symhyp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rhlab {

namespace {

void check_gamma(double gamma) {
    if (!(gamma > 1.0 && gamma <= 3.0))
        throw std::invalid_argument("gamma must lie in (1, 3]");
}

void check_axis(int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("axis must be 0, 1, or 2");
}

}  // namespace

double w_from_rho(double rho, double gamma) {
    check_gamma(gamma);
    if (rho < 0.0) throw std::invalid_argument("w_from_rho: negative density");
    if (rho == 0.0) return 0.0;
    return std::pow(rho, 0.5 * (gamma - 1.0));
}

double rho_from_w(double w, double gamma) {
    check_gamma(gamma);
    if (w < 0.0) throw std::invalid_argument("rho_from_w: negative input");
    if (w == 0.0) return 0.0;
    return std::pow(w, 2.0 / (gamma - 1.0));
}

double pressure_from_rho(double rho, double gamma) {
    check_gamma(gamma);
    if (rho < 0.0) throw std::invalid_argument("pressure_from_rho: negative density");
    if (rho == 0.0) return 0.0;
    return std::pow(rho, gamma);
}

double kappa_coeff(double gamma) {
    check_gamma(gamma);
    return (gamma - 1.0) * (gamma - 1.0) / (4.0 * gamma);
}

Mat4 assemble_a0(double gamma) {
    const double kappa = kappa_coeff(gamma);
    Mat4 a{};
    a[0] = 1.0;
    a[5] = kappa;
    a[10] = kappa;
    a[15] = kappa;
    return a;
}

Mat4 assemble_aj(const Vec4& U, double gamma, int axis) {
    check_axis(axis);
    const double kappa = kappa_coeff(gamma);
    const double w = U[0];
    const double uj = U[1 + axis];
    const double coupling = 0.5 * (gamma - 1.0) * w;
    Mat4 a{};
    a[0] = uj;
    a[0 * 4 + 1 + axis] = coupling;
    a[(1 + axis) * 4 + 0] = coupling;
    a[5] = kappa * uj;
    a[10] = kappa * uj;
    a[15] = kappa * uj;
    return a;
}

std::array<double, 4> characteristic_speeds(const Vec4& U, double gamma, int axis) {
    check_axis(axis);
    check_gamma(gamma);
    const double uj = U[1 + axis];
    const double s = std::sqrt(gamma) * U[0];
    std::array<double, 4> speeds{uj - s, uj, uj, uj + s};
    std::sort(speeds.begin(), speeds.end());
    return speeds;
}

Vec4 radiation_source_g(const CellIntensity& cell, double w,
                        const AngularQuadrature& quad, const FrequencyGrid& freq,
                        const AbsorptionModel& absorption, const PlanckSpectrum& bbar,
                        double c, double gamma) {
    if (cell.groups != freq.size() || cell.ordinates != quad.size())
        throw std::invalid_argument("radiation_source_g: grid mismatch");
    const double coef = kappa_coeff(gamma) / c;
    Vec4 g{0.0, 0.0, 0.0, 0.0};
    if (w <= 0.0) return g;
    for (std::size_t gi = 0; gi < freq.size(); ++gi) {
        const double v = freq.node[gi];
        const double kb = absorption.kbar(v, w);
        if (kb == 0.0) continue;
        const double bb = bbar(v);
        for (std::size_t k = 0; k < quad.size(); ++k) {
            const double wt = freq.weight[gi] * quad.weight[k] * kb *
                              (cell.at(gi, k) - bb);
            g[1] += wt * quad.omega[k][0];
            g[2] += wt * quad.omega[k][1];
            g[3] += wt * quad.omega[k][2];
        }
    }
    g[1] *= coef;
    g[2] *= coef;
    g[3] *= coef;
    return g;
}

GeneralCollision equilibrium_collision(const AbsorptionModel& absorption,
                                       const PlanckSpectrum& bbar, double w,
                                       const ScatteringKernel& scattering) {
    GeneralCollision gc;
    gc.sbar = [&absorption, &bbar, w](double v) {
        return absorption.kbar(v, w) * bbar(v);
    };
    gc.sigma_abar = [&absorption, w](double v) { return absorption.kbar(v, w); };
    gc.scattering = scattering;
    return gc;
}

Vec4 collision_source_f(const CellIntensity& cell, const AngularQuadrature& quad,
                        const FrequencyGrid& freq, const GeneralCollision& gc,
                        double c, double gamma) {
    if (cell.groups != freq.size() || cell.ordinates != quad.size())
        throw std::invalid_argument("collision_source_f: grid mismatch");
    if (!gc.sbar || !gc.sigma_abar)
        throw std::invalid_argument("collision_source_f: missing collision model");
    const double coef = -kappa_coeff(gamma) / c;
    Vec4 f{0.0, 0.0, 0.0, 0.0};
    for (std::size_t gi = 0; gi < freq.size(); ++gi) {
        const double v = freq.node[gi];
        const double sb = gc.sbar(v);
        const double sa = gc.sigma_abar(v);
        for (std::size_t k = 0; k < quad.size(); ++k) {
            const double I = cell.at(gi, k);
            double bracket = sb - sa * I;
            if (gc.scattering.enabled) {
                double gain = 0.0, loss = 0.0;
                for (std::size_t gp = 0; gp < freq.size(); ++gp) {
                    const double vp = freq.node[gp];
                    for (std::size_t kp = 0; kp < quad.size(); ++kp) {
                        const double wq = freq.weight[gp] * quad.weight[kp];
                        const double mu = dot(quad.omega[k], quad.omega[kp]);
                        gain += wq * (v / vp) * gc.scattering.in(vp, v, mu) *
                                cell.at(gp, kp);
                        loss += wq * gc.scattering.out(v, vp, mu);
                    }
                }
                bracket += gain - loss * I;
            }
            const double wt = freq.weight[gi] * quad.weight[k] * bracket;
            f[1] += wt * quad.omega[k][0];
            f[2] += wt * quad.omega[k][1];
            f[3] += wt * quad.omega[k][2];
        }
    }
    f[1] *= coef;
    f[2] *= coef;
    f[3] *= coef;
    return f;
}

}  // namespace rhlab
