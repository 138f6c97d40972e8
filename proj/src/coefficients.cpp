// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rhlab/fieldops.hpp"

namespace rhlab {

double PlanckSpectrum::operator()(double v) const {
    if (v < 0.0) throw std::invalid_argument("PlanckSpectrum: negative frequency");
    if (v == 0.0) return 0.0;
    return b * v * v * v / std::expm1(v / v_ref);
}

AbsorptionModel make_line_absorption(const LineAbsorptionParams& p) {
    if (!(p.gamma > 1.0 && p.gamma <= 3.0))
        throw std::invalid_argument("make_line_absorption: gamma must lie in (1, 3]");
    if (!(p.d1 >= 0.0 && p.d2 > 0.0 && p.gas_constant > 0.0 && p.v0 > 0.0))
        throw std::invalid_argument("make_line_absorption: bad parameters");
    const double sr = std::sqrt(p.gas_constant);
    const double power = (3.0 - p.gamma) / (p.gamma - 1.0);
    const LineAbsorptionParams cp = p;
    AbsorptionModel m;
    m.name = "line";
    m.ka = [cp, sr, power](double v, double w) {
        if (w <= 0.0) return 0.0;
        const double q = (v - cp.v0) / cp.v0;
        return cp.d1 * sr * std::pow(w, power) * std::exp(-(cp.d2 * sr / w) * q * q);
    };
    m.kbar = [cp, sr](double v, double w) {
        if (w <= 0.0) return 0.0;
        const double q = (v - cp.v0) / cp.v0;
        return cp.d1 * sr / w * std::exp(-(cp.d2 * sr / w) * q * q);
    };
    return m;
}

AbsorptionModel make_zero_absorption() {
    AbsorptionModel m;
    m.name = "zero";
    m.ka = [](double, double) { return 0.0; };
    m.kbar = [](double, double) { return 0.0; };
    return m;
}

AbsorptionModel make_constant_kbar(double value, double gamma) {
    if (!(gamma > 1.0 && gamma <= 3.0))
        throw std::invalid_argument("make_constant_kbar: gamma must lie in (1, 3]");
    AbsorptionModel m;
    m.name = "constant-kbar";
    m.kbar = [value](double, double) { return value; };
    m.ka = [value, gamma](double, double w) {
        if (w <= 0.0) return 0.0;
        return value * std::pow(w, 2.0 / (gamma - 1.0));
    };
    return m;
}

double emission_source_s(double v, double ka, double intensity, double bbar_v, double c,
                         double h_planck) {
    if (v <= 0.0) return 0.0;
    const double stim = c * c / (2.0 * h_planck * v * v * v);
    return ka * bbar_v * (1.0 + stim * intensity);
}

double absorption_sigma_a(double v, double ka, double bbar_v, double c, double h_planck) {
    if (v <= 0.0) return 0.0;
    const double stim = c * c / (2.0 * h_planck * v * v * v);
    return ka * (1.0 + stim * bbar_v);
}

ScatteringKernel make_no_scattering() {
    ScatteringKernel k;
    k.enabled = false;
    k.name = "none";
    k.in = [](double, double, double) { return 0.0; };
    k.out = [](double, double, double) { return 0.0; };
    return k;
}

ScatteringKernel make_isotropic_kernel(double sigma0, double v_center, double width) {
    if (!(sigma0 >= 0.0 && width > 0.0))
        throw std::invalid_argument("make_isotropic_kernel: bad parameters");
    auto g = [v_center, width](double v) {
        const double t = (v - v_center) / width;
        const double s = 1.0 - t * t;
        return s > 0.0 ? s * s : 0.0;
    };
    ScatteringKernel k;
    k.enabled = sigma0 > 0.0;
    k.name = "isotropic-separable";
    k.in = [sigma0, g](double v_from, double v_to, double) {
        return sigma0 * g(v_from) * g(v_to);
    };
    k.out = k.in;
    return k;
}

double collision_ar(const CellIntensity& cell, int g, int k, double rho, double w,
                    const AngularQuadrature& quad, const FrequencyGrid& freq,
                    const AbsorptionModel& absorption, const PlanckSpectrum& bbar, double c,
                    double h_planck, const ScatteringKernel& scattering) {
    const double v = freq.node[g];
    const double I = cell.at(g, k);
    const double ka = absorption.ka(v, w);
    const double bb = bbar(v);
    double ar = emission_source_s(v, ka, I, bb, c, h_planck) -
                absorption_sigma_a(v, ka, bb, c, h_planck) * I;
    if (scattering.enabled && rho > 0.0) {
        const Vec3 om = quad.omega[k];
        double gain = 0.0, loss = 0.0;
        for (std::size_t gp = 0; gp < freq.size(); ++gp) {
            const double vp = freq.node[gp];
            for (std::size_t kp = 0; kp < quad.size(); ++kp) {
                const double wq = freq.weight[gp] * quad.weight[kp];
                const double mu = dot(om, quad.omega[kp]);
                gain += wq * (v / vp) * scattering.in(vp, v, mu) * cell.at(gp, kp);
                loss += wq * scattering.out(v, vp, mu);
            }
        }
        ar += rho * (gain - loss * I);
    }
    return ar;
}

bool StructuralReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

bool finite(double v) { return std::isfinite(v); }

// Smooth nonnegative trial fields with a few random low modes; half of them
// touch zero somewhere to exercise the vacuum end of the coefficient.
Field trial_field(const Grid& g, std::mt19937& rng, bool touch_zero) {
    std::uniform_real_distribution<double> amp(0.2, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
    const double a1 = amp(rng), a2 = 0.5 * amp(rng), a3 = 0.25 * amp(rng);
    const double p1 = phase(rng), p2 = phase(rng), p3 = phase(rng);
    Field f(g.cells(), 0.0);
    for (int i = 0; i < g.nx; ++i) {
        const double x = g.center(i, 0, 0)[0];
        double v = a1 * std::sin(x + p1) + a2 * std::sin(2.0 * x + p2) +
                   a3 * std::sin(3.0 * x + p3);
        if (touch_zero) {
            v = std::max(0.0, v);
            v = v * v;  // C^1 touchdown at the zero set
        } else {
            v = 0.6 + 0.4 * v / (a1 + a2 + a3);
        }
        f[i] = v;
    }
    return f;
}

}  // namespace

StructuralReport validate_absorption_structure(const AbsorptionModel& model, double gamma,
                                               int sobolev_order,
                                               const ScatteringKernel& scattering,
                                               unsigned seed) {
    if (sobolev_order < 0 || sobolev_order > 3)
        throw std::invalid_argument("validate_absorption_structure: order must be in [0, 3]");
    StructuralReport report;
    const Grid g = make_grid_1d(128, 0.0, 2.0 * M_PI);
    const FrequencyGrid freq = build_frequency_grid(8, 3.0);
    const AngularQuadrature quad = build_angular_quadrature(2);
    std::mt19937 rng(seed);

    std::vector<Field> fields;
    for (int t = 0; t < 8; ++t) fields.push_back(trial_field(g, rng, t % 2 == 1));

    // norm bound of the coefficient and its per-density form against ||w||_s
    double coeff_const = 0.0, perdens_const = 0.0;
    for (const Field& wf : fields) {
        const double wn = sobolev_norm(g, wf, sobolev_order, Sample::periodic);
        double sup_ka = 0.0, sup_kbar = 0.0, l2v_kbar = 0.0;
        for (std::size_t gi = 0; gi < freq.size(); ++gi) {
            const double v = freq.node[gi];
            Field kaf(g.cells()), kbf(g.cells());
            for (std::size_t ci = 0; ci < g.cells(); ++ci) {
                kaf[ci] = model.ka(v, wf[ci]);
                kbf[ci] = model.kbar(v, wf[ci]);
            }
            const double na = sobolev_norm(g, kaf, sobolev_order, Sample::periodic);
            const double nb = sobolev_norm(g, kbf, sobolev_order, Sample::periodic);
            sup_ka = std::max(sup_ka, na);
            sup_kbar = std::max(sup_kbar, nb);
            l2v_kbar += freq.weight[gi] * nb * nb;
        }
        coeff_const = std::max(coeff_const, sup_ka / wn);
        perdens_const =
            std::max(perdens_const, (sup_kbar + std::sqrt(l2v_kbar)) / wn);
    }
    report.checks.push_back({"coefficient-norm-bound", coeff_const, finite(coeff_const)});
    report.checks.push_back({"per-density-norm-bound", perdens_const, finite(perdens_const)});

    // divided-difference Lipschitz constant of kbar in w, per frequency
    double lip_sup = 0.0, lip_l2 = 0.0;
    for (std::size_t gi = 0; gi < freq.size(); ++gi) {
        const double v = freq.node[gi];
        double kv = 0.0;
        for (std::size_t a = 0; a + 1 < fields.size(); ++a) {
            const Field& w1 = fields[a];
            const Field& w2 = fields[a + 1];
            for (std::size_t ci = 0; ci < g.cells(); ++ci) {
                const double dw = std::abs(w1[ci] - w2[ci]);
                if (dw < 1e-9) continue;
                kv = std::max(kv, std::abs(model.kbar(v, w1[ci]) - model.kbar(v, w2[ci])) / dw);
            }
        }
        lip_sup = std::max(lip_sup, kv);
        lip_l2 += freq.weight[gi] * kv * kv;
    }
    const double lip_const = lip_sup + std::sqrt(lip_l2);
    report.checks.push_back({"lipschitz-in-w", lip_const, finite(lip_const)});

    // vanishing with density: kbar along a geometric ladder w = 2^-n at every
    // frequency node must collapse relative to its value high on the ladder
    double worst_ratio = 0.0;
    for (std::size_t gi = 0; gi < freq.size(); ++gi) {
        const double v = freq.node[gi];
        const double top = std::abs(model.kbar(v, 0.25));
        const double bottom = std::abs(model.kbar(v, std::ldexp(1.0, -30)));
        if (top < 1e-12 && bottom < 1e-12) continue;  // identically-zero branch
        worst_ratio = std::max(worst_ratio, bottom / std::max(top, 1e-12));
    }
    report.checks.push_back(
        {"vanishes-with-density", worst_ratio, finite(worst_ratio) && worst_ratio < 1e-3});

    // exact vacuum zero of the full coefficient and non-negativity on samples
    double vac = 0.0, most_negative = 0.0;
    for (std::size_t gi = 0; gi < freq.size(); ++gi) {
        vac = std::max(vac, std::abs(model.ka(freq.node[gi], 0.0)));
        for (const Field& wf : fields)
            for (std::size_t ci = 0; ci < g.cells(); ci += 7)
                most_negative = std::min(most_negative,
                                         std::min(model.ka(freq.node[gi], wf[ci]),
                                                  model.kbar(freq.node[gi], wf[ci])));
    }
    report.checks.push_back({"vacuum-coefficient-zero", vac, vac == 0.0});
    report.checks.push_back({"nonnegative", most_negative, most_negative >= 0.0});

    // scattering kernel double integrals (finiteness of the four bound forms)
    if (scattering.enabled) {
        double in_l1 = 0.0, in_lhalf = 0.0, out_l1 = 0.0, out_l2 = 0.0, out_sup = 0.0;
        for (std::size_t gi = 0; gi < freq.size(); ++gi)
            for (std::size_t ki = 0; ki < quad.size(); ++ki) {
                const double v = freq.node[gi];
                double inner_in = 0.0, inner_out = 0.0;
                for (std::size_t gp = 0; gp < freq.size(); ++gp)
                    for (std::size_t kp = 0; kp < quad.size(); ++kp) {
                        const double vp = freq.node[gp];
                        const double wq = freq.weight[gp] * quad.weight[kp];
                        const double mu = dot(quad.omega[ki], quad.omega[kp]);
                        const double sin_v = scattering.in(vp, v, mu);
                        inner_in += wq * (v / vp) * (v / vp) * sin_v * sin_v;
                        inner_out += wq * scattering.out(v, vp, mu);
                    }
                const double wo = freq.weight[gi] * quad.weight[ki];
                in_l1 += wo * inner_in;
                in_lhalf += wo * std::sqrt(inner_in);
                out_l1 += wo * inner_out;
                out_l2 += wo * inner_out * inner_out;
                out_sup = std::max(out_sup, inner_out);
            }
        const double scat_const =
            std::max({in_l1, in_lhalf, out_l1, out_l2, out_sup});
        report.checks.push_back({"scattering-integrals", scat_const, finite(scat_const)});
    }
    (void)gamma;
    return report;
}

}  // namespace rhlab
