// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rhlab/linalg.hpp"

namespace rhlab {

double unit_ball_volume(int dim) {
    switch (dim) {
        case 1: return 2.0;
        case 2: return M_PI;
        case 3: return 4.0 * M_PI / 3.0;
        default: throw std::invalid_argument("unit_ball_volume: dim must be 1, 2, or 3");
    }
}

double critical_time(double R0, double c) {
    if (!(R0 > 0.0 && c > 0.0))
        throw std::invalid_argument("critical_time: R0 and c must be positive");
    return 2.0 * R0 / c;
}

MomentDiagnostics moment_diagnostics(const FluidState& state,
                                     const VacuumGeometry& geometry, double t) {
    const Grid& g = state.grid;
    if (geometry.b0_set.size() != g.cells())
        throw std::invalid_argument("moment_diagnostics: geometry mask mismatch");
    MomentDiagnostics d;
    d.t = t;
    const double vol = g.cell_volume();
    std::size_t idx = 0;
    for (int kz = 0; kz < g.nz; ++kz)
        for (int jy = 0; jy < g.ny; ++jy)
            for (int ix = 0; ix < g.nx; ++ix, ++idx) {
                if (!geometry.b0_set[idx]) continue;
                const Vec3 c = g.center(ix, jy, kz);
                const Vec3 r{c[0] - geometry.center[0], c[1] - geometry.center[1],
                             c[2] - geometry.center[2]};
                const double rho = state.rho[idx];
                d.m += rho * vol;
                d.M += rho * dot(r, r) * vol;
                d.dM_dt += 2.0 * rho * vol *
                           (r[0] * state.u.x[idx] + r[1] * state.u.y[idx] +
                            r[2] * state.u.z[idx]);
            }
    return d;
}

double moment_ode_coefficient(double m0, double R0, double gamma, int dim) {
    if (m0 <= 0.0) throw std::invalid_argument("moment_ode_coefficient: m0 must be positive");
    if (!(R0 > 0.0)) throw std::invalid_argument("moment_ode_coefficient: R0 must be positive");
    if (!(gamma > 1.0 && gamma <= 3.0))
        throw std::invalid_argument("moment_ode_coefficient: gamma must lie in (1, 3]");
    const double K = std::pow(m0, gamma) * std::pow(R0, dim * (1.0 - gamma)) *
                     std::pow(unit_ball_volume(dim), 1.0 - gamma);
    return 2.0 * dim * K;
}

double moment_blowup_bound(double m0, double R0, double gamma, double M0,
                           double M0prime, int dim) {
    const double two_n_k = moment_ode_coefficient(m0, R0, gamma, dim);
    const double saturation = m0 * R0 * R0;
    if (M0 > saturation * (1.0 + 1e-12))
        throw std::invalid_argument(
            "moment_blowup_bound: initial second moment exceeds m0 R0^2");
    const double gap = std::max(0.0, saturation - M0);
    const double disc = M0prime * M0prime + 2.0 * two_n_k * gap;
    return (-M0prime + std::sqrt(disc)) / two_n_k;
}

HolderCheck pressure_holder_check(const FluidState& state,
                                  const VacuumGeometry& geometry, int dim) {
    const Grid& g = state.grid;
    if (geometry.b0_set.size() != g.cells())
        throw std::invalid_argument("pressure_holder_check: geometry mask mismatch");
    HolderCheck check;
    double mass = 0.0;
    const double vol = g.cell_volume();
    for (std::size_t i = 0; i < g.cells(); ++i) {
        if (!geometry.b0_set[i]) continue;
        mass += state.rho[i] * vol;
        check.pressure_integral += state.pressure[i] * vol;
    }
    const double ball_volume =
        unit_ball_volume(dim) * std::pow(geometry.r0, static_cast<double>(dim));
    check.lower_bound =
        std::pow(mass, state.gamma) * std::pow(ball_volume, 1.0 - state.gamma);
    check.pass = check.pressure_integral >= check.lower_bound * (1.0 - 1e-6);
    return check;
}

SingularityScan hyperbolic_singularity_scan(const Vec3Field& u0, const Mask& vacuum_mask,
                                            const Grid& grid, Sample boundary) {
    if (vacuum_mask.size() != grid.cells())
        throw std::invalid_argument("hyperbolic_singularity_scan: mask size mismatch");
    bool any = false;
    for (auto m : vacuum_mask)
        if (m) {
            any = true;
            break;
        }
    if (!any)
        throw std::invalid_argument("hyperbolic_singularity_scan: empty vacuum mask");

    const Field* comps[3] = {&u0.x, &u0.y, &u0.z};
    Field jac[3][3];
    for (int comp = 0; comp < 3; ++comp)
        for (int axis = 0; axis < 3; ++axis)
            if (grid.n(axis) > 1)
                jac[comp][axis] = derivative(grid, *comps[comp], axis, boundary);

    SingularityScan scan;
    double lambda_min = 0.0;
    bool seeded = false;
    for (std::size_t i = 0; i < grid.cells(); ++i) {
        if (!vacuum_mask[i]) continue;
        Mat3 J{};
        for (int comp = 0; comp < 3; ++comp)
            for (int axis = 0; axis < 3; ++axis)
                J[comp * 3 + axis] =
                    jac[comp][axis].empty() ? 0.0 : jac[comp][axis][i];
        const Spectrum3 spec = eigenvalues_3(J);
        if (spec.complex_pair) scan.complex_pair_seen = true;
        for (double lam : spec.real_roots) {
            if (!seeded || lam < lambda_min) {
                lambda_min = lam;
                seeded = true;
            }
        }
    }
    scan.lambda_min = seeded ? lambda_min : 0.0;
    if (scan.lambda_min < 0.0) scan.t_burgers = -1.0 / scan.lambda_min;
    return scan;
}

std::optional<double> damped_blowup_time(double lambda, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("damped_blowup_time: alpha must be positive");
    if (!(lambda < -alpha)) return std::nullopt;
    return -std::log1p(alpha / lambda) / alpha;
}

std::string run_health_name(RunHealth h) {
    switch (h) {
        case RunHealth::healthy: return "healthy";
        case RunHealth::near_singular: return "near-singular";
        default: return "blown-up";
    }
}

SingularityMonitor::SingularityMonitor(double initial_gradient, double initial_dt,
                                       MonitorThresholds thresholds) {
    gradient_threshold_ =
        std::max(thresholds.gradient_factor * initial_gradient, thresholds.gradient_floor);
    dt_floor_ = thresholds.dt_collapse * initial_dt;
}

void SingularityMonitor::record(const std::string& label) {
    for (const std::string& seen : triggers_)
        if (seen == label) return;
    triggers_.push_back(label);
}

RunHealth SingularityMonitor::observe(double t, double max_gradient, double accepted_dt,
                                      double clipped_mass, int fixed_point_failures,
                                      bool finite) {
    if (health_ == RunHealth::blown_up) return health_;
    bool blown = false;
    if (!finite) {
        record("nonfinite");
        blown = true;
    }
    if (max_gradient >= gradient_threshold_) {
        record("gradient");
        blown = true;
    }
    if (accepted_dt < dt_floor_) {
        record("dt-collapse");
        blown = true;
    }
    if (blown) {
        health_ = RunHealth::blown_up;
        trigger_time_ = t;
        return health_;
    }
    if (clipped_mass > 0.0) record("negative-density-clip");
    if (fixed_point_failures > 0) record("foot-iteration-stall");
    if (max_gradient >= 0.1 * gradient_threshold_ || fixed_point_failures > 0)
        health_ = RunHealth::near_singular;
    return health_;
}

std::vector<double> second_differences(const std::vector<double>& series, double step) {
    if (step <= 0.0) throw std::invalid_argument("second_differences: step must be positive");
    std::vector<double> out;
    if (series.size() < 3) return out;
    out.reserve(series.size() - 2);
    for (std::size_t i = 1; i + 1 < series.size(); ++i)
        out.push_back((series[i + 1] - 2.0 * series[i] + series[i - 1]) / (step * step));
    return out;
}

}  // namespace rhlab
