// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rhlab/parallel.hpp"
#include "rhlab/symhyp.hpp"
#include "rhlab/transport.hpp"

namespace rhlab {

namespace {

double pick_dt(const ScenarioSetup& setup, double remaining) {
    const ScenarioConfig& cfg = setup.config;
    double dt = remaining;
    if (cfg.dt > 0.0) dt = std::min(dt, cfg.dt);
    if (cfg.evolve_hydro) {
        const double rate = hydro_wave_rate(setup.fluid);
        if (rate > 0.0) dt = std::min(dt, cfg.cfl / rate);
    }
    const double limit = transport_dt_limit(setup.grid, setup.quad, cfg.c, cfg.backend);
    if (std::isfinite(limit)) {
        const double per_call = cfg.evolve_hydro ? 2.0 : 1.0;
        dt = std::min(dt, 0.999 * per_call * limit);
    }
    return dt;
}

void momentum_source(const ScenarioSetup& setup, std::vector<Vec4>& src) {
    const FluidState& fl = setup.fluid;
    src.assign(setup.grid.cells(), Vec4{0.0, 0.0, 0.0, 0.0});
    parallel_for(setup.grid.cells(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> buf;
        for (std::size_t i = begin; i < end; ++i) {
            const CellIntensity cell = gather_cell(setup.radiation, i, buf);
            if (setup.scattering.enabled) {
                const GeneralCollision gc = equilibrium_collision(
                    setup.absorption, setup.bbar, fl.w[i], setup.scattering);
                src[i] = collision_source_f(cell, setup.quad, setup.freq, gc,
                                            setup.config.c, setup.config.gamma);
            } else {
                src[i] = radiation_source_g(cell, fl.w[i], setup.quad, setup.freq,
                                            setup.absorption, setup.bbar,
                                            setup.config.c, setup.config.gamma);
            }
        }
    });
}

struct RowScratch {
    const Mask* deviation_mask = nullptr;
};

void record_row(RunResult& out, const ScenarioSetup& setup, double t, double dt,
                const std::string& events, const RowScratch& scratch) {
    const FluidState& fl = setup.fluid;
    out.times.push_back(t);
    out.mass.push_back(total_mass(fl));
    const Vec3 momentum = total_momentum(fl);
    out.momentum_x.push_back(momentum[0]);
    out.momentum_y.push_back(momentum[1]);
    out.momentum_z.push_back(momentum[2]);
    double second = 0.0;
    if (setup.geometry) second = moment_diagnostics(fl, *setup.geometry, t).M;
    out.second_moment.push_back(second);
    double speed = 0.0;
    for (std::size_t i = 0; i < fl.u.size(); ++i) {
        const Vec3 u = fl.u.at(i);
        speed = std::max(speed, std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]));
    }
    out.max_speed.push_back(speed);
    out.max_gradient.push_back(max_velocity_gradient(fl));
    double rho_min = std::numeric_limits<double>::infinity();
    for (double r : fl.rho) rho_min = std::min(rho_min, r);
    out.min_density.push_back(rho_min);
    out.sup_deviation.push_back(max_equilibrium_deviation(
        setup.radiation, setup.freq, setup.bbar, scratch.deviation_mask));
    out.dts.push_back(dt);
    out.events.push_back(events);
}

std::string join_new_triggers(const std::vector<std::string>& triggers,
                              std::size_t& seen) {
    std::string joined;
    for (; seen < triggers.size(); ++seen) {
        if (!joined.empty()) joined += ';';
        joined += triggers[seen];
    }
    return joined;
}

}  // namespace

BlowupCertificate compute_certificate(const ScenarioSetup& setup) {
    const ScenarioConfig& cfg = setup.config;
    BlowupCertificate cert;

    if (cfg.moment_tuple) {
        const MomentTupleOverride& tup = *cfg.moment_tuple;
        cert.t_critical = critical_time(tup.r0, cfg.c);
        cert.t_moment = moment_blowup_bound(tup.m0, tup.r0, tup.gamma, tup.big_m0,
                                            tup.big_m0_prime, tup.dim);
    } else if (setup.geometry) {
        cert.t_critical = critical_time(setup.geometry->r0, cfg.c);
        try {
            const MomentDiagnostics diag =
                moment_diagnostics(setup.fluid, *setup.geometry, 0.0);
            cert.t_moment = moment_blowup_bound(diag.m, setup.geometry->r0, cfg.gamma,
                                                diag.M, diag.dM_dt, setup.grid.dim);
        } catch (const std::invalid_argument&) {
        }
    }

    bool any_vacuum = false;
    for (unsigned char v : setup.fluid.vacuum)
        if (v) any_vacuum = true;
    if (any_vacuum) {
        const SingularityScan scan = hyperbolic_singularity_scan(
            setup.fluid.u, setup.fluid.vacuum, setup.grid, setup.fluid.boundary);
        cert.lambda_min = scan.lambda_min;
        cert.t_burgers = scan.t_burgers;
        if (cfg.damping_alpha > 0.0)
            cert.t_damped = damped_blowup_time(scan.lambda_min, cfg.damping_alpha);
    }

    const double g0 = max_velocity_gradient(setup.fluid);
    cert.monitor_threshold =
        std::max(cfg.thresholds.gradient_factor * g0, cfg.thresholds.gradient_floor);
    return cert;
}

RunResult run_simulation(ScenarioSetup& setup) {
    const ScenarioConfig& cfg = setup.config;
    FluidState& fl = setup.fluid;
    RunResult out;

    TransportOptions opt;
    opt.backend = cfg.backend;
    opt.boundary = cfg.radiation_boundary;

    RowScratch scratch;
    if (setup.geometry) scratch.deviation_mask = &setup.geometry->b0_set;

    FlowMap map;
    if (setup.geometry) map = seed_boundary_tracers(*setup.geometry, setup.grid, 16);

    const double g0 = max_velocity_gradient(fl);
    const double dt0 = pick_dt(setup, cfg.horizon);
    if (!(dt0 > 0.0))
        throw std::invalid_argument("run_simulation: initial step size is not positive");
    SingularityMonitor monitor(g0, dt0, cfg.thresholds);
    out.gradient_threshold = monitor.gradient_threshold();

    std::size_t seen_triggers = 0;
    record_row(out, setup, 0.0, 0.0, "", scratch);

    std::vector<Vec4> source;
    const bool use_source = cfg.evolve_hydro && setup.absorption.name != "zero";
    const double tiny = 1e-12 * cfg.horizon;

    double t = 0.0;
    while (t < cfg.horizon - tiny) {
        const double dt = pick_dt(setup, cfg.horizon - t);
        if (!(dt > 0.0)) break;

        HydroStatus hydro_status;
        if (cfg.evolve_hydro) {
            TransportStatus ts =
                transport_step(setup.radiation, setup.grid, fl.w, setup.quad, setup.freq,
                               setup.absorption, setup.bbar, setup.scattering, cfg.c,
                               cfg.gamma, 0.5 * dt, opt);
            if (!ts.accepted)
                throw std::runtime_error("run_simulation: transport rejected a bounded step");
            if (use_source) momentum_source(setup, source);
            hydro_status = hydro_step(fl, use_source ? &source : nullptr, dt, cfg.cfl,
                                      cfg.damping_alpha);
            if (!hydro_status.accepted)
                throw std::runtime_error("run_simulation: hydro rejected a bounded step");
            ts = transport_step(setup.radiation, setup.grid, fl.w, setup.quad, setup.freq,
                                setup.absorption, setup.bbar, setup.scattering, cfg.c,
                                cfg.gamma, 0.5 * dt, opt);
            if (!ts.accepted)
                throw std::runtime_error("run_simulation: transport rejected a bounded step");
        } else {
            const TransportStatus ts =
                transport_step(setup.radiation, setup.grid, fl.w, setup.quad, setup.freq,
                               setup.absorption, setup.bbar, setup.scattering, cfg.c,
                               cfg.gamma, dt, opt);
            if (!ts.accepted)
                throw std::runtime_error("run_simulation: transport rejected a bounded step");
        }

        if (setup.geometry) advance_flow_map(map, setup.grid, fl.u, dt, fl.boundary);

        t += dt;
        ++out.steps;
        const RunHealth health =
            monitor.observe(t, max_velocity_gradient(fl), dt, hydro_status.clipped_mass,
                            hydro_status.fixed_point_failures, hydro_status.finite);

        const bool last = health == RunHealth::blown_up || t >= cfg.horizon - tiny;
        if (last || out.steps % cfg.cadence == 0) {
            const std::string events = join_new_triggers(monitor.triggers(), seen_triggers);
            record_row(out, setup, t, dt, events, scratch);
        }
        if (health == RunHealth::blown_up) break;
    }

    out.health = monitor.health();
    out.triggers = monitor.triggers();
    out.trigger_time = monitor.trigger_time();
    out.final_time = t;
    out.exit_code = monitor.triggered() ? 2 : 0;
    if (setup.geometry) {
        out.drift = vacuum_stationarity_check(*setup.geometry, map, setup.grid);
        out.tracers = map;
    }
    return out;
}

}  // namespace rhlab
