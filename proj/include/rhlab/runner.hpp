// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rhlab/blowup.hpp"
#include "rhlab/hydro.hpp"
#include "rhlab/scenarios.hpp"

namespace rhlab {

// Column-oriented record of one simulation, one entry per recorded row.
// Rows are written at step 0, every `cadence` accepted steps, and at the
// final step. `events` holds the monitor triggers raised since the previous
// row, joined with ';' (empty most rows).
struct RunResult {
    std::vector<double> times;
    std::vector<double> mass;
    std::vector<double> momentum_x;
    std::vector<double> momentum_y;
    std::vector<double> momentum_z;
    std::vector<double> second_moment;
    std::vector<double> max_speed;
    std::vector<double> max_gradient;
    std::vector<double> min_density;
    std::vector<double> sup_deviation;
    std::vector<double> dts;
    std::vector<std::string> events;

    RunHealth health = RunHealth::healthy;
    std::vector<std::string> triggers;
    double trigger_time = -1.0;
    double gradient_threshold = 0.0;
    double final_time = 0.0;
    long steps = 0;
    int exit_code = 0;  // 0: horizon reached, 2: singularity trigger

    std::optional<DriftReport> drift;
    FlowMap tracers;

    std::size_t rows() const { return times.size(); }
};

// Computes everything the initial data pins down: the photon clearing time,
// the second-moment bound (from the declared tuple when present, otherwise
// from the measured geometry diagnostics), the velocity-Jacobian scan over
// the vacuum region, the damped variant when damping is active, and the
// gradient level the run-time monitor will trigger at.
BlowupCertificate compute_certificate(const ScenarioSetup& setup);

// Integrates the coupled system to the configured horizon or until the
// singularity monitor fires. The fluid and radiation fields in `setup` are
// advanced in place. Splitting per step: a transport half step, the
// radiation momentum source, one hydro step, a second transport half step.
// Scenarios with evolve_hydro = false freeze the fluid and take full
// transport steps. The step size is the least of the remaining time, the
// configured fixed dt (when positive), the hydro CFL bound, and the
// transport stability bound.
RunResult run_simulation(ScenarioSetup& setup);

}  // namespace rhlab
