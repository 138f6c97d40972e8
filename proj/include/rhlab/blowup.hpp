// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rhlab/grid.hpp"
#include "rhlab/hydro.hpp"

namespace rhlab {

// Volume of the unit ball: 2 on a line, pi on a plane, 4 pi / 3 in space.
double unit_ball_volume(int dim);

// Time after which every photon inside the inner ball entered from outside
// the radius-R0 ball: 2 R0 / c.
double critical_time(double R0, double c);

// Mass, second moment, and the flux form of its time derivative over the
// outer-ball mask.
struct MomentDiagnostics {
    double t = 0.0;
    double m = 0.0;
    double M = 0.0;
    double dM_dt = 0.0;
};

MomentDiagnostics moment_diagnostics(const FluidState& state,
                                     const VacuumGeometry& geometry, double t);

// Upper bound on the existence time from the second-moment comparison: the
// positive root of n K t^2 + M0' t + (M0 - m0 R0^2) = 0 with
// K = m0^gamma R0^(n (1-gamma)) |B1|^(1-gamma). Requires m0 > 0 and
// M0 <= m0 R0^2.
double moment_blowup_bound(double m0, double R0, double gamma, double M0,
                           double M0prime, int dim = 3);

// The coefficient 2 n K of the second-moment differential inequality.
double moment_ode_coefficient(double m0, double R0, double gamma, int dim = 3);

// Lower bound on the pressure integral over the outer ball implied by mass
// concentration: integral of p >= m^gamma (R0^n |B1|)^(1-gamma).
struct HolderCheck {
    double pressure_integral = 0.0;
    double lower_bound = 0.0;
    bool pass = false;
};
HolderCheck pressure_holder_check(const FluidState& state,
                                  const VacuumGeometry& geometry, int dim);

// Scan of the initial velocity Jacobian over a vacuum mask. The most
// negative real eigenvalue fixes the gradient blow-up time -1/lambda of the
// pressureless dynamics; complex pairs are reported but never trigger.
struct SingularityScan {
    double lambda_min = 0.0;
    std::optional<double> t_burgers;
    bool complex_pair_seen = false;
};

SingularityScan hyperbolic_singularity_scan(const Vec3Field& u0, const Mask& vacuum_mask,
                                            const Grid& grid, Sample boundary);

// Root of f(t) = 1 - (lambda/alpha)(exp(-alpha t) - 1): the damped gradient
// blow-up time -(1/alpha) log(1 + alpha/lambda), defined only for
// lambda < -alpha.
std::optional<double> damped_blowup_time(double lambda, double alpha);

// Everything the analysis pins down before a run starts.
struct BlowupCertificate {
    double t_critical = 0.0;
    std::optional<double> t_moment;
    std::optional<double> lambda_min;
    std::optional<double> t_burgers;
    std::optional<double> t_damped;
    double monitor_threshold = 0.0;
};

enum class RunHealth { healthy, near_singular, blown_up };

std::string run_health_name(RunHealth h);

struct MonitorThresholds {
    double gradient_factor = 1e3;  // multiple of the initial gradient
    double gradient_floor = 1e3;   // absolute minimum of the trigger level
    double dt_collapse = 1e-6;     // fraction of the initial dt
};

// Run-time singularity detector. Feed one observation per accepted step; the
// health escalates monotonically and every candidate trigger is recorded.
class SingularityMonitor {
public:
    SingularityMonitor(double initial_gradient, double initial_dt,
                       MonitorThresholds thresholds = {});

    RunHealth observe(double t, double max_gradient, double accepted_dt,
                      double clipped_mass, int fixed_point_failures, bool finite);

    RunHealth health() const { return health_; }
    bool triggered() const { return health_ == RunHealth::blown_up; }
    double trigger_time() const { return trigger_time_; }
    double gradient_threshold() const { return gradient_threshold_; }
    const std::vector<std::string>& triggers() const { return triggers_; }

private:
    void record(const std::string& label);

    double gradient_threshold_ = 0.0;
    double dt_floor_ = 0.0;
    RunHealth health_ = RunHealth::healthy;
    double trigger_time_ = -1.0;
    std::vector<std::string> triggers_;
};

// Centered second differences of a uniformly sampled series; entry i holds
// (f[i+1] - 2 f[i] + f[i-1]) / step^2 for i in [1, n-2].
std::vector<double> second_differences(const std::vector<double>& series, double step);

}  // namespace rhlab
