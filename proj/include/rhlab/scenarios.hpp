// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rhlab/blowup.hpp"
#include "rhlab/coefficients.hpp"
#include "rhlab/grid.hpp"
#include "rhlab/hydro.hpp"
#include "rhlab/io.hpp"
#include "rhlab/quadrature.hpp"
#include "rhlab/transport.hpp"

namespace rhlab {

// Explicit inputs for the moment certificate, overriding the values that
// would otherwise be measured from the discretized initial data.
struct MomentTupleOverride {
    double m0 = 1.0;
    double r0 = 1.0;
    double gamma = 2.0;
    double big_m0 = 0.0;
    double big_m0_prime = 0.0;
    int dim = 3;
};

// Complete experiment definition: grid, physical constants, model choices,
// initial-data generators, optional vacuum geometry, expected certificate
// values, and run controls. Plain data; build_scenario turns it into fields.
struct ScenarioConfig {
    std::string name = "custom";
    std::string description;
    int dimension = 1;
    std::array<int, 3> cells{256, 1, 1};
    double x0 = -2.0;
    double x1 = 2.0;
    Sample boundary = Sample::clamp;
    unsigned seed = 20260819u;
    bool evolve_hydro = true;

    double gamma = 2.0;
    double c = 1.0;
    double planck_b = 1.0;
    double planck_v_ref = 1.0;
    double h_planck = 1.0;
    double damping_alpha = 0.0;

    int ordinate_order = 4;
    int groups = 4;
    double v_max = 3.0;
    TransportBackend backend = TransportBackend::characteristic;
    RadiationBoundary radiation_boundary = RadiationBoundary::equilibrium_inflow;

    // line | zero | constant
    std::string absorption_kind = "line";
    double line_d1 = 1.0;
    double line_d2 = 1.0;
    double line_gas_constant = 1.0;
    double line_v0 = 1.0;
    double constant_kbar = 1.0;

    // none | isotropic
    std::string scattering_kind = "none";
    double scattering_sigma0 = 0.5;
    double scattering_v_center = 1.5;
    double scattering_width = 1.0;

    // zero | plateau | w-bump | w-multiscale
    std::string density_profile = "zero";
    double density_amplitude = 0.0;
    double density_core = 0.0;
    double density_support = 0.5;
    double w_base = 0.0;
    int density_octaves = 7;
    double density_k0 = 1.0;

    // zero | linear | constant | multiscale
    std::string velocity_profile = "zero";
    double velocity_amplitude = 0.0;
    int velocity_octaves = 7;
    double velocity_k0 = 1.0;

    // equilibrium | equilibrium-bump | equilibrium-multiscale
    std::string intensity_profile = "equilibrium";
    double intensity_amplitude = 0.0;
    double intensity_support = 0.2;
    int intensity_octaves = 7;
    double intensity_k0 = 1.0;

    bool geometry_enabled = false;
    Vec3 geometry_center{0.0, 0.0, 0.0};
    double a0_radius = 0.5;
    double b0_radius = 0.9;
    double r0 = 1.0;

    std::optional<double> expected_t_critical;
    std::optional<double> expected_t_moment;
    std::optional<double> expected_t_burgers;
    std::optional<double> expected_t_damped;
    std::optional<MomentTupleOverride> moment_tuple;

    int picard_k_max = 9;
    int picard_steps = 128;
    double picard_dt = 0.002;
    double picard_epsilon0 = 0.64;

    MonitorThresholds thresholds{};

    double horizon = 1.0;
    double dt = 0.0;  // 0 selects the CFL-derived step
    double cfl = 0.4;
    int cadence = 1;
};

// Constructed experiment state, ready for the splitting loop.
struct ScenarioSetup {
    ScenarioConfig config;
    Grid grid;
    FluidState fluid;
    AngularQuadrature quad;
    FrequencyGrid freq;
    PlanckSpectrum bbar;
    AbsorptionModel absorption;
    ScatteringKernel scattering;
    RadiationField radiation;
    std::optional<VacuumGeometry> geometry;
};

// The shipped experiments, one per certified blow-up or relaxation claim
// plus the iteration and scattering exercises.
std::vector<ScenarioConfig> builtin_scenarios();

// Looks a builtin up by name; throws invalid_argument for unknown names.
ScenarioConfig find_builtin(const std::string& name);

ScenarioConfig scenario_from_config(const ConfigMap& map);
ConfigSections config_sections_from_scenario(const ScenarioConfig& cfg);
void export_scenario(const ScenarioConfig& cfg, const std::string& path);

// Generates grid and fields; throws invalid_argument on malformed configs
// (bad dimension, empty grid, gamma outside (1,3], unknown profile names).
ScenarioSetup build_scenario(const ScenarioConfig& cfg);

struct ValidationCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    bool pass = false;
    double m0 = 0.0;
    double sobolev_norm_wu = 0.0;
    double far_field_deviation = 0.0;
    std::vector<std::size_t> annulus_violations;
    std::vector<ValidationCheck> checks;
};

// Checks the declared preconditions against the generated fields: finite
// nonnegative data, positive supported mass and an empty annulus when a
// vacuum geometry is declared, equilibrium intensity outside the outer ball,
// and agreement of every expected certificate value with the one recomputed
// from the fields.
ValidationReport validate_scenario(const ScenarioSetup& setup);

}  // namespace rhlab
