// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include "rhlab/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rhlab/fieldops.hpp"
#include "rhlab/symhyp.hpp"

namespace rhlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Distance from `center` over the active axes only, so one-dimensional
// grids measure along x regardless of the padding axes.
double radial_distance(const Grid& g, const Vec3& p, const Vec3& center) {
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
        if (g.n(a) == 1) continue;
        const double d = p[a] - center[a];
        d2 += d * d;
    }
    return std::sqrt(d2);
}

// Flat top out to `core`, then the compact bump (1 - q^2)^4 falling to zero
// at `support`.
double plateau_bump(double r, double core, double support, double amplitude) {
    if (r <= core) return amplitude;
    if (r >= support) return 0.0;
    const double q = (r - core) / (support - core);
    const double s = 1.0 - q * q;
    const double s2 = s * s;
    return amplitude * s2 * s2;
}

std::string sample_name(Sample s) {
    switch (s) {
        case Sample::periodic: return "periodic";
        case Sample::clamp: return "clamp";
        case Sample::extrapolate: return "extrapolate";
    }
    return "clamp";
}

Sample sample_from_name(const std::string& name) {
    if (name == "periodic") return Sample::periodic;
    if (name == "clamp") return Sample::clamp;
    if (name == "extrapolate") return Sample::extrapolate;
    throw std::invalid_argument("unknown boundary mode: " + name);
}

std::string backend_name(TransportBackend b) {
    return b == TransportBackend::sweep ? "sweep" : "characteristic";
}

TransportBackend backend_from_name(const std::string& name) {
    if (name == "characteristic") return TransportBackend::characteristic;
    if (name == "sweep") return TransportBackend::sweep;
    throw std::invalid_argument("unknown transport backend: " + name);
}

std::string radiation_boundary_name(RadiationBoundary b) {
    return b == RadiationBoundary::periodic ? "periodic" : "equilibrium";
}

RadiationBoundary radiation_boundary_from_name(const std::string& name) {
    if (name == "equilibrium") return RadiationBoundary::equilibrium_inflow;
    if (name == "periodic") return RadiationBoundary::periodic;
    throw std::invalid_argument("unknown radiation boundary: " + name);
}

}  // namespace

std::vector<ScenarioConfig> builtin_scenarios() {
    std::vector<ScenarioConfig> list;

    {
        ScenarioConfig s;
        s.name = "lemma31-relaxation";
        s.description =
            "Radiation relaxes to the reference spectrum across a ball "
            "enclosing an absorbing core; the gas background is held fixed.";
        s.dimension = 1;
        s.cells = {512, 1, 1};
        s.x0 = -2.0;
        s.x1 = 2.0;
        s.boundary = Sample::clamp;
        s.evolve_hydro = false;
        s.gamma = 2.0;
        s.c = 1.0;
        s.ordinate_order = 4;
        s.groups = 4;
        s.v_max = 3.0;
        s.backend = TransportBackend::characteristic;
        s.radiation_boundary = RadiationBoundary::equilibrium_inflow;
        s.absorption_kind = "line";
        s.line_d1 = 24.0;
        s.line_d2 = 0.1;
        s.line_gas_constant = 1.0;
        s.line_v0 = 1.0;
        s.density_profile = "plateau";
        s.density_amplitude = 1.0;
        s.density_core = 0.35;
        s.density_support = 0.5;
        s.intensity_profile = "equilibrium-bump";
        s.intensity_amplitude = 0.5;
        s.intensity_support = 0.2;
        s.geometry_enabled = true;
        s.a0_radius = 0.5;
        s.b0_radius = 1.0;
        s.r0 = 1.0;
        s.expected_t_critical = 2.0;
        s.horizon = 2.0;
        s.dt = 2.0 / 64.0;
        list.push_back(s);
    }

    {
        ScenarioConfig s;
        s.name = "lemma31-annulus";
        s.description =
            "Gas bump surrounded by a vacuum shell inside the outer ball; "
            "boundary tracers certify that the shell stays put over two "
            "light-crossing times.";
        s.dimension = 1;
        s.cells = {256, 1, 1};
        s.x0 = -2.0;
        s.x1 = 2.0;
        s.boundary = Sample::clamp;
        s.gamma = 2.0;
        s.c = 4.0;
        s.ordinate_order = 4;
        s.groups = 4;
        s.v_max = 3.0;
        s.absorption_kind = "line";
        s.density_profile = "w-bump";
        s.density_amplitude = 0.05;
        s.density_core = 0.0;
        s.density_support = 0.3;
        s.intensity_profile = "equilibrium";
        s.geometry_enabled = true;
        s.a0_radius = 0.5;
        s.b0_radius = 1.0;
        s.r0 = 1.0;
        s.expected_t_critical = 0.5;
        s.horizon = 1.0;
        list.push_back(s);
    }

    {
        ScenarioConfig s;
        s.name = "theorem34-moment";
        s.description =
            "Coupled expansion run with vacuum-annulus data; the second moment "
            "of the density obeys the certified convexity bound after the "
            "light-crossing time.";
        s.dimension = 1;
        s.cells = {512, 1, 1};
        s.x0 = -4.0;
        s.x1 = 4.0;
        s.boundary = Sample::clamp;
        s.gamma = 2.0;
        s.c = 4.0;
        s.ordinate_order = 2;
        s.groups = 2;
        s.v_max = 3.0;
        s.absorption_kind = "line";
        s.density_profile = "plateau";
        s.density_amplitude = 0.06;
        s.density_core = 0.0;
        s.density_support = 0.3;
        s.intensity_profile = "equilibrium";
        s.geometry_enabled = true;
        s.a0_radius = 0.4;
        s.b0_radius = 1.0;
        s.r0 = 1.0;
        s.moment_tuple = MomentTupleOverride{1.0, 1.0, 2.0, 0.0, 0.0, 3};
        s.expected_t_critical = 0.5;
        s.expected_t_moment = 1.1816359006036772;
        s.horizon = 0.75;
        s.dt = 0.003;
        list.push_back(s);
    }

    {
        ScenarioConfig s;
        s.name = "theorem36-burgers-1d";
        s.description =
            "Pressureless vacuum run with a compressive linear velocity; the "
            "velocity gradient follows the exact 1/(1-t) growth and trips the "
            "monitor near t = 1.";
        s.dimension = 1;
        s.cells = {400, 1, 1};
        s.x0 = -2.0;
        s.x1 = 2.0;
        s.boundary = Sample::extrapolate;
        s.gamma = 2.0;
        s.c = 1.0;
        s.ordinate_order = 2;
        s.groups = 2;
        s.v_max = 3.0;
        s.absorption_kind = "zero";
        s.density_profile = "zero";
        s.velocity_profile = "linear";
        s.velocity_amplitude = -1.0;
        s.intensity_profile = "equilibrium";
        s.expected_t_burgers = 1.0;
        s.horizon = 2.0;
        list.push_back(s);
    }

    {
        ScenarioConfig s;
        s.name = "corollary38-damped";
        s.description =
            "Damped variant of the vacuum gradient run: friction delays the "
            "gradient blow-up to the damped certificate time ln 2.";
        s.dimension = 1;
        s.cells = {400, 1, 1};
        s.x0 = -2.0;
        s.x1 = 2.0;
        s.boundary = Sample::extrapolate;
        s.gamma = 2.0;
        s.c = 1.0;
        s.damping_alpha = 1.0;
        s.ordinate_order = 2;
        s.groups = 2;
        s.v_max = 3.0;
        s.absorption_kind = "zero";
        s.density_profile = "zero";
        s.velocity_profile = "linear";
        s.velocity_amplitude = -2.0;
        s.intensity_profile = "equilibrium";
        s.expected_t_burgers = 0.5;
        s.expected_t_damped = 0.6931471805599453;
        s.horizon = 2.0;
        list.push_back(s);
    }

    {
        ScenarioConfig s;
        s.name = "picard-contraction";
        s.description =
            "Iteration experiment on multiscale periodic data: successive "
            "linearized solves with dyadically sharpened mollification, "
            "tracking the telescoping difference ratios.";
        s.dimension = 1;
        s.cells = {1024, 1, 1};
        s.x0 = 0.0;
        s.x1 = kTwoPi;
        s.boundary = Sample::periodic;
        s.gamma = 2.0;
        s.c = 1.0;
        s.ordinate_order = 2;
        s.groups = 2;
        s.v_max = 3.0;
        s.backend = TransportBackend::characteristic;
        s.radiation_boundary = RadiationBoundary::periodic;
        s.absorption_kind = "line";
        s.density_profile = "w-multiscale";
        s.w_base = 0.5;
        s.density_amplitude = 0.05;
        s.density_octaves = 7;
        s.density_k0 = 1.0;
        s.velocity_profile = "multiscale";
        s.velocity_amplitude = 0.02;
        s.velocity_octaves = 7;
        s.velocity_k0 = 1.0;
        s.intensity_profile = "equilibrium-multiscale";
        s.intensity_amplitude = 0.05;
        s.intensity_octaves = 7;
        s.intensity_k0 = 1.0;
        s.picard_k_max = 9;
        s.picard_steps = 128;
        s.picard_dt = 0.002;
        s.picard_epsilon0 = 0.64;
        s.horizon = 0.256;
        list.push_back(s);
    }

    {
        ScenarioConfig s;
        s.name = "section4-scattering";
        s.description =
            "Frequency-redistribution smoke test: isotropic scattering kernel "
            "on a uniform background, advanced with the sweep backend on a "
            "periodic box.";
        s.dimension = 1;
        s.cells = {128, 1, 1};
        s.x0 = 0.0;
        s.x1 = kTwoPi;
        s.boundary = Sample::periodic;
        s.gamma = 2.0;
        s.c = 1.0;
        s.ordinate_order = 2;
        s.groups = 4;
        s.v_max = 3.0;
        s.backend = TransportBackend::sweep;
        s.radiation_boundary = RadiationBoundary::periodic;
        s.absorption_kind = "line";
        s.scattering_kind = "isotropic";
        s.scattering_sigma0 = 0.5;
        s.scattering_v_center = 1.5;
        s.scattering_width = 1.0;
        s.density_profile = "w-multiscale";
        s.w_base = 0.5;
        s.density_amplitude = 0.0;
        s.density_octaves = 1;
        s.velocity_profile = "zero";
        s.intensity_profile = "equilibrium-multiscale";
        s.intensity_amplitude = 0.2;
        s.intensity_octaves = 1;
        s.intensity_k0 = 1.0;
        s.horizon = 0.5;
        list.push_back(s);
    }

    return list;
}

ScenarioConfig find_builtin(const std::string& name) {
    for (auto& s : builtin_scenarios())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown scenario: " + name);
}

ScenarioConfig scenario_from_config(const ConfigMap& m) {
    ScenarioConfig s;
    s.name = config_string(m, "scenario.name", s.name);
    s.description = config_string(m, "scenario.description", s.description);
    s.dimension = config_int(m, "scenario.dimension", s.dimension);
    s.seed = static_cast<unsigned>(config_int(m, "scenario.seed",
                                              static_cast<int>(s.seed)));
    s.evolve_hydro = config_bool(m, "scenario.evolve_hydro", s.evolve_hydro);

    s.cells[0] = config_int(m, "grid.cells_x", s.cells[0]);
    s.cells[1] = config_int(m, "grid.cells_y", s.cells[1]);
    s.cells[2] = config_int(m, "grid.cells_z", s.cells[2]);
    s.x0 = config_double(m, "grid.x0", s.x0);
    s.x1 = config_double(m, "grid.x1", s.x1);
    s.boundary = sample_from_name(config_string(m, "grid.boundary", sample_name(s.boundary)));

    s.gamma = config_double(m, "constants.gamma", s.gamma);
    s.c = config_double(m, "constants.c", s.c);
    s.planck_b = config_double(m, "constants.planck_b", s.planck_b);
    s.planck_v_ref = config_double(m, "constants.planck_v_ref", s.planck_v_ref);
    s.h_planck = config_double(m, "constants.h_planck", s.h_planck);
    s.damping_alpha = config_double(m, "constants.damping_alpha", s.damping_alpha);

    s.ordinate_order = config_int(m, "radiation.order", s.ordinate_order);
    s.groups = config_int(m, "radiation.groups", s.groups);
    s.v_max = config_double(m, "radiation.v_max", s.v_max);
    s.backend = backend_from_name(config_string(m, "radiation.backend", backend_name(s.backend)));
    s.radiation_boundary = radiation_boundary_from_name(
        config_string(m, "radiation.boundary", radiation_boundary_name(s.radiation_boundary)));

    s.absorption_kind = config_string(m, "absorption.kind", s.absorption_kind);
    s.line_d1 = config_double(m, "absorption.d1", s.line_d1);
    s.line_d2 = config_double(m, "absorption.d2", s.line_d2);
    s.line_gas_constant = config_double(m, "absorption.gas_constant", s.line_gas_constant);
    s.line_v0 = config_double(m, "absorption.v0", s.line_v0);
    s.constant_kbar = config_double(m, "absorption.value", s.constant_kbar);

    s.scattering_kind = config_string(m, "scattering.kind", s.scattering_kind);
    s.scattering_sigma0 = config_double(m, "scattering.sigma0", s.scattering_sigma0);
    s.scattering_v_center = config_double(m, "scattering.v_center", s.scattering_v_center);
    s.scattering_width = config_double(m, "scattering.width", s.scattering_width);

    s.density_profile = config_string(m, "density.profile", s.density_profile);
    s.density_amplitude = config_double(m, "density.amplitude", s.density_amplitude);
    s.density_core = config_double(m, "density.core", s.density_core);
    s.density_support = config_double(m, "density.support", s.density_support);
    s.w_base = config_double(m, "density.w_base", s.w_base);
    s.density_octaves = config_int(m, "density.octaves", s.density_octaves);
    s.density_k0 = config_double(m, "density.k0", s.density_k0);

    s.velocity_profile = config_string(m, "velocity.profile", s.velocity_profile);
    s.velocity_amplitude = config_double(m, "velocity.amplitude", s.velocity_amplitude);
    s.velocity_octaves = config_int(m, "velocity.octaves", s.velocity_octaves);
    s.velocity_k0 = config_double(m, "velocity.k0", s.velocity_k0);

    s.intensity_profile = config_string(m, "intensity.profile", s.intensity_profile);
    s.intensity_amplitude = config_double(m, "intensity.amplitude", s.intensity_amplitude);
    s.intensity_support = config_double(m, "intensity.support", s.intensity_support);
    s.intensity_octaves = config_int(m, "intensity.octaves", s.intensity_octaves);
    s.intensity_k0 = config_double(m, "intensity.k0", s.intensity_k0);

    s.geometry_enabled = config_bool(m, "geometry.enabled", s.geometry_enabled);
    s.geometry_center[0] = config_double(m, "geometry.center_x", s.geometry_center[0]);
    s.geometry_center[1] = config_double(m, "geometry.center_y", s.geometry_center[1]);
    s.geometry_center[2] = config_double(m, "geometry.center_z", s.geometry_center[2]);
    s.a0_radius = config_double(m, "geometry.a0_radius", s.a0_radius);
    s.b0_radius = config_double(m, "geometry.b0_radius", s.b0_radius);
    s.r0 = config_double(m, "geometry.r0", s.r0);

    if (m.count("certificate.t_critical"))
        s.expected_t_critical = config_double(m, "certificate.t_critical", 0.0);
    if (m.count("certificate.t_moment"))
        s.expected_t_moment = config_double(m, "certificate.t_moment", 0.0);
    if (m.count("certificate.t_burgers"))
        s.expected_t_burgers = config_double(m, "certificate.t_burgers", 0.0);
    if (m.count("certificate.t_damped"))
        s.expected_t_damped = config_double(m, "certificate.t_damped", 0.0);
    if (config_bool(m, "certificate.use_moment_tuple", false)) {
        MomentTupleOverride t;
        t.m0 = config_double(m, "certificate.moment_m0", t.m0);
        t.r0 = config_double(m, "certificate.moment_r0", t.r0);
        t.gamma = config_double(m, "certificate.moment_gamma", t.gamma);
        t.big_m0 = config_double(m, "certificate.moment_M0", t.big_m0);
        t.big_m0_prime = config_double(m, "certificate.moment_M0_prime", t.big_m0_prime);
        t.dim = config_int(m, "certificate.moment_dim", t.dim);
        s.moment_tuple = t;
    }

    s.picard_k_max = config_int(m, "picard.k_max", s.picard_k_max);
    s.picard_steps = config_int(m, "picard.steps", s.picard_steps);
    s.picard_dt = config_double(m, "picard.dt", s.picard_dt);
    s.picard_epsilon0 = config_double(m, "picard.epsilon0", s.picard_epsilon0);

    s.thresholds.gradient_factor =
        config_double(m, "monitor.gradient_factor", s.thresholds.gradient_factor);
    s.thresholds.gradient_floor =
        config_double(m, "monitor.gradient_floor", s.thresholds.gradient_floor);
    s.thresholds.dt_collapse =
        config_double(m, "monitor.dt_collapse", s.thresholds.dt_collapse);

    s.horizon = config_double(m, "run.horizon", s.horizon);
    s.dt = config_double(m, "run.dt", s.dt);
    s.cfl = config_double(m, "run.cfl", s.cfl);
    s.cadence = config_int(m, "run.cadence", s.cadence);
    return s;
}

ConfigSections config_sections_from_scenario(const ScenarioConfig& s) {
    auto d = [](double v) { return format_double(v); };
    auto i = [](int v) { return std::to_string(v); };
    auto b = [](bool v) { return v ? std::string("true") : std::string("false"); };

    ConfigSections out;
    out.push_back({"scenario",
                   {{"name", s.name},
                    {"description", s.description},
                    {"dimension", i(s.dimension)},
                    {"seed", std::to_string(s.seed)},
                    {"evolve_hydro", b(s.evolve_hydro)}}});
    out.push_back({"grid",
                   {{"cells_x", i(s.cells[0])},
                    {"cells_y", i(s.cells[1])},
                    {"cells_z", i(s.cells[2])},
                    {"x0", d(s.x0)},
                    {"x1", d(s.x1)},
                    {"boundary", sample_name(s.boundary)}}});
    out.push_back({"constants",
                   {{"gamma", d(s.gamma)},
                    {"c", d(s.c)},
                    {"planck_b", d(s.planck_b)},
                    {"planck_v_ref", d(s.planck_v_ref)},
                    {"h_planck", d(s.h_planck)},
                    {"damping_alpha", d(s.damping_alpha)}}});
    out.push_back({"radiation",
                   {{"order", i(s.ordinate_order)},
                    {"groups", i(s.groups)},
                    {"v_max", d(s.v_max)},
                    {"backend", backend_name(s.backend)},
                    {"boundary", radiation_boundary_name(s.radiation_boundary)}}});
    out.push_back({"absorption",
                   {{"kind", s.absorption_kind},
                    {"d1", d(s.line_d1)},
                    {"d2", d(s.line_d2)},
                    {"gas_constant", d(s.line_gas_constant)},
                    {"v0", d(s.line_v0)},
                    {"value", d(s.constant_kbar)}}});
    out.push_back({"scattering",
                   {{"kind", s.scattering_kind},
                    {"sigma0", d(s.scattering_sigma0)},
                    {"v_center", d(s.scattering_v_center)},
                    {"width", d(s.scattering_width)}}});
    out.push_back({"density",
                   {{"profile", s.density_profile},
                    {"amplitude", d(s.density_amplitude)},
                    {"core", d(s.density_core)},
                    {"support", d(s.density_support)},
                    {"w_base", d(s.w_base)},
                    {"octaves", i(s.density_octaves)},
                    {"k0", d(s.density_k0)}}});
    out.push_back({"velocity",
                   {{"profile", s.velocity_profile},
                    {"amplitude", d(s.velocity_amplitude)},
                    {"octaves", i(s.velocity_octaves)},
                    {"k0", d(s.velocity_k0)}}});
    out.push_back({"intensity",
                   {{"profile", s.intensity_profile},
                    {"amplitude", d(s.intensity_amplitude)},
                    {"support", d(s.intensity_support)},
                    {"octaves", i(s.intensity_octaves)},
                    {"k0", d(s.intensity_k0)}}});
    out.push_back({"geometry",
                   {{"enabled", b(s.geometry_enabled)},
                    {"center_x", d(s.geometry_center[0])},
                    {"center_y", d(s.geometry_center[1])},
                    {"center_z", d(s.geometry_center[2])},
                    {"a0_radius", d(s.a0_radius)},
                    {"b0_radius", d(s.b0_radius)},
                    {"r0", d(s.r0)}}});

    std::vector<std::pair<std::string, std::string>> cert;
    if (s.expected_t_critical) cert.push_back({"t_critical", d(*s.expected_t_critical)});
    if (s.expected_t_moment) cert.push_back({"t_moment", d(*s.expected_t_moment)});
    if (s.expected_t_burgers) cert.push_back({"t_burgers", d(*s.expected_t_burgers)});
    if (s.expected_t_damped) cert.push_back({"t_damped", d(*s.expected_t_damped)});
    if (s.moment_tuple) {
        cert.push_back({"use_moment_tuple", "true"});
        cert.push_back({"moment_m0", d(s.moment_tuple->m0)});
        cert.push_back({"moment_r0", d(s.moment_tuple->r0)});
        cert.push_back({"moment_gamma", d(s.moment_tuple->gamma)});
        cert.push_back({"moment_M0", d(s.moment_tuple->big_m0)});
        cert.push_back({"moment_M0_prime", d(s.moment_tuple->big_m0_prime)});
        cert.push_back({"moment_dim", i(s.moment_tuple->dim)});
    }
    if (!cert.empty()) out.push_back({"certificate", cert});

    out.push_back({"picard",
                   {{"k_max", i(s.picard_k_max)},
                    {"steps", i(s.picard_steps)},
                    {"dt", d(s.picard_dt)},
                    {"epsilon0", d(s.picard_epsilon0)}}});
    out.push_back({"monitor",
                   {{"gradient_factor", d(s.thresholds.gradient_factor)},
                    {"gradient_floor", d(s.thresholds.gradient_floor)},
                    {"dt_collapse", d(s.thresholds.dt_collapse)}}});
    out.push_back({"run",
                   {{"horizon", d(s.horizon)},
                    {"dt", d(s.dt)},
                    {"cfl", d(s.cfl)},
                    {"cadence", i(s.cadence)}}});
    return out;
}

void export_scenario(const ScenarioConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open scenario export: " + path);
    out << format_config(config_sections_from_scenario(cfg));
    if (!out) throw std::runtime_error("scenario export failed: " + path);
}

ScenarioSetup build_scenario(const ScenarioConfig& cfg) {
    if (cfg.dimension != 1 && cfg.dimension != 3)
        throw std::invalid_argument("scenario dimension must be 1 or 3");
    if (cfg.gamma <= 1.0 || cfg.gamma > 3.0)
        throw std::invalid_argument("scenario gamma must lie in (1, 3]");
    if (cfg.c <= 0.0) throw std::invalid_argument("scenario light speed must be positive");
    if (cfg.cfl <= 0.0 || cfg.cfl > 1.0)
        throw std::invalid_argument("scenario cfl must lie in (0, 1]");
    if (cfg.horizon <= 0.0) throw std::invalid_argument("scenario horizon must be positive");
    if (cfg.cadence < 1) throw std::invalid_argument("scenario cadence must be at least 1");
    if (cfg.planck_v_ref <= 0.0 || cfg.h_planck <= 0.0 || cfg.planck_b <= 0.0)
        throw std::invalid_argument("scenario spectrum constants must be positive");
    if (cfg.damping_alpha < 0.0)
        throw std::invalid_argument("scenario damping must be nonnegative");
    if (cfg.dt < 0.0) throw std::invalid_argument("scenario dt must be nonnegative");

    ScenarioSetup setup;
    setup.config = cfg;
    if (cfg.dimension == 1) {
        setup.grid = make_grid_1d(cfg.cells[0], cfg.x0, cfg.x1);
    } else {
        setup.grid = make_grid_3d(cfg.cells[0], cfg.cells[1], cfg.cells[2],
                                  {cfg.x0, cfg.x0, cfg.x0}, {cfg.x1, cfg.x1, cfg.x1});
    }
    const Grid& g = setup.grid;

    setup.quad = build_angular_quadrature(cfg.ordinate_order);
    setup.freq = build_frequency_grid(cfg.groups, cfg.v_max);
    setup.bbar = PlanckSpectrum{cfg.planck_b, cfg.planck_v_ref};

    if (cfg.absorption_kind == "line") {
        LineAbsorptionParams p;
        p.d1 = cfg.line_d1;
        p.d2 = cfg.line_d2;
        p.gas_constant = cfg.line_gas_constant;
        p.v0 = cfg.line_v0;
        p.gamma = cfg.gamma;
        setup.absorption = make_line_absorption(p);
    } else if (cfg.absorption_kind == "zero") {
        setup.absorption = make_zero_absorption();
    } else if (cfg.absorption_kind == "constant") {
        setup.absorption = make_constant_kbar(cfg.constant_kbar, cfg.gamma);
    } else {
        throw std::invalid_argument("unknown absorption kind: " + cfg.absorption_kind);
    }

    if (cfg.scattering_kind == "none") {
        setup.scattering = make_no_scattering();
    } else if (cfg.scattering_kind == "isotropic") {
        setup.scattering = make_isotropic_kernel(cfg.scattering_sigma0,
                                                 cfg.scattering_v_center,
                                                 cfg.scattering_width);
    } else {
        throw std::invalid_argument("unknown scattering kind: " + cfg.scattering_kind);
    }

    setup.fluid = make_fluid_state(g, cfg.gamma);
    setup.fluid.boundary = cfg.boundary;
    FluidState& fl = setup.fluid;

    const Vec3& center = cfg.geometry_center;
    if (cfg.density_profile == "zero") {
        // rho stays zero
    } else if (cfg.density_profile == "plateau") {
        if (cfg.density_support <= cfg.density_core)
            throw std::invalid_argument("density support must exceed the core radius");
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const double r = radial_distance(g, g.center(i, j, k), center);
                    fl.rho[g.index(i, j, k)] =
                        plateau_bump(r, cfg.density_core, cfg.density_support,
                                     cfg.density_amplitude);
                }
    } else if (cfg.density_profile == "w-bump") {
        if (cfg.density_support <= cfg.density_core)
            throw std::invalid_argument("density support must exceed the core radius");
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const double r = radial_distance(g, g.center(i, j, k), center);
                    const double w = plateau_bump(r, cfg.density_core, cfg.density_support,
                                                  cfg.density_amplitude);
                    fl.rho[g.index(i, j, k)] = rho_from_w(w, cfg.gamma);
                }
    } else if (cfg.density_profile == "w-multiscale") {
        const Field bands = multiscale_profile(g, cfg.density_amplitude,
                                               cfg.density_octaves, cfg.density_k0);
        for (std::size_t cidx = 0; cidx < g.cells(); ++cidx) {
            const double w = std::max(0.0, cfg.w_base + bands[cidx]);
            fl.rho[cidx] = rho_from_w(w, cfg.gamma);
        }
    } else {
        throw std::invalid_argument("unknown density profile: " + cfg.density_profile);
    }

    if (cfg.velocity_profile == "zero") {
        // u stays zero
    } else if (cfg.velocity_profile == "linear") {
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const Vec3 p = g.center(i, j, k);
                    const std::size_t cidx = g.index(i, j, k);
                    fl.u.x[cidx] = cfg.velocity_amplitude * (p[0] - center[0]);
                    if (g.dim == 3) {
                        fl.u.y[cidx] = cfg.velocity_amplitude * (p[1] - center[1]);
                        fl.u.z[cidx] = cfg.velocity_amplitude * (p[2] - center[2]);
                    }
                }
    } else if (cfg.velocity_profile == "constant") {
        for (std::size_t cidx = 0; cidx < g.cells(); ++cidx)
            fl.u.x[cidx] = cfg.velocity_amplitude;
    } else if (cfg.velocity_profile == "multiscale") {
        const Field bands = multiscale_profile(g, cfg.velocity_amplitude,
                                               cfg.velocity_octaves, cfg.velocity_k0);
        for (std::size_t cidx = 0; cidx < g.cells(); ++cidx) fl.u.x[cidx] = bands[cidx];
    } else {
        throw std::invalid_argument("unknown velocity profile: " + cfg.velocity_profile);
    }

    refresh_derived_fields(fl);
    refresh_vacuum_mask(fl, true);

    Field shape(g.cells(), 1.0);
    if (cfg.intensity_profile == "equilibrium") {
        // shape stays one
    } else if (cfg.intensity_profile == "equilibrium-bump") {
        if (cfg.intensity_support <= 0.0)
            throw std::invalid_argument("intensity support must be positive");
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const double r = radial_distance(g, g.center(i, j, k), center);
                    shape[g.index(i, j, k)] +=
                        plateau_bump(r, 0.0, cfg.intensity_support, cfg.intensity_amplitude);
                }
    } else if (cfg.intensity_profile == "equilibrium-multiscale") {
        const Field bands = multiscale_profile(g, cfg.intensity_amplitude,
                                               cfg.intensity_octaves, cfg.intensity_k0);
        for (std::size_t cidx = 0; cidx < g.cells(); ++cidx) shape[cidx] += bands[cidx];
    } else {
        throw std::invalid_argument("unknown intensity profile: " + cfg.intensity_profile);
    }

    setup.radiation = make_equilibrium_field(g.cells(), setup.freq, setup.quad, setup.bbar);
    for (std::size_t gi = 0; gi < setup.radiation.groups; ++gi)
        for (std::size_t ki = 0; ki < setup.radiation.ordinates; ++ki) {
            double* slice = setup.radiation.slice(gi, ki);
            for (std::size_t cidx = 0; cidx < g.cells(); ++cidx) slice[cidx] *= shape[cidx];
        }

    if (cfg.geometry_enabled)
        setup.geometry = make_vacuum_geometry(g, center, cfg.a0_radius, cfg.b0_radius,
                                              cfg.r0, fl.rho);
    return setup;
}

namespace {

bool vec_finite(const Field& f) {
    for (double v : f)
        if (!std::isfinite(v)) return false;
    return true;
}

std::string cell_location(const Grid& g, std::size_t cidx) {
    const std::size_t nxy = static_cast<std::size_t>(g.nx) * g.ny;
    const int k = static_cast<int>(cidx / nxy);
    const int j = static_cast<int>((cidx % nxy) / g.nx);
    const int i = static_cast<int>(cidx % g.nx);
    const Vec3 p = g.center(i, j, k);
    std::ostringstream out;
    out << "cell " << cidx << " at (" << format_double(p[0]);
    if (g.dim == 3) out << ", " << format_double(p[1]) << ", " << format_double(p[2]);
    out << ")";
    return out.str();
}

}  // namespace

ValidationReport validate_scenario(const ScenarioSetup& setup) {
    const ScenarioConfig& cfg = setup.config;
    const Grid& g = setup.grid;
    const FluidState& fl = setup.fluid;
    ValidationReport report;
    auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        report.checks.push_back({name, pass, detail});
    };

    bool finite = vec_finite(fl.rho) && vec_finite(fl.u.x) && vec_finite(fl.u.y) &&
                  vec_finite(fl.u.z) && vec_finite(setup.radiation.data);
    add("data-finite", finite, finite ? "all fields finite" : "non-finite entries found");

    double min_rho = 0.0;
    if (!fl.rho.empty()) min_rho = *std::min_element(fl.rho.begin(), fl.rho.end());
    add("density-nonnegative", min_rho >= 0.0, "min rho = " + format_double(min_rho));

    double min_i = 0.0;
    if (!setup.radiation.data.empty())
        min_i = *std::min_element(setup.radiation.data.begin(), setup.radiation.data.end());
    add("intensity-nonnegative", min_i >= 0.0, "min intensity = " + format_double(min_i));

    report.sobolev_norm_wu = sobolev_norm(g, fl.w, fl.u, 3, fl.boundary);
    add("sobolev-finite", std::isfinite(report.sobolev_norm_wu),
        "H^3 norm of (w, u) = " + format_double(report.sobolev_norm_wu));

    const Vec3& center = cfg.geometry_center;
    if (setup.geometry) {
        const VacuumGeometry& geo = *setup.geometry;
        report.m0 = geo.m0;
        add("supported-mass-positive", geo.m0 > 0.0, "m0 = " + format_double(geo.m0));

        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const double r = radial_distance(g, g.center(i, j, k), center);
                    if (r <= geo.a0_radius || r >= geo.b0_radius) continue;
                    const std::size_t cidx = g.index(i, j, k);
                    const double speed = norm(fl.u.at(cidx));
                    if (fl.rho[cidx] > fl.vacuum_threshold || speed > 1e-14)
                        report.annulus_violations.push_back(cidx);
                }
        std::string detail;
        if (report.annulus_violations.empty()) {
            detail = "no gas or motion between the core and the outer boundary";
        } else {
            detail = std::to_string(report.annulus_violations.size()) + " cells occupied:";
            const std::size_t show = std::min<std::size_t>(3, report.annulus_violations.size());
            for (std::size_t idx = 0; idx < show; ++idx)
                detail += " " + cell_location(g, report.annulus_violations[idx]);
        }
        add("annulus-empty", report.annulus_violations.empty(), detail);

        Mask far(g.cells(), 0);
        bool any_far = false;
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i)
                    if (radial_distance(g, g.center(i, j, k), center) > geo.r0) {
                        far[g.index(i, j, k)] = 1;
                        any_far = true;
                    }
        if (any_far) {
            report.far_field_deviation =
                max_equilibrium_deviation(setup.radiation, setup.freq, setup.bbar, &far);
            add("far-field-equilibrium", report.far_field_deviation <= 1e-12,
                "max |I - Bbar| outside the outer ball = " +
                    format_double(report.far_field_deviation));
        } else {
            add("far-field-equilibrium", false,
                "outer ball covers the whole domain; no far field to test");
        }
    } else {
        report.m0 = total_mass(fl);
        report.far_field_deviation =
            max_equilibrium_deviation(setup.radiation, setup.freq, setup.bbar, nullptr);
        add("far-field-equilibrium", true,
            "no vacuum geometry declared; global max |I - Bbar| = " +
                format_double(report.far_field_deviation));
    }

    auto close = [](double a, double b, double tol) {
        return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
    };

    if (cfg.expected_t_critical) {
        const double r0 = setup.geometry ? setup.geometry->r0 : cfg.r0;
        const double got = critical_time(r0, cfg.c);
        add("certificate-t-critical", close(got, *cfg.expected_t_critical, 1e-12),
            "recomputed " + format_double(got) + ", declared " +
                format_double(*cfg.expected_t_critical));
    }

    if (cfg.expected_t_moment) {
        if (cfg.moment_tuple) {
            const MomentTupleOverride& t = *cfg.moment_tuple;
            const double got = moment_blowup_bound(t.m0, t.r0, t.gamma, t.big_m0,
                                                   t.big_m0_prime, t.dim);
            add("certificate-t-moment", close(got, *cfg.expected_t_moment, 1e-12),
                "recomputed " + format_double(got) + ", declared " +
                    format_double(*cfg.expected_t_moment));
        } else if (setup.geometry) {
            const MomentDiagnostics d = moment_diagnostics(fl, *setup.geometry, 0.0);
            const double got = moment_blowup_bound(setup.geometry->m0, setup.geometry->r0,
                                                   cfg.gamma, d.M, d.dM_dt, g.dim);
            add("certificate-t-moment", close(got, *cfg.expected_t_moment, 1e-9),
                "recomputed " + format_double(got) + ", declared " +
                    format_double(*cfg.expected_t_moment));
        } else {
            add("certificate-t-moment", false,
                "declared without a vacuum geometry or explicit inputs");
        }
    }

    const bool needs_scan = cfg.expected_t_burgers || cfg.expected_t_damped;
    if (needs_scan) {
        bool any_vacuum = false;
        for (auto vbit : fl.vacuum) any_vacuum = any_vacuum || vbit;
        if (!any_vacuum) {
            if (cfg.expected_t_burgers)
                add("certificate-t-burgers", false, "no vacuum cells to scan");
            if (cfg.expected_t_damped)
                add("certificate-t-damped", false, "no vacuum cells to scan");
        } else {
            const SingularityScan scan =
                hyperbolic_singularity_scan(fl.u, fl.vacuum, g, fl.boundary);
            if (cfg.expected_t_burgers) {
                if (scan.t_burgers)
                    add("certificate-t-burgers",
                        close(*scan.t_burgers, *cfg.expected_t_burgers, 1e-9),
                        "recomputed " + format_double(*scan.t_burgers) + ", declared " +
                            format_double(*cfg.expected_t_burgers));
                else
                    add("certificate-t-burgers", false,
                        "scan found no negative eigenvalue (lambda_min = " +
                            format_double(scan.lambda_min) + ")");
            }
            if (cfg.expected_t_damped) {
                const auto t0 = damped_blowup_time(scan.lambda_min, cfg.damping_alpha);
                if (t0)
                    add("certificate-t-damped", close(*t0, *cfg.expected_t_damped, 1e-9),
                        "recomputed " + format_double(*t0) + ", declared " +
                            format_double(*cfg.expected_t_damped));
                else
                    add("certificate-t-damped", false,
                        "damped threshold not met (lambda_min = " +
                            format_double(scan.lambda_min) + ", alpha = " +
                            format_double(cfg.damping_alpha) + ")");
            }
        }
    }

    report.pass = true;
    for (const auto& chk : report.checks) report.pass = report.pass && chk.pass;
    return report;
}

}  // namespace rhlab
