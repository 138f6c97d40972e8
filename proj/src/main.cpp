// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rhlab/io.hpp"
#include "rhlab/picard.hpp"
#include "rhlab/runner.hpp"
#include "rhlab/scenarios.hpp"
#include "rhlab/transport.hpp"

namespace {

using namespace rhlab;

struct Overrides {
    std::string scenario;
    std::string config_path;
    std::string out_dir;
    std::optional<int> cells;
    std::optional<int> ordinates;
    std::optional<int> groups;
    std::optional<double> dt;
    std::optional<double> cfl;
    std::optional<double> horizon;
    std::optional<std::string> backend;
    std::optional<unsigned> seed;
    std::optional<int> cadence;
};

void add_common_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--scenario", o.scenario, "Name of a builtin scenario");
    cmd->add_option("--config", o.config_path, "Path to a scenario config file");
    cmd->add_option("--out", o.out_dir, "Output directory (default out/<scenario name>)");
    cmd->add_option("--cells", o.cells, "Cells per axis override");
    cmd->add_option("--ordinates", o.ordinates,
                    "Angular order override (rays = 2 * order^2)");
    cmd->add_option("--groups", o.groups, "Frequency group count override");
    cmd->add_option("--dt", o.dt, "Fixed step size override (0 selects adaptive)");
    cmd->add_option("--cfl", o.cfl, "CFL number override, in (0, 1]");
    cmd->add_option("--horizon", o.horizon, "Final time override");
    cmd->add_option("--backend", o.backend, "Transport backend: characteristic or sweep");
    cmd->add_option("--seed", o.seed, "Random seed override");
    cmd->add_option("--cadence", o.cadence, "Record every N accepted steps");
}

ScenarioConfig load_scenario(const Overrides& o) {
    if (!o.scenario.empty() && !o.config_path.empty())
        throw std::invalid_argument("pass either --scenario or --config, not both");
    ScenarioConfig cfg;
    if (!o.scenario.empty()) {
        cfg = find_builtin(o.scenario);
    } else if (!o.config_path.empty()) {
        cfg = scenario_from_config(parse_config_file(o.config_path));
    } else {
        throw std::invalid_argument("one of --scenario or --config is required");
    }
    if (o.cells) {
        if (*o.cells < 1) throw std::invalid_argument("--cells must be at least 1");
        cfg.cells[0] = *o.cells;
        if (cfg.dimension == 3) cfg.cells[1] = cfg.cells[2] = *o.cells;
    }
    if (o.ordinates) cfg.ordinate_order = *o.ordinates;
    if (o.groups) cfg.groups = *o.groups;
    if (o.dt) cfg.dt = *o.dt;
    if (o.cfl) cfg.cfl = *o.cfl;
    if (o.horizon) cfg.horizon = *o.horizon;
    if (o.backend) {
        if (*o.backend == "characteristic") {
            cfg.backend = TransportBackend::characteristic;
        } else if (*o.backend == "sweep") {
            cfg.backend = TransportBackend::sweep;
        } else {
            throw std::invalid_argument("unknown backend: " + *o.backend);
        }
    }
    if (o.seed) cfg.seed = *o.seed;
    if (o.cadence) cfg.cadence = *o.cadence;
    return cfg;
}

std::string resolve_out_dir(const Overrides& o, const ScenarioConfig& cfg) {
    const std::string dir = o.out_dir.empty() ? "out/" + cfg.name : o.out_dir;
    std::filesystem::create_directories(dir);
    return dir;
}

nlohmann::json certificate_json(const ScenarioSetup& setup, const BlowupCertificate& cert) {
    nlohmann::json j;
    j["scenario"] = setup.config.name;
    j["t_critical"] =
        cert.t_critical > 0.0 ? nlohmann::json(cert.t_critical) : nlohmann::json();
    j["t_moment"] = cert.t_moment ? nlohmann::json(*cert.t_moment) : nlohmann::json();
    j["lambda_min"] = cert.lambda_min ? nlohmann::json(*cert.lambda_min) : nlohmann::json();
    j["t_burgers"] = cert.t_burgers ? nlohmann::json(*cert.t_burgers) : nlohmann::json();
    j["t_damped"] = cert.t_damped ? nlohmann::json(*cert.t_damped) : nlohmann::json();
    j["moment_bound"] = setup.geometry
                            ? nlohmann::json(setup.geometry->m0 * setup.geometry->r0 *
                                             setup.geometry->r0)
                            : nlohmann::json();
    j["monitor_threshold"] = cert.monitor_threshold;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

Snapshot make_snapshot(const ScenarioSetup& setup, double time) {
    Snapshot snap;
    snap.scenario = setup.config.name;
    snap.time = time;
    snap.gamma = setup.config.gamma;
    snap.c = setup.config.c;
    snap.grid = setup.grid;
    snap.fields.push_back({"rho", setup.fluid.rho});
    snap.fields.push_back({"w", setup.fluid.w});
    snap.fields.push_back({"u_x", setup.fluid.u.x});
    snap.fields.push_back({"u_y", setup.fluid.u.y});
    snap.fields.push_back({"u_z", setup.fluid.u.z});
    snap.fields.push_back({"pressure", setup.fluid.pressure});
    const RadiationMoments moments =
        radiation_moments(setup.radiation, setup.quad, setup.freq, setup.config.c);
    snap.fields.push_back({"radiation_energy", moments.angle_integrated});
    snap.fields.push_back({"radiation_flux_x", moments.flux.x});
    snap.fields.push_back({"radiation_flux_y", moments.flux.y});
    snap.fields.push_back({"radiation_flux_z", moments.flux.z});
    return snap;
}

CsvTable timeseries_table(const RunResult& res) {
    CsvTable table;
    table.columns = {"t",           "mass",          "momentum_x",
                     "momentum_y",  "momentum_z",    "second_moment",
                     "max_speed",   "max_velocity_gradient", "min_density",
                     "sup_equilibrium_deviation", "dt", "events"};
    for (std::size_t i = 0; i < res.rows(); ++i) {
        table.rows.push_back({format_double(res.times[i]), format_double(res.mass[i]),
                              format_double(res.momentum_x[i]),
                              format_double(res.momentum_y[i]),
                              format_double(res.momentum_z[i]),
                              format_double(res.second_moment[i]),
                              format_double(res.max_speed[i]),
                              format_double(res.max_gradient[i]),
                              format_double(res.min_density[i]),
                              format_double(res.sup_deviation[i]),
                              format_double(res.dts[i]), res.events[i]});
    }
    return table;
}

struct TimeseriesData {
    std::vector<double> t;
    std::vector<double> gradient;
    std::vector<double> deviation;
    std::vector<double> moment;
};

struct CertificateMarkers {
    std::optional<double> t_critical;
    std::optional<double> t_moment;
    std::optional<double> t_burgers;
    std::optional<double> t_damped;
    std::optional<double> moment_bound;
};

std::vector<std::array<double, 2>> zip_points(const std::vector<double>& x,
                                              const std::vector<double>& y) {
    std::vector<std::array<double, 2>> points;
    points.reserve(x.size());
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        points.push_back({x[i], y[i]});
    return points;
}

void render_timeseries_plots(const std::string& dir, const std::string& scenario,
                             const TimeseriesData& data, const CertificateMarkers& marks,
                             std::vector<std::string>& written) {
    {
        PlotSpec spec;
        spec.title = scenario + ": velocity gradient";
        spec.x_label = "t";
        spec.y_label = "max |grad u|";
        spec.series.push_back({"max |grad u|", zip_points(data.t, data.gradient)});
        if (marks.t_burgers) spec.markers.push_back({"hyperbolic time", *marks.t_burgers});
        if (marks.t_damped) spec.markers.push_back({"damped time", *marks.t_damped});
        write_svg_plot(dir + "/gradient.svg", spec);
        written.push_back("gradient.svg");
    }
    {
        PlotSpec spec;
        spec.title = scenario + ": distance from equilibrium";
        spec.x_label = "t";
        spec.y_label = "sup |I - Bbar|";
        spec.series.push_back({"sup |I - Bbar|", zip_points(data.t, data.deviation)});
        if (marks.t_critical) spec.markers.push_back({"clearing time", *marks.t_critical});
        write_svg_plot(dir + "/deviation.svg", spec);
        written.push_back("deviation.svg");
    }
    bool any_moment = false;
    for (double m : data.moment)
        if (m != 0.0) any_moment = true;
    if (any_moment) {
        PlotSpec spec;
        spec.title = scenario + ": second moment";
        spec.x_label = "t";
        spec.y_label = "M(t)";
        spec.series.push_back({"M(t)", zip_points(data.t, data.moment)});
        if (marks.moment_bound && !data.t.empty()) {
            PlotSeries bound;
            bound.label = "confinement bound";
            bound.points.push_back({data.t.front(), *marks.moment_bound});
            bound.points.push_back({data.t.back(), *marks.moment_bound});
            spec.series.push_back(bound);
        }
        if (marks.t_moment) spec.markers.push_back({"moment bound time", *marks.t_moment});
        write_svg_plot(dir + "/moment.svg", spec);
        written.push_back("moment.svg");
    }
}

CertificateMarkers markers_from_certificate(const BlowupCertificate& cert,
                                            const ScenarioSetup& setup) {
    CertificateMarkers marks;
    if (cert.t_critical > 0.0) marks.t_critical = cert.t_critical;
    if (setup.geometry)
        marks.moment_bound = setup.geometry->m0 * setup.geometry->r0 * setup.geometry->r0;
    marks.t_moment = cert.t_moment;
    marks.t_burgers = cert.t_burgers;
    marks.t_damped = cert.t_damped;
    return marks;
}

void write_ray_dump(const std::string& dir, const ScenarioSetup& setup,
                    std::vector<std::string>& written) {
    CsvTable table;
    table.columns.push_back("x");
    for (std::size_t g = 0; g < setup.freq.size(); ++g)
        for (std::size_t k = 0; k < setup.quad.size(); ++k)
            table.columns.push_back("g" + std::to_string(g) + "_k" + std::to_string(k));
    const Grid& grid = setup.grid;
    const int j_mid = grid.ny / 2;
    const int k_mid = grid.nz / 2;
    for (int i = 0; i < grid.nx; ++i) {
        const std::size_t cell = grid.index(i, j_mid, k_mid);
        std::vector<std::string> row;
        row.push_back(format_double(grid.center(i, j_mid, k_mid)[0]));
        for (std::size_t g = 0; g < setup.freq.size(); ++g)
            for (std::size_t k = 0; k < setup.quad.size(); ++k)
                row.push_back(format_double(setup.radiation.at(g, k, cell)));
        table.rows.push_back(row);
    }
    write_csv(dir + "/rays.csv", table);
    written.push_back("rays.csv");
}

int run_simulate(const Overrides& o, bool ray_dump) {
    const ScenarioConfig cfg = load_scenario(o);
    ScenarioSetup setup = build_scenario(cfg);
    const BlowupCertificate cert = compute_certificate(setup);
    const std::string dir = resolve_out_dir(o, cfg);
    std::vector<std::string> written;

    write_snapshot(dir + "/initial.snap", make_snapshot(setup, 0.0));
    written.push_back("initial.snap");

    RunResult res = run_simulation(setup);

    write_csv(dir + "/timeseries.csv", timeseries_table(res));
    written.push_back("timeseries.csv");
    write_snapshot(dir + "/final.snap", make_snapshot(setup, res.final_time));
    written.push_back("final.snap");
    write_text_file(dir + "/certificate.json", certificate_json(setup, cert).dump(2) + "\n");
    written.push_back("certificate.json");

    TimeseriesData data{res.times, res.max_gradient, res.sup_deviation, res.second_moment};
    render_timeseries_plots(dir, cfg.name, data, markers_from_certificate(cert, setup),
                            written);
    if (ray_dump) write_ray_dump(dir, setup, written);
    write_manifest(dir, written);

    std::cout << "scenario " << cfg.name << "\n";
    std::cout << "steps " << res.steps << "\n";
    std::cout << "final_time " << format_double(res.final_time) << "\n";
    std::cout << "health " << run_health_name(res.health) << "\n";
    for (const std::string& trig : res.triggers) std::cout << "trigger " << trig << "\n";
    if (res.trigger_time >= 0.0)
        std::cout << "trigger_time " << format_double(res.trigger_time) << "\n";
    if (res.drift) {
        std::cout << "tracer_drift inner " << format_double(res.drift->inner_drift)
                  << " outer " << format_double(res.drift->outer_drift) << " cell "
                  << format_double(res.drift->cell_width) << " "
                  << (res.drift->pass ? "stationary" : "moved") << "\n";
    }
    std::cout << "out " << dir << "\n";
    return res.exit_code;
}

int run_certify(const Overrides& o) {
    const ScenarioConfig cfg = load_scenario(o);
    const ScenarioSetup setup = build_scenario(cfg);
    const BlowupCertificate cert = compute_certificate(setup);
    const nlohmann::json j = certificate_json(setup, cert);
    const std::string dir = resolve_out_dir(o, cfg);
    write_text_file(dir + "/certificate.json", j.dump(2) + "\n");
    write_manifest(dir, {"certificate.json"});
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_picard(const Overrides& o) {
    const ScenarioConfig cfg = load_scenario(o);
    ScenarioSetup setup = build_scenario(cfg);
    PicardContext ctx{setup.grid,       setup.quad, setup.freq,
                      setup.absorption, setup.bbar, setup.scattering,
                      cfg.c,            cfg.gamma,  setup.scattering.enabled};
    MollifierConfig mollifier{cfg.picard_epsilon0};
    const IterationTrace trace =
        picard_iterate(ctx, setup.fluid.w, setup.fluid.u, setup.radiation, mollifier,
                       cfg.picard_k_max, cfg.picard_dt, cfg.picard_steps);

    const std::string dir = resolve_out_dir(o, cfg);
    std::vector<std::string> written;
    CsvTable table;
    table.columns = {"k",      "diff_u",    "diff_i",   "ratio",
                     "norm_s", "data_diff", "mollified"};
    for (const IterationRecord& rec : trace.records) {
        table.rows.push_back({std::to_string(rec.k), format_double(rec.diff_u),
                              format_double(rec.diff_i), format_double(rec.ratio),
                              format_double(rec.norm_s), format_double(rec.data_diff),
                              rec.mollifier_applied ? "1" : "0"});
    }
    write_csv(dir + "/iterations.csv", table);
    written.push_back("iterations.csv");

    PlotSpec spec;
    spec.title = cfg.name + ": iterate differences";
    spec.x_label = "k";
    spec.y_label = "difference";
    spec.log_y = true;
    PlotSeries total{"fluid + intensity diff", {}};
    PlotSeries data{"mollified data diff", {}};
    for (const IterationRecord& rec : trace.records) {
        total.points.push_back({static_cast<double>(rec.k), rec.diff_u + rec.diff_i});
        data.points.push_back({static_cast<double>(rec.k), rec.data_diff});
    }
    spec.series.push_back(total);
    spec.series.push_back(data);
    write_svg_plot(dir + "/picard.svg", spec);
    written.push_back("picard.svg");
    write_manifest(dir, written);

    for (const IterationRecord& rec : trace.records) {
        std::cout << "k " << rec.k << " diff_u " << format_double(rec.diff_u)
                  << " diff_i " << format_double(rec.diff_i) << " ratio "
                  << format_double(rec.ratio) << " norm_s " << format_double(rec.norm_s)
                  << (rec.mollifier_applied ? " mollified" : "") << "\n";
    }
    std::cout << "max_ratio_last_half " << format_double(trace.max_ratio_last_half)
              << "\n";
    std::cout << "contraction " << (trace.contraction_failure ? "failed" : "held")
              << "\n";
    std::cout << "out " << dir << "\n";
    return trace.contraction_failure ? 2 : 0;
}

int run_validate(const Overrides& o, const std::string& export_path) {
    const ScenarioConfig cfg = load_scenario(o);
    const ScenarioSetup setup = build_scenario(cfg);
    const ValidationReport report = validate_scenario(setup);
    const StructuralReport structure = validate_absorption_structure(
        setup.absorption, cfg.gamma, 3, setup.scattering, cfg.seed);

    for (const ValidationCheck& check : report.checks) {
        std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name;
        if (!check.detail.empty()) std::cout << " " << check.detail;
        std::cout << "\n";
    }
    for (const StructuralCheck& check : structure.checks) {
        std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << "coefficient-"
                  << check.label << " measured " << format_double(check.measured)
                  << "\n";
    }
    std::cout << "mass " << format_double(report.m0) << "\n";
    std::cout << "sobolev_norm " << format_double(report.sobolev_norm_wu) << "\n";
    std::cout << "far_field_deviation " << format_double(report.far_field_deviation)
              << "\n";
    if (!export_path.empty()) {
        export_scenario(cfg, export_path);
        std::cout << "exported " << export_path << "\n";
    }
    const bool ok = report.pass && structure.all_pass();
    std::cout << (ok ? "valid" : "invalid") << "\n";
    return ok ? 0 : 1;
}

std::vector<double> numeric_column(const CsvTable& table, const std::string& name) {
    const std::size_t col = csv_column(table, name);
    std::vector<double> values;
    values.reserve(table.rows.size());
    for (const std::vector<std::string>& row : table.rows)
        values.push_back(std::stod(row.at(col)));
    return values;
}

int run_plot(const std::string& input, const std::string& out_dir,
             const std::string& certificate_path) {
    const CsvTable table = read_csv(input);
    const std::string dir =
        out_dir.empty() ? std::filesystem::path(input).parent_path().string() : out_dir;
    std::filesystem::create_directories(dir.empty() ? "." : dir);
    const std::string base = dir.empty() ? "." : dir;
    std::vector<std::string> written;

    bool is_picard = false;
    for (const std::string& c : table.columns)
        if (c == "k") is_picard = true;

    if (is_picard) {
        PlotSpec spec;
        spec.title = "iterate differences";
        spec.x_label = "k";
        spec.y_label = "difference";
        spec.log_y = true;
        const std::vector<double> k = numeric_column(table, "k");
        const std::vector<double> du = numeric_column(table, "diff_u");
        const std::vector<double> di = numeric_column(table, "diff_i");
        PlotSeries total{"fluid + intensity diff", {}};
        for (std::size_t i = 0; i < k.size(); ++i)
            total.points.push_back({k[i], du[i] + di[i]});
        spec.series.push_back(total);
        write_svg_plot(base + "/picard.svg", spec);
        std::cout << "wrote " << base << "/picard.svg\n";
        return 0;
    }

    CertificateMarkers marks;
    std::string scenario = "timeseries";
    if (!certificate_path.empty()) {
        std::ifstream in(certificate_path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open " + certificate_path);
        const nlohmann::json j = nlohmann::json::parse(in);
        if (j.contains("scenario") && j["scenario"].is_string())
            scenario = j["scenario"].get<std::string>();
        if (j.contains("t_critical") && j["t_critical"].is_number() &&
            j["t_critical"].get<double>() > 0.0)
            marks.t_critical = j["t_critical"].get<double>();
        if (j.contains("t_moment") && j["t_moment"].is_number())
            marks.t_moment = j["t_moment"].get<double>();
        if (j.contains("t_burgers") && j["t_burgers"].is_number())
            marks.t_burgers = j["t_burgers"].get<double>();
        if (j.contains("t_damped") && j["t_damped"].is_number())
            marks.t_damped = j["t_damped"].get<double>();
        if (j.contains("moment_bound") && j["moment_bound"].is_number())
            marks.moment_bound = j["moment_bound"].get<double>();
    }
    TimeseriesData data;
    data.t = numeric_column(table, "t");
    data.gradient = numeric_column(table, "max_velocity_gradient");
    data.deviation = numeric_column(table, "sup_equilibrium_deviation");
    data.moment = numeric_column(table, "second_moment");
    render_timeseries_plots(base, scenario, data, marks, written);
    for (const std::string& name : written) std::cout << "wrote " << base << "/" << name << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Radiation hydrodynamics laboratory: symmetrized fluid-radiation runs,\n"
        "singularity certificates, and the iterative existence scheme.\n"
        "Set RHLAB_THREADS to parallelize (default 1; results are identical)."};
    app.require_subcommand(1);

    Overrides sim_opts;
    bool ray_dump = false;
    CLI::App* sim = app.add_subcommand("simulate", "Integrate a scenario to its horizon");
    add_common_options(sim, sim_opts);
    sim->add_flag("--ray-dump", ray_dump, "Write a per-ray line-out CSV at the final time");

    Overrides cert_opts;
    CLI::App* cert = app.add_subcommand("certify", "Evaluate blow-up bounds without running");
    add_common_options(cert, cert_opts);

    Overrides picard_opts;
    CLI::App* picard = app.add_subcommand("picard", "Run the contraction iteration");
    add_common_options(picard, picard_opts);

    Overrides validate_opts;
    std::string export_path;
    CLI::App* validate = app.add_subcommand("validate", "Check initial data and coefficients");
    add_common_options(validate, validate_opts);
    validate->add_option("--export", export_path, "Write the resolved config to this path");

    std::string plot_input;
    std::string plot_out;
    std::string plot_certificate;
    CLI::App* plot = app.add_subcommand("plot", "Re-render plots from a CSV");
    plot->add_option("--input", plot_input, "timeseries.csv or iterations.csv")->required();
    plot->add_option("--out", plot_out, "Output directory (default: alongside the input)");
    plot->add_option("--certificate", plot_certificate,
                     "certificate.json supplying marker times");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (sim->parsed()) return run_simulate(sim_opts, ray_dump);
        if (cert->parsed()) return run_certify(cert_opts);
        if (picard->parsed()) return run_picard(picard_opts);
        if (validate->parsed()) return run_validate(validate_opts, export_path);
        if (plot->parsed()) return run_plot(plot_input, plot_out, plot_certificate);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}
