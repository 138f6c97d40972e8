// Copyright (c) 2026 rhlab authors.
// SPDX-License-Identifier: MIT

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "rhlab/io.hpp"
#include "rhlab/scenarios.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string output;
};

fs::path temp_root() {
    const auto dir = fs::temp_directory_path() / "rhlab-cli-tests";
    fs::create_directories(dir);
    return dir;
}

CliResult run_cli(const std::string& args, const std::string& tag) {
    const fs::path out_file = temp_root() / (tag + ".log");
    const std::string cmd = std::string(RHLAB_BIN) + " " + args + " > " +
                            out_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult result;
    if (status != -1 && WIFEXITED(status)) result.code = WEXITSTATUS(status);
    std::ifstream in(out_file);
    result.output.assign(std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>());
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("help exits cleanly and lists the subcommands") {
    const auto result = run_cli("--help", "help");
    CHECK(result.code == 0);
    CHECK(result.output.find("simulate") != std::string::npos);
    CHECK(result.output.find("certify") != std::string::npos);
    CHECK(result.output.find("picard") != std::string::npos);
    CHECK(result.output.find("validate") != std::string::npos);
    CHECK(result.output.find("plot") != std::string::npos);
}

TEST_CASE("unknown subcommands and scenarios exit with failure") {
    CHECK(run_cli("frobnicate", "badcmd").code == 1);
    const auto unknown = run_cli("simulate --scenario does-not-exist", "badscenario");
    CHECK(unknown.code == 1);
    CHECK(unknown.output.find("unknown scenario") != std::string::npos);
    CHECK(run_cli("plot", "plot-missing-input").code == 1);
}

TEST_CASE("validate passes a builtin and reports its checks") {
    const auto result = run_cli("validate --scenario lemma31-annulus", "validate-ok");
    CHECK(result.code == 0);
    CHECK(result.output.find("[PASS]") != std::string::npos);
    CHECK(result.output.find("valid") != std::string::npos);
    CHECK(result.output.find("[FAIL]") == std::string::npos);
}

TEST_CASE("validate rejects a leaking annulus loaded from a config file") {
    rhlab::ScenarioConfig cfg = rhlab::find_builtin("lemma31-annulus");
    cfg.density_support = 0.7;
    const fs::path cfg_path = temp_root() / "leaky.cfg";
    rhlab::export_scenario(cfg, cfg_path.string());
    const auto result =
        run_cli("validate --config " + cfg_path.string(), "validate-bad");
    CHECK(result.code == 1);
    CHECK(result.output.find("[FAIL]") != std::string::npos);
    CHECK(result.output.find("annulus-empty") != std::string::npos);
    CHECK(result.output.find("invalid") != std::string::npos);
}

TEST_CASE("validate exports the resolved configuration") {
    const fs::path exported = temp_root() / "exported.cfg";
    const auto result = run_cli(
        "validate --scenario theorem34-moment --export " + exported.string(),
        "validate-export");
    CHECK(result.code == 0);
    REQUIRE(fs::exists(exported));
    const auto map = rhlab::parse_config_file(exported.string());
    CHECK(map.at("scenario.name") == "theorem34-moment");
}

TEST_CASE("certify writes a manifest-covered certificate with the moment bound") {
    const fs::path out = temp_root() / "certify-moment";
    fs::remove_all(out);
    const auto result = run_cli(
        "certify --scenario theorem34-moment --out " + out.string(), "certify");
    CHECK(result.code == 0);
    REQUIRE(fs::exists(out / "certificate.json"));
    REQUIRE(fs::exists(out / "manifest.json"));

    const auto cert = nlohmann::json::parse(slurp(out / "certificate.json"));
    CHECK(cert.at("scenario").get<std::string>() == "theorem34-moment");
    CHECK(cert.at("t_moment").get<double>() ==
          doctest::Approx(1.1816359006036772).epsilon(1e-12));
    CHECK(cert.at("t_critical").get<double>() == doctest::Approx(0.5).epsilon(1e-12));

    const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
    CHECK(manifest.at("algorithm").get<std::string>() == "fnv1a-64");
    char expected[17];
    std::snprintf(expected, sizeof(expected), "%016llx",
                  static_cast<unsigned long long>(
                      rhlab::fnv1a64_file((out / "certificate.json").string())));
    CHECK(manifest.at("files").at("certificate.json").get<std::string>() == expected);
}

TEST_CASE("simulate detects the gradient blow-up and exits with code two") {
    const fs::path out = temp_root() / "simulate-burgers";
    fs::remove_all(out);
    const auto result = run_cli("simulate --scenario theorem36-burgers-1d --cells 100 "
                                "--out " + out.string(),
                                "simulate-burgers");
    CHECK(result.code == 2);
    CHECK(result.output.find("trigger") != std::string::npos);

    REQUIRE(fs::exists(out / "timeseries.csv"));
    const auto table = rhlab::read_csv((out / "timeseries.csv").string());
    CHECK(rhlab::csv_column(table, "t") == 0);
    CHECK_NOTHROW(rhlab::csv_column(table, "max_velocity_gradient"));
    CHECK_NOTHROW(rhlab::csv_column(table, "events"));
    CHECK(table.rows.size() > 10);

    REQUIRE(fs::exists(out / "final.snap"));
    const auto snap = rhlab::read_snapshot((out / "final.snap").string());
    CHECK(snap.grid.nx == 100);
    CHECK(snap.scenario == "theorem36-burgers-1d");

    const auto cert = nlohmann::json::parse(slurp(out / "certificate.json"));
    CHECK(cert.at("t_burgers").get<double>() == doctest::Approx(1.0).epsilon(1e-10));

    REQUIRE(fs::exists(out / "manifest.json"));
    const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
    char expected[17];
    std::snprintf(expected, sizeof(expected), "%016llx",
                  static_cast<unsigned long long>(
                      rhlab::fnv1a64_file((out / "timeseries.csv").string())));
    CHECK(manifest.at("files").at("timeseries.csv").get<std::string>() == expected);
}

TEST_CASE("plot re-renders the simulation figures byte for byte") {
    const fs::path run_dir = temp_root() / "plot-source";
    fs::remove_all(run_dir);
    const auto sim = run_cli("simulate --scenario theorem34-moment --cells 128 --out " +
                                 run_dir.string(),
                             "plot-source-run");
    REQUIRE(sim.code == 0);
    REQUIRE(fs::exists(run_dir / "gradient.svg"));

    const fs::path plot_dir = temp_root() / "plot-rerender";
    fs::remove_all(plot_dir);
    const auto plot = run_cli("plot --input " + (run_dir / "timeseries.csv").string() +
                                  " --certificate " +
                                  (run_dir / "certificate.json").string() + " --out " +
                                  plot_dir.string(),
                              "plot-rerender");
    CHECK(plot.code == 0);
    for (const std::string name : {"gradient.svg", "deviation.svg", "moment.svg"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(run_dir / name));
        REQUIRE(fs::exists(plot_dir / name));
        CHECK(slurp(run_dir / name) == slurp(plot_dir / name));
    }
}

TEST_CASE("picard subcommand writes iterations and re-renderable figures") {
    rhlab::ScenarioConfig cfg = rhlab::find_builtin("picard-contraction");
    cfg.cells = {128, 1, 1};
    cfg.picard_k_max = 4;
    cfg.picard_steps = 8;
    const fs::path cfg_path = temp_root() / "picard-small.cfg";
    rhlab::export_scenario(cfg, cfg_path.string());

    const fs::path out = temp_root() / "picard-small";
    fs::remove_all(out);
    const auto result = run_cli(
        "picard --config " + cfg_path.string() + " --out " + out.string(),
        "picard-small");
    CHECK(result.code == 0);
    CHECK(result.output.find("contraction held") != std::string::npos);

    REQUIRE(fs::exists(out / "iterations.csv"));
    const auto table = rhlab::read_csv((out / "iterations.csv").string());
    CHECK_NOTHROW(rhlab::csv_column(table, "k"));
    CHECK_NOTHROW(rhlab::csv_column(table, "data_diff"));
    CHECK(table.rows.size() == 4);

    REQUIRE(fs::exists(out / "picard.svg"));
    CHECK(slurp(out / "picard.svg").find("mollified data diff") != std::string::npos);

    const fs::path replot = temp_root() / "picard-replot";
    const fs::path replot2 = temp_root() / "picard-replot2";
    fs::remove_all(replot);
    fs::remove_all(replot2);
    const std::string plot_args = "plot --input " + (out / "iterations.csv").string();
    const auto plot = run_cli(plot_args + " --out " + replot.string(), "picard-replot");
    const auto again =
        run_cli(plot_args + " --out " + replot2.string(), "picard-replot2");
    CHECK(plot.code == 0);
    CHECK(again.code == 0);
    REQUIRE(fs::exists(replot / "picard.svg"));
    REQUIRE(fs::exists(replot2 / "picard.svg"));
    const std::string rendered = slurp(replot / "picard.svg");
    CHECK(rendered == slurp(replot2 / "picard.svg"));
    CHECK(rendered.find("fluid + intensity diff") != std::string::npos);
}

TEST_CASE("simulate accepts an exported config through the config flag") {
    rhlab::ScenarioConfig cfg = rhlab::find_builtin("corollary38-damped");
    cfg.cells = {100, 1, 1};
    const fs::path cfg_path = temp_root() / "damped-small.cfg";
    rhlab::export_scenario(cfg, cfg_path.string());
    const fs::path out = temp_root() / "damped-small";
    fs::remove_all(out);
    const auto result = run_cli(
        "simulate --config " + cfg_path.string() + " --out " + out.string(),
        "simulate-config");
    CHECK(result.code == 2);
    const auto cert = nlohmann::json::parse(slurp(out / "certificate.json"));
    CHECK(cert.at("t_damped").get<double>() ==
          doctest::Approx(0.69314718055994529).epsilon(1e-10));
}
