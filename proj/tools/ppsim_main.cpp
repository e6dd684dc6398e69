#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ppsim/analysis.hpp"
#include "ppsim/errors.hpp"
#include "ppsim/report.hpp"
#include "ppsim/scenario.hpp"

namespace {

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
};

void apply_overrides(ppsim::Scenario& scenario, const Overrides& ov) {
    if (ov.seed) scenario.session.rng_seed = *ov.seed;
    if (ov.runs) scenario.n_runs = *ov.runs;
    if (ov.out_dir) scenario.out_dir = *ov.out_dir;
    if (ov.format) scenario.format = *ov.format;
}

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--seed", ov.seed, "Override the scenario RNG seed");
    cmd->add_option("--runs", ov.runs, "Override the number of protocol runs");
    cmd->add_option("--out-dir", ov.out_dir, "Override the output directory");
    cmd->add_option("--format", ov.format, "Report format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

void print_outputs(const ppsim::ScenarioOutputs& out) {
    std::cout << ppsim::summary_to_json(out.summary).dump(2) << '\n';
    for (const auto& file : out.files) std::cout << "wrote " << file.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ping-pong direct-communication protocol simulator"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides run_ov, sweep_ov;

    auto* run_cmd = app.add_subcommand("run", "Execute a scenario config");
    run_cmd->add_option("config", config_path, "Scenario config file")->required();
    add_override_flags(run_cmd, run_ov);

    auto* sweep_cmd = app.add_subcommand("sweep", "Execute a scenario parameter sweep");
    sweep_cmd->add_option("config", config_path, "Scenario config file")->required();
    add_override_flags(sweep_cmd, sweep_ov);

    std::size_t capacity_runs = 10000;
    std::uint64_t capacity_seed = 1;
    auto* cap_cmd =
        app.add_subcommand("compare-capacity", "Bits per EPR pair: one-bit vs dense coding");
    cap_cmd->add_option("--runs", capacity_runs, "Message runs per scheme");
    cap_cmd->add_option("--seed", capacity_seed, "RNG seed");

    int curve_points = 101;
    std::string curve_out = "curve.csv";
    auto* curve_cmd = app.add_subcommand("curve", "Write the gamma/entropy/detection curve");
    curve_cmd->add_option("--points", curve_points, "Number of grid points")
        ->check(CLI::Range(2, 1000000));
    curve_cmd->add_option("--out", curve_out, "Output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            ppsim::Scenario scenario = ppsim::load_scenario(config_path);
            apply_overrides(scenario, run_ov);
            print_outputs(ppsim::run_scenario(scenario));
        } else if (sweep_cmd->parsed()) {
            ppsim::Scenario scenario = ppsim::load_scenario(config_path);
            apply_overrides(scenario, sweep_ov);
            print_outputs(ppsim::run_sweep(scenario));
        } else if (cap_cmd->parsed()) {
            const auto report = ppsim::compare_capacity(capacity_runs, capacity_seed);
            std::cout << nlohmann::json{{"legacy_bits_per_pair", report.legacy_bits_per_pair},
                                        {"improved_bits_per_pair", report.improved_bits_per_pair},
                                        {"ratio", report.ratio}}
                             .dump(2)
                      << '\n';
        } else if (curve_cmd->parsed()) {
            ppsim::write_curve_csv(curve_out, ppsim::gamma_d_curve(curve_points));
            std::cout << "wrote " << curve_out << '\n';
        }
    } catch (const ppsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
