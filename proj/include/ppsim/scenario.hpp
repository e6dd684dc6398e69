#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppsim/adversary.hpp"
#include "ppsim/protocol.hpp"

namespace ppsim {

struct Scenario {
    SessionConfig session;
    std::string attack_name = "no_attack";
    std::map<std::string, std::string> attack_params;
    std::size_t n_runs = 1000;
    std::optional<std::string> sweep_parameter;
    std::vector<double> sweep_grid;
    std::filesystem::path out_dir = ".";
    std::string format = "csv";  // csv emits per-run records, json only the summary
};

// Flat INI-style config: [section] headers, key = value lines, # comments.
Scenario load_scenario(const std::filesystem::path& path);

// Construct an attack by name with key-value parameters. A loss_rate
// parameter wraps any attack in the loss-hiding strategy.
AttackStrategy build_attack(const std::string& name,
                            const std::map<std::string, std::string>& params);

struct ScenarioOutputs {
    Summary summary;
    std::vector<std::filesystem::path> files;
};

ScenarioOutputs run_scenario(const Scenario& scenario);
ScenarioOutputs run_sweep(const Scenario& scenario);

struct CapacityReport {
    double legacy_bits_per_pair = 0.0;
    double improved_bits_per_pair = 0.0;
    double ratio = 0.0;
};

// Same number of noiseless message runs under the one-bit and the
// dense-coding scheme.
CapacityReport compare_capacity(std::size_t n_runs, std::uint64_t seed);

}  // namespace ppsim
