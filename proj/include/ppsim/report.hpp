#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ppsim/analysis.hpp"
#include "ppsim/protocol.hpp"

namespace ppsim {

// Deterministic fixed-notation formatting so identical runs produce
// byte-identical files.
std::string format_real(double value);

void write_runs_csv(const std::filesystem::path& path, const TrialsResult& trials);

nlohmann::json summary_to_json(const Summary& summary);

void write_summary_json(const std::filesystem::path& path, const Summary& summary);

// Header exactly: gamma,s_max,d_lower,d_exact
void write_curve_csv(const std::filesystem::path& path,
                     const std::vector<SecurityPoint>& curve);

}  // namespace ppsim
