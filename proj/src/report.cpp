#include "ppsim/report.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ppsim/errors.hpp"

namespace ppsim {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

std::string opt_bits(const std::optional<MessagePair>& m) {
    return m ? to_string(*m) : std::string("-");
}

std::string opt_int(const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string("-");
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void write_runs_csv(const std::filesystem::path& path, const TrialsResult& trials) {
    auto out = open_out(path);
    out << "session,run_index,mode,sent,decoded,eve_guess,control_basis,"
           "alice_outcome,bob_outcome,detected,aborted,loss\n";
    for (std::size_t s = 0; s < trials.sessions.size(); ++s) {
        for (const auto& rec : trials.sessions[s].records) {
            out << s << ',' << rec.run_index << ','
                << (rec.mode == Mode::Control ? "control" : "message") << ','
                << opt_bits(rec.sent_bits) << ',' << opt_bits(rec.decoded_bits) << ','
                << opt_bits(rec.eve_guess) << ','
                << (rec.control_basis ? to_string(*rec.control_basis) : std::string("-")) << ','
                << opt_int(rec.alice_outcome) << ',' << opt_int(rec.bob_outcome) << ','
                << (rec.detected ? 1 : 0) << ',' << (rec.aborted ? 1 : 0) << ','
                << (rec.loss_flag ? 1 : 0) << '\n';
        }
    }
}

nlohmann::json summary_to_json(const Summary& summary) {
    return nlohmann::json{
        {"runs", summary.runs},
        {"message_runs", summary.message_runs},
        {"control_runs", summary.control_runs},
        {"detections", summary.detections},
        {"losses", summary.losses},
        {"auth_failures", summary.auth_failures},
        {"bit_errors", summary.bit_errors},
        {"bits_per_pair", summary.bits_per_pair},
        {"detection_rate", summary.detection_rate},
        {"detection_std_error", summary.detection_std_error},
        {"loss_rate", summary.loss_rate},
        {"loss_alarm", summary.loss_alarm},
        {"aborted", summary.aborted},
    };
}

void write_summary_json(const std::filesystem::path& path, const Summary& summary) {
    auto out = open_out(path);
    out << summary_to_json(summary).dump(2) << '\n';
}

void write_curve_csv(const std::filesystem::path& path,
                     const std::vector<SecurityPoint>& curve) {
    auto out = open_out(path);
    out << "gamma,s_max,d_lower,d_exact\n";
    for (const auto& pt : curve) {
        out << format_real(pt.gamma) << ',' << format_real(pt.s_max) << ','
            << format_real(pt.d_lower) << ','
            << (pt.d_exact ? format_real(*pt.d_exact) : std::string("")) << '\n';
    }
}

}  // namespace ppsim
