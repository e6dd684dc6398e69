#include "ppsim/scenario.hpp"

#include <fstream>
#include <sstream>

#include "ppsim/analysis.hpp"
#include "ppsim/auth.hpp"
#include "ppsim/errors.hpp"
#include "ppsim/report.hpp"
#include "ppsim/rng.hpp"

namespace ppsim {

namespace {

using SectionMap = std::map<std::string, std::map<std::string, std::string>>;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

SectionMap parse_ini(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path.string());
    SectionMap sections;
    std::string section;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError("bad section header at line " + std::to_string(lineno));
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value at line " + std::to_string(lineno));
        sections[section][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    return sections;
}

double to_real(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid real for " + key + ": " + v);
    }
}

std::uint64_t to_u64(const std::string& v, const std::string& key) {
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw ConfigError("invalid integer for " + key + ": " + v);
    }
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("invalid boolean for " + key + ": " + v);
}

std::vector<double> to_grid(const std::string& v) {
    std::vector<double> grid;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(to_real(trim(item), "grid"));
    if (grid.empty()) throw ConfigError("sweep grid is empty");
    return grid;
}

Basis basis_from_string(const std::string& v) {
    if (v == "Z" || v == "z") return Basis::z();
    if (v == "X" || v == "x") return Basis::x();
    throw ConfigError("unknown basis: " + v);
}

Mat2 named_unitary(const std::string& v) {
    Mat2 u;
    if (v == "X" || v == "x") u << 0, 1, 1, 0;
    else if (v == "Z" || v == "z") u << 1, 0, 0, -1;
    else if (v == "Y" || v == "y") u << 0, cplx(0, -1), cplx(0, 1), 0;
    else throw ConfigError("unknown unitary name: " + v);
    return u;
}

std::string param_or(const std::map<std::string, std::string>& params, const std::string& key,
                     const std::string& fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

// Demo key; real deployments supply auth_key in the config.
const char* kDefaultKeyHex = "00112233445566778899aabbccddeeff";

std::uint64_t point_seed(std::uint64_t scenario_seed, std::size_t index) {
    std::uint64_t mix = scenario_seed ^ (0xa0761d6478bd642fULL * (index + 1));
    return splitmix64(mix);
}

}  // namespace

Scenario load_scenario(const std::filesystem::path& path) {
    const SectionMap sections = parse_ini(path);
    Scenario sc;
    sc.session.auth_key = key_from_hex(kDefaultKeyHex);

    if (auto it = sections.find("session"); it != sections.end()) {
        for (const auto& [key, value] : it->second) {
            if (key == "control_probability") sc.session.control_probability = to_real(value, key);
            else if (key == "initial_bell") sc.session.initial_bell = bell_label_from_string(value);
            else if (key == "auth_key") sc.session.auth_key = key_from_hex(value);
            else if (key == "auth_tag_bits") sc.session.auth_tag_bits = static_cast<int>(to_u64(value, key));
            else if (key == "rng_seed") sc.session.rng_seed = to_u64(value, key);
            else if (key == "legacy_encoding") sc.session.legacy_encoding = to_bool(value, key);
            else if (key == "loss_alarm_threshold") sc.session.loss_alarm_threshold = to_real(value, key);
            else throw ConfigError("unknown session key: " + key);
        }
    }
    if (auto it = sections.find("attack"); it != sections.end()) {
        for (const auto& [key, value] : it->second) {
            if (key == "name") sc.attack_name = value;
            else sc.attack_params[key] = value;
        }
    }
    if (auto it = sections.find("run"); it != sections.end()) {
        for (const auto& [key, value] : it->second) {
            if (key == "n_runs") sc.n_runs = to_u64(value, key);
            else throw ConfigError("unknown run key: " + key);
        }
    }
    if (auto it = sections.find("sweep"); it != sections.end()) {
        for (const auto& [key, value] : it->second) {
            if (key == "parameter") sc.sweep_parameter = value;
            else if (key == "grid") sc.sweep_grid = to_grid(value);
            else throw ConfigError("unknown sweep key: " + key);
        }
    }
    if (auto it = sections.find("output"); it != sections.end()) {
        for (const auto& [key, value] : it->second) {
            if (key == "dir") sc.out_dir = value;
            else if (key == "format") sc.format = value;
            else throw ConfigError("unknown output key: " + key);
        }
    }
    if (sc.n_runs == 0) throw ConfigError("n_runs must be positive");
    if (sc.format != "csv" && sc.format != "json") throw ConfigError("format must be csv or json");
    if (sc.sweep_parameter && sc.sweep_grid.empty())
        throw ConfigError("sweep requires a grid");
    return sc;
}

AttackStrategy build_attack(const std::string& name,
                            const std::map<std::string, std::string>& params) {
    AttackStrategy attack;
    if (name == "no_attack") {
        attack = no_attack();
    } else if (name == "intercept_resend") {
        attack = intercept_resend(basis_from_string(param_or(params, "basis", "Z")));
    } else if (name == "bell_diagonal") {
        BellWeights w;
        if (params.contains("gamma")) {
            const double gamma = to_real(params.at("gamma"), "gamma");
            if (gamma < 0.0 || gamma > 1.0) throw ConfigError("gamma must be in [0,1]");
            w.psi_minus = 1.0 - gamma;
            w.psi_plus = w.phi_plus = w.phi_minus = gamma / 3.0;
        } else {
            w.phi_plus = to_real(param_or(params, "w_phi_plus", "0"), "w_phi_plus");
            w.phi_minus = to_real(param_or(params, "w_phi_minus", "0"), "w_phi_minus");
            w.psi_plus = to_real(param_or(params, "w_psi_plus", "0"), "w_psi_plus");
            w.psi_minus = to_real(param_or(params, "w_psi_minus", "1"), "w_psi_minus");
        }
        const bool measure = to_bool(param_or(params, "measure_return", "true"), "measure_return");
        attack = bell_diagonal_attack(w, measure);
    } else if (name == "mitm_unitary") {
        attack = mitm_unitary(named_unitary(param_or(params, "unitary", "X")));
    } else if (name == "mitm_measure") {
        attack = mitm_measure(basis_from_string(param_or(params, "basis", "Z")));
    } else if (name == "mitm_forge_public") {
        attack = mitm_forge_public(
            static_cast<int>(to_u64(param_or(params, "tag_bits", "32"), "tag_bits")));
    } else if (name == "loss_hiding") {
        std::map<std::string, std::string> inner_params;
        for (const auto& [key, value] : params) {
            if (key.rfind("inner_", 0) == 0) inner_params[key.substr(6)] = value;
        }
        attack = loss_hiding(to_real(param_or(params, "loss_rate", "0"), "loss_rate"),
                             build_attack(param_or(params, "inner", "no_attack"), inner_params));
        return attack;
    } else {
        throw ConfigError("unknown attack: " + name);
    }
    if (params.contains("loss_rate") && name != "loss_hiding") {
        attack = loss_hiding(to_real(params.at("loss_rate"), "loss_rate"), std::move(attack));
    }
    return attack;
}

ScenarioOutputs run_scenario(const Scenario& scenario) {
    const AttackStrategy attack = build_attack(scenario.attack_name, scenario.attack_params);
    const MessageSource source = random_message_source(scenario.session.rng_seed);
    const TrialsResult trials = run_trials(scenario.session, scenario.n_runs, source, attack);

    std::filesystem::create_directories(scenario.out_dir);
    ScenarioOutputs out;
    out.summary = trials.total;

    const auto summary_path = scenario.out_dir / "summary.json";
    write_summary_json(summary_path, trials.total);
    out.files.push_back(summary_path);

    if (scenario.format == "csv") {
        const auto runs_path = scenario.out_dir / "runs.csv";
        write_runs_csv(runs_path, trials);
        out.files.push_back(runs_path);
    }
    return out;
}

ScenarioOutputs run_sweep(const Scenario& scenario) {
    if (!scenario.sweep_parameter) throw ConfigError("scenario has no sweep section");
    const std::string& param = *scenario.sweep_parameter;

    std::filesystem::create_directories(scenario.out_dir);
    ScenarioOutputs out;

    const auto sweep_path = scenario.out_dir / "sweep.csv";
    std::ofstream sweep_csv(sweep_path, std::ios::binary);
    if (!sweep_csv) throw IoError("cannot open for writing: " + sweep_path.string());
    sweep_csv << param
              << ",runs,message_runs,control_runs,detections,detection_rate,"
                 "detection_std_error,losses,loss_rate,bit_errors,bits_per_pair\n";

    for (std::size_t k = 0; k < scenario.sweep_grid.size(); ++k) {
        const double value = scenario.sweep_grid[k];
        Scenario point = scenario;
        point.session.rng_seed = point_seed(scenario.session.rng_seed, k);
        if (param == "gamma") {
            point.attack_params["gamma"] = format_real(value);
        } else if (param == "loss_rate") {
            point.attack_params["loss_rate"] = format_real(value);
        } else if (param == "control_probability") {
            point.session.control_probability = value;
        } else {
            throw ConfigError("unsupported sweep parameter: " + param);
        }

        const AttackStrategy attack = build_attack(point.attack_name, point.attack_params);
        const MessageSource source = random_message_source(point.session.rng_seed);
        const TrialsResult trials = run_trials(point.session, point.n_runs, source, attack);
        const Summary& s = trials.total;
        sweep_csv << format_real(value) << ',' << s.runs << ',' << s.message_runs << ','
                  << s.control_runs << ',' << s.detections << ','
                  << format_real(s.detection_rate) << ',' << format_real(s.detection_std_error)
                  << ',' << s.losses << ',' << format_real(s.loss_rate) << ',' << s.bit_errors
                  << ',' << format_real(s.bits_per_pair) << '\n';
        out.summary = s;
    }
    sweep_csv.close();
    out.files.push_back(sweep_path);

    if (param == "gamma") {
        std::vector<SecurityPoint> curve;
        for (const double gamma : scenario.sweep_grid) {
            SecurityPoint pt;
            pt.gamma = gamma;
            pt.s_max = s_max_bound(gamma);
            pt.d_lower = gamma / 2.0;
            pt.d_exact = detection_probability(rho_max(gamma));
            curve.push_back(pt);
        }
        const auto curve_path = scenario.out_dir / "curve.csv";
        write_curve_csv(curve_path, curve);
        out.files.push_back(curve_path);
    }
    return out;
}

CapacityReport compare_capacity(std::size_t n_runs, std::uint64_t seed) {
    if (n_runs == 0) throw DomainError("n_runs must be positive");
    SessionConfig cfg;
    cfg.control_probability = 0.0;
    cfg.auth_key = key_from_hex(kDefaultKeyHex);
    cfg.rng_seed = seed;

    CapacityReport report;
    const AttackStrategy idle = no_attack();

    cfg.legacy_encoding = true;
    report.legacy_bits_per_pair =
        run_session(cfg, n_runs, random_message_source(seed), idle).summary.bits_per_pair;

    cfg.legacy_encoding = false;
    report.improved_bits_per_pair =
        run_session(cfg, n_runs, random_message_source(seed), idle).summary.bits_per_pair;

    report.ratio = report.improved_bits_per_pair / report.legacy_bits_per_pair;
    return report;
}

}  // namespace ppsim
