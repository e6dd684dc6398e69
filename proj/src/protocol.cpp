#include "ppsim/protocol.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "ppsim/errors.hpp"
#include "ppsim/rng.hpp"

namespace ppsim {

namespace {

// RNG stream indices under the session seed.
enum Stream : std::uint64_t {
    kModeCoin = 0,
    kBasisChoice = 1,
    kMeasurement = 2,
    kAttack = 3,
};

std::string control_payload(BasisTag basis, int outcome, std::size_t seq) {
    return "ctrl basis=" + to_string(basis) + " outcome=" + std::to_string(outcome) +
           " seq=" + std::to_string(seq);
}

std::string verdict_payload(bool detected, std::size_t seq) {
    return std::string("verdict detected=") + (detected ? "1" : "0") +
           " seq=" + std::to_string(seq);
}

std::string ack_payload(std::size_t seq) { return "ack seq=" + std::to_string(seq); }

// Legacy one-bit decode table: label -> bit, defined by the action of the
// two legacy unitaries on the initial state; unreachable labels decode to 0.
std::array<int, 4> legacy_decode_table(BellLabel initial) {
    std::array<int, 4> table{0, 0, 0, 0};
    for (int j = 0; j < 2; ++j) {
        const StateVector encoded = legacy_encode(j, bell_state(initial));
        for (std::size_t k = 0; k < kBellOrder.size(); ++k) {
            const Vec4 v = bell_state(kBellOrder[k]).amps;
            if (std::norm(v.dot(encoded.amps)) > 0.5) table[k] = j;
        }
    }
    return table;
}

int label_index(BellLabel label) {
    for (std::size_t k = 0; k < kBellOrder.size(); ++k)
        if (kBellOrder[k] == label) return static_cast<int>(k);
    return 0;
}

}  // namespace

void SessionConfig::validate() const {
    if (control_probability < 0.0 || control_probability > 1.0)
        throw ConfigError("control_probability must be in [0,1]");
    if (auth_tag_bits < 8) throw ConfigError("auth_tag_bits must be at least 8");
    if (auth_key.empty()) throw ConfigError("auth_key must be nonempty");
    if (loss_alarm_threshold < 0.0 || loss_alarm_threshold > 1.0)
        throw ConfigError("loss_alarm_threshold must be in [0,1]");
}

MessageSource random_message_source(std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(derive_stream(seed, 4));
    return [rng]() {
        const auto bits = (*rng)();
        return MessagePair{static_cast<int>(bits & 1), static_cast<int>((bits >> 1) & 1)};
    };
}

MessageSource constant_message_source(MessagePair m) {
    return [m]() { return m; };
}

bool expected_coincidence(BellLabel bell, BasisTag basis) {
    switch (bell) {
        case BellLabel::PhiPlus: return true;
        case BellLabel::PhiMinus: return basis == BasisTag::Z;
        case BellLabel::PsiPlus: return basis == BasisTag::X;
        case BellLabel::PsiMinus: return false;
    }
    return false;
}

ControlOutcome control_round(const DensityMatrix& shared, const Basis& basis, double rand_alice,
                             double rand_bob, bool expect_coincide) {
    auto [alice_outcome, after_alice] = measure_qubit(shared, Qubit::Travel, basis, rand_alice);
    auto [bob_outcome, after_bob] = measure_qubit(after_alice, Qubit::Home, basis, rand_bob);
    const bool coincide = alice_outcome == bob_outcome;
    return {coincide != expect_coincide, alice_outcome, bob_outcome};
}

SessionResult run_session(const SessionConfig& cfg, std::size_t n_runs,
                          const MessageSource& source, const AttackStrategy& attack) {
    cfg.validate();
    validate_channel(attack.travel_choi_b_to_a, attack.name);

    auto coin_rng = derive_stream(cfg.rng_seed, kModeCoin);
    auto basis_rng = derive_stream(cfg.rng_seed, kBasisChoice);
    auto meas_rng = derive_stream(cfg.rng_seed, kMeasurement);
    auto attack_rng = derive_stream(cfg.rng_seed, kAttack);

    const auto dense_table = decode_table_for(cfg.initial_bell);
    const auto legacy_table = legacy_decode_table(cfg.initial_bell);
    const int bits_per_run = cfg.legacy_encoding ? 1 : 2;

    SessionResult result;
    Summary& sum = result.summary;

    auto exchange = [&](PublicMessage msg) {
        msg.tag = authenticate(msg.body, cfg.auth_key, cfg.auth_tag_bits);
        attack.on_public(msg, attack_rng);
        return verify(msg, cfg.auth_key, cfg.auth_tag_bits);
    };

    for (std::size_t run = 0; run < n_runs; ++run) {
        RunRecord rec;
        rec.run_index = run;
        ++sum.runs;

        DensityMatrix state = DensityMatrix::pure(bell_state(cfg.initial_bell));
        EveRunState eve;

        if (!attack.on_b_to_a(state, eve, attack_rng)) {
            rec.loss_flag = true;
            ++sum.losses;
            result.records.push_back(rec);
            continue;
        }

        const bool control = uniform01(coin_rng) < cfg.control_probability;
        if (control) {
            rec.mode = Mode::Control;
            ++sum.control_runs;
            const BasisTag tag = (basis_rng() & 1) ? BasisTag::X : BasisTag::Z;
            const Basis basis = Basis::from_tag(tag);
            rec.control_basis = tag;

            auto [alice_outcome, after_alice] =
                measure_qubit(state, Qubit::Travel, basis, uniform01(meas_rng));
            rec.alice_outcome = alice_outcome;

            PublicMessage announce{PublicMessage::Sender::Alice,
                                   control_payload(tag, alice_outcome, run), 0};
            if (!exchange(announce)) {
                ++sum.auth_failures;
                rec.aborted = true;
                result.records.push_back(rec);
                sum.aborted = true;
                break;
            }

            auto [bob_outcome, after_bob] =
                measure_qubit(after_alice, Qubit::Home, basis, uniform01(meas_rng));
            rec.bob_outcome = bob_outcome;

            const bool coincide = alice_outcome == bob_outcome;
            rec.detected = coincide != expected_coincidence(cfg.initial_bell, tag);

            PublicMessage verdict{PublicMessage::Sender::Bob,
                                  verdict_payload(rec.detected, run), 0};
            if (!exchange(verdict)) {
                ++sum.auth_failures;
                rec.aborted = true;
                result.records.push_back(rec);
                sum.aborted = true;
                break;
            }

            if (rec.detected) {
                ++sum.detections;
                rec.aborted = true;
                result.records.push_back(rec);
                sum.aborted = true;
                break;
            }
            result.records.push_back(rec);
        } else {
            rec.mode = Mode::Message;
            ++sum.message_runs;
            MessagePair sent = source();
            if (cfg.legacy_encoding) {
                sent.i = 0;
                state = legacy_encode(sent.j, state);
            } else {
                state = encode(sent, state);
            }
            rec.sent_bits = sent;

            attack.on_a_to_b(state, eve, attack_rng);
            if (eve.guess) rec.eve_guess = eve.guess;

            auto [label, post] = bell_measure(state, uniform01(meas_rng));
            MessagePair decoded = cfg.legacy_encoding
                                      ? MessagePair{0, legacy_table[static_cast<std::size_t>(
                                                           label_index(label))]}
                                      : decode_with(dense_table, label);
            rec.decoded_bits = decoded;
            sum.bit_errors += static_cast<std::size_t>(
                cfg.legacy_encoding ? (sent.j != decoded.j ? 1 : 0) : bit_distance(sent, decoded));

            PublicMessage ack{PublicMessage::Sender::Bob, ack_payload(run), 0};
            if (!exchange(ack)) {
                ++sum.auth_failures;
                rec.aborted = true;
                result.records.push_back(rec);
                sum.aborted = true;
                break;
            }
            result.records.push_back(rec);
        }
    }

    if (sum.message_runs > 0) {
        const double total_bits = static_cast<double>(bits_per_run * sum.message_runs);
        sum.bits_per_pair =
            (total_bits - static_cast<double>(sum.bit_errors)) / static_cast<double>(sum.message_runs);
    }
    if (sum.control_runs > 0) {
        const double n = static_cast<double>(sum.control_runs);
        sum.detection_rate = static_cast<double>(sum.detections) / n;
        sum.detection_std_error =
            std::sqrt(std::max(0.0, sum.detection_rate * (1.0 - sum.detection_rate) / n));
    }
    if (sum.runs > 0) {
        sum.loss_rate = static_cast<double>(sum.losses) / static_cast<double>(sum.runs);
        sum.loss_alarm = sum.loss_rate > cfg.loss_alarm_threshold;
    }
    return result;
}

TrialsResult run_trials(const SessionConfig& cfg, std::size_t total_runs,
                        const MessageSource& source, const AttackStrategy& attack) {
    TrialsResult trials;
    Summary& total = trials.total;
    std::size_t remaining = total_runs;
    std::size_t session_index = 0;
    bool alarm = false;

    while (remaining > 0) {
        SessionConfig session_cfg = cfg;
        std::uint64_t mix = cfg.rng_seed ^ (0xd1342543de82ef95ULL * (session_index + 1));
        session_cfg.rng_seed = splitmix64(mix);
        SessionResult res = run_session(session_cfg, remaining, source, attack);

        remaining -= res.summary.runs;
        total.runs += res.summary.runs;
        total.message_runs += res.summary.message_runs;
        total.control_runs += res.summary.control_runs;
        total.detections += res.summary.detections;
        total.losses += res.summary.losses;
        total.auth_failures += res.summary.auth_failures;
        total.bit_errors += res.summary.bit_errors;
        alarm = alarm || res.summary.loss_alarm;
        trials.sessions.push_back(std::move(res));
        ++session_index;
    }

    const int bits_per_run = cfg.legacy_encoding ? 1 : 2;
    if (total.message_runs > 0) {
        const double total_bits = static_cast<double>(bits_per_run) *
                                  static_cast<double>(total.message_runs);
        total.bits_per_pair = (total_bits - static_cast<double>(total.bit_errors)) /
                              static_cast<double>(total.message_runs);
    }
    if (total.control_runs > 0) {
        const double n = static_cast<double>(total.control_runs);
        total.detection_rate = static_cast<double>(total.detections) / n;
        total.detection_std_error =
            std::sqrt(std::max(0.0, total.detection_rate * (1.0 - total.detection_rate) / n));
    }
    if (total.runs > 0) {
        total.loss_rate = static_cast<double>(total.losses) / static_cast<double>(total.runs);
        total.loss_alarm = alarm || total.loss_rate > cfg.loss_alarm_threshold;
    }
    total.aborted = !trials.sessions.empty() && trials.sessions.back().summary.aborted;
    return trials;
}

std::vector<RunRecord> all_records(const TrialsResult& trials) {
    std::vector<RunRecord> out;
    for (const auto& session : trials.sessions) {
        out.insert(out.end(), session.records.begin(), session.records.end());
    }
    return out;
}

}  // namespace ppsim
