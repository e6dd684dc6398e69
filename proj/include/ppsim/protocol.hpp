#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ppsim/adversary.hpp"
#include "ppsim/auth.hpp"
#include "ppsim/codec.hpp"
#include "ppsim/qstate.hpp"

namespace ppsim {

struct SessionConfig {
    double control_probability = 0.5;
    BellLabel initial_bell = BellLabel::PsiMinus;
    std::vector<std::uint8_t> auth_key;
    int auth_tag_bits = 32;
    std::uint64_t rng_seed = 0;
    // One-bit encoding of the original scheme instead of dense coding.
    bool legacy_encoding = false;
    // Alarm when the fraction of voided runs exceeds this.
    double loss_alarm_threshold = 1.0;

    void validate() const;
};

enum class Mode { Message, Control };

struct RunRecord {
    std::size_t run_index = 0;
    Mode mode = Mode::Message;
    std::optional<MessagePair> sent_bits;
    std::optional<MessagePair> decoded_bits;
    std::optional<MessagePair> eve_guess;
    std::optional<BasisTag> control_basis;
    std::optional<int> alice_outcome;
    std::optional<int> bob_outcome;
    bool detected = false;
    bool aborted = false;
    bool loss_flag = false;
};

struct Summary {
    std::size_t runs = 0;
    std::size_t message_runs = 0;
    std::size_t control_runs = 0;
    std::size_t detections = 0;
    std::size_t losses = 0;
    std::size_t auth_failures = 0;
    std::size_t bit_errors = 0;
    double bits_per_pair = 0.0;
    double detection_rate = 0.0;
    double detection_std_error = 0.0;
    double loss_rate = 0.0;
    bool loss_alarm = false;
    bool aborted = false;
};

struct SessionResult {
    std::vector<RunRecord> records;
    Summary summary;
};

using MessageSource = std::function<MessagePair()>;

MessageSource random_message_source(std::uint64_t seed);
MessageSource constant_message_source(MessagePair m);

// Whether ideal same-basis outcomes on this Bell state coincide.
bool expected_coincidence(BellLabel bell, BasisTag basis);

struct ControlOutcome {
    bool detected = false;
    int alice_outcome = 0;
    int bob_outcome = 0;
};

// Alice measures the travel qubit, Bob then measures the home qubit in the
// same basis; Eve is flagged when the coincidence pattern deviates from the
// ideal one for the session's Bell state.
ControlOutcome control_round(const DensityMatrix& shared, const Basis& basis, double rand_alice,
                             double rand_bob, bool expect_coincide);

SessionResult run_session(const SessionConfig& cfg, std::size_t n_runs,
                          const MessageSource& source, const AttackStrategy& attack);

struct TrialsResult {
    std::vector<SessionResult> sessions;
    Summary total;
};

// A session aborts at the first detection, so rate estimation restarts
// fresh sessions (fresh RNG streams, same key) until total_runs protocol
// rounds have executed. Per-session seeds derive from cfg.rng_seed and the
// session index.
TrialsResult run_trials(const SessionConfig& cfg, std::size_t total_runs,
                        const MessageSource& source, const AttackStrategy& attack);

// Flatten the records of all sessions, in session order.
std::vector<RunRecord> all_records(const TrialsResult& trials);

}  // namespace ppsim
