#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ppsim/auth.hpp"
#include "ppsim/codec.hpp"
#include "ppsim/qstate.hpp"

namespace ppsim {

// Per-run adversary bookkeeping: what Eve measured, which Pauli she
// applied, and her reconstruction of Alice's message.
struct EveRunState {
    std::optional<int> first_outcome;
    std::optional<int> pauli_index;
    std::optional<MessagePair> guess;
    bool caused_loss = false;
};

// An attack is three hooks (one per channel leg plus the public channel)
// and the Choi matrix of its average first-leg map for validity checks.
// Hooks mutate the shared two-qubit state in place; on_b_to_a returns
// false when the travel qubit is withheld.
struct AttackStrategy {
    std::string name;
    std::function<bool(DensityMatrix&, EveRunState&, std::mt19937_64&)> on_b_to_a;
    std::function<void(DensityMatrix&, EveRunState&, std::mt19937_64&)> on_a_to_b;
    std::function<void(PublicMessage&, std::mt19937_64&)> on_public;
    Mat4 travel_choi_b_to_a;        // Choi of the average B->A travel-qubit map
    double nominal_gamma = 0.0;     // singlet infidelity this attack induces
    bool produces_guess = false;
};

struct BellWeights {
    double phi_plus = 0.0;
    double phi_minus = 0.0;
    double psi_plus = 0.0;
    double psi_minus = 1.0;
};

// Choi matrix of sum_k p_k K_k . K_k^dagger on one qubit.
Mat4 choi_from_kraus(const std::vector<Mat2>& kraus, const std::vector<double>& probs);

// Throws ChannelError unless the Choi matrix is PSD within tolerance.
void validate_channel(const Mat4& choi, const std::string& name);

AttackStrategy no_attack();

// Measure the travel qubit in `basis` on both legs; resend the eigenstate.
AttackStrategy intercept_resend(const Basis& basis);

// Pauli channel on the first leg turning the singlet into the Bell-diagonal
// state with the given weights. When measure_return_leg is set, Eve also
// measures the returning qubit in B_z and forms a guess from the outcome.
AttackStrategy bell_diagonal_attack(const BellWeights& weights, bool measure_return_leg = true);

// Tamper on the return leg only.
AttackStrategy mitm_unitary(const Mat2& u);
AttackStrategy mitm_measure(const Basis& basis);
// Rewrite control-mode announcements without knowing the key; the tag
// length is public protocol information.
AttackStrategy mitm_forge_public(int tag_bits = 32);

// Withhold the travel qubit with probability loss_rate, otherwise delegate.
AttackStrategy loss_hiding(double loss_rate, AttackStrategy inner);

}  // namespace ppsim
