#include "ppsim/adversary.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <memory>
#include <utility>

#include "ppsim/errors.hpp"
#include "ppsim/rng.hpp"

namespace ppsim {

namespace {

Mat2 unit_matrix(int i, int j) {
    Mat2 e = Mat2::Zero();
    e(i, j) = 1.0;
    return e;
}

Mat4 identity_choi() { return choi_from_kraus({Mat2::Identity()}, {1.0}); }

AttackStrategy passthrough_base(std::string name) {
    AttackStrategy a;
    a.name = std::move(name);
    a.on_b_to_a = [](DensityMatrix&, EveRunState&, std::mt19937_64&) { return true; };
    a.on_a_to_b = [](DensityMatrix&, EveRunState&, std::mt19937_64&) {};
    a.on_public = [](PublicMessage&, std::mt19937_64&) {};
    a.travel_choi_b_to_a = identity_choi();
    return a;
}

// Measure the travel qubit in `basis`, collapsing the shared state.
int sample_travel_measurement(DensityMatrix& state, const Basis& basis, std::mt19937_64& rng) {
    auto [outcome, post] = measure_qubit(state, Qubit::Travel, basis, uniform01(rng));
    state = post;
    return outcome;
}

}  // namespace

Mat4 choi_from_kraus(const std::vector<Mat2>& kraus, const std::vector<double>& probs) {
    if (kraus.size() != probs.size()) throw ChannelError("kraus/probability size mismatch");
    Mat4 choi = Mat4::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            Mat2 mapped = Mat2::Zero();
            for (std::size_t k = 0; k < kraus.size(); ++k) {
                mapped += probs[k] * kraus[k] * unit_matrix(i, j) * kraus[k].adjoint();
            }
            choi += kron2(unit_matrix(i, j), mapped);
        }
    return choi;
}

void validate_channel(const Mat4& choi, const std::string& name) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(choi, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
        throw ChannelError("attack '" + name + "' first-leg map is not completely positive");
    }
}

AttackStrategy no_attack() { return passthrough_base("no_attack"); }

AttackStrategy intercept_resend(const Basis& basis) {
    AttackStrategy a = passthrough_base("intercept_resend_" + to_string(basis.tag));
    a.produces_guess = true;
    a.nominal_gamma = 0.5;
    a.travel_choi_b_to_a = choi_from_kraus({basis.proj0, basis.proj1}, {1.0, 1.0});

    const BasisTag tag = basis.tag;
    a.on_b_to_a = [basis](DensityMatrix& state, EveRunState& eve, std::mt19937_64& rng) {
        eve.first_outcome = sample_travel_measurement(state, basis, rng);
        return true;
    };
    a.on_a_to_b = [basis, tag](DensityMatrix& state, EveRunState& eve, std::mt19937_64& rng) {
        const int second = sample_travel_measurement(state, basis, rng);
        const int flipped = eve.first_outcome ? (*eve.first_outcome ^ second) : 0;
        const int filler = static_cast<int>(rng() & 1);
        // The encoding flips the Z eigenstate iff bit i is set and the X
        // eigenstate iff bit j is set, so one bit is read off exactly.
        MessagePair guess;
        if (tag == BasisTag::Z) {
            guess.i = flipped;
            guess.j = filler;
        } else {
            guess.i = filler;
            guess.j = flipped;
        }
        eve.guess = guess;
    };
    return a;
}

AttackStrategy bell_diagonal_attack(const BellWeights& weights, bool measure_return_leg) {
    const double sum =
        weights.phi_plus + weights.phi_minus + weights.psi_plus + weights.psi_minus;
    if (weights.phi_plus < 0 || weights.phi_minus < 0 || weights.psi_plus < 0 ||
        weights.psi_minus < 0 || std::abs(sum - 1.0) > kStructuralTol) {
        throw InvalidDistributionError("Bell weights must be a probability distribution");
    }

    // Travel-qubit Pauli that maps the singlet onto each Bell state, keyed
    // by message index: 00 -> psi_minus, 01 -> psi_plus, 10 -> phi_minus,
    // 11 -> phi_plus.
    const std::vector<double> probs{weights.psi_minus, weights.psi_plus, weights.phi_minus,
                                    weights.phi_plus};
    std::vector<Mat2> kraus;
    for (int k = 0; k < 4; ++k) kraus.push_back(encoding_matrix(MessagePair::from_index(k)));

    AttackStrategy a = passthrough_base("bell_diagonal");
    a.nominal_gamma = 1.0 - weights.psi_minus;
    a.produces_guess = measure_return_leg;
    a.travel_choi_b_to_a = choi_from_kraus(kraus, probs);

    a.on_b_to_a = [probs, kraus](DensityMatrix& state, EveRunState& eve, std::mt19937_64& rng) {
        const double u = uniform01(rng);
        double acc = 0.0;
        int pick = static_cast<int>(probs.size()) - 1;
        for (std::size_t k = 0; k < probs.size(); ++k) {
            acc += probs[k];
            if (u < acc) {
                pick = static_cast<int>(k);
                break;
            }
        }
        state = apply_on_travel(kraus[static_cast<std::size_t>(pick)], state);
        eve.pauli_index = pick;
        return true;
    };
    if (measure_return_leg) {
        a.on_a_to_b = [](DensityMatrix& state, EveRunState& eve, std::mt19937_64& rng) {
            const int outcome = sample_travel_measurement(state, Basis::z(), rng);
            eve.guess = MessagePair{outcome, static_cast<int>(rng() & 1)};
        };
    }
    return a;
}

AttackStrategy mitm_unitary(const Mat2& u) {
    require_unitary(u);
    AttackStrategy a = passthrough_base("mitm_unitary");
    a.on_a_to_b = [u](DensityMatrix& state, EveRunState&, std::mt19937_64&) {
        state = apply_on_travel(u, state);
    };
    return a;
}

AttackStrategy mitm_measure(const Basis& basis) {
    AttackStrategy a = passthrough_base("mitm_measure_" + to_string(basis.tag));
    a.on_a_to_b = [basis](DensityMatrix& state, EveRunState&, std::mt19937_64& rng) {
        sample_travel_measurement(state, basis, rng);
    };
    return a;
}

AttackStrategy mitm_forge_public(int tag_bits) {
    AttackStrategy a = passthrough_base("mitm_forge_public");
    a.on_public = [tag_bits](PublicMessage& msg, std::mt19937_64& rng) {
        if (msg.sender != PublicMessage::Sender::Alice) return;
        const auto pos = msg.body.find("outcome=");
        if (pos == std::string::npos) return;
        // Flip the announced outcome and guess a fresh tag; the tag length
        // is public protocol information, the key is not.
        const std::size_t digit = pos + 8;
        msg.body[digit] = msg.body[digit] == '0' ? '1' : '0';
        msg.tag = rng() & ((tag_bits >= 64) ? ~0ULL : ((1ULL << tag_bits) - 1));
    };
    return a;
}

AttackStrategy loss_hiding(double loss_rate, AttackStrategy inner) {
    if (loss_rate < 0.0 || loss_rate > 1.0) throw DomainError("loss_rate must be in [0,1]");
    AttackStrategy a;
    a.name = "loss_hiding(" + inner.name + ")";
    a.nominal_gamma = inner.nominal_gamma;
    a.produces_guess = inner.produces_guess;
    // Trace-nonincreasing: the delivered fraction carries the inner map.
    a.travel_choi_b_to_a = (1.0 - loss_rate) * inner.travel_choi_b_to_a;

    auto shared = std::make_shared<AttackStrategy>(std::move(inner));
    a.on_b_to_a = [loss_rate, shared](DensityMatrix& state, EveRunState& eve,
                                      std::mt19937_64& rng) {
        if (uniform01(rng) < loss_rate) {
            eve.caused_loss = true;
            return false;
        }
        return shared->on_b_to_a(state, eve, rng);
    };
    a.on_a_to_b = [shared](DensityMatrix& state, EveRunState& eve, std::mt19937_64& rng) {
        shared->on_a_to_b(state, eve, rng);
    };
    a.on_public = [shared](PublicMessage& msg, std::mt19937_64& rng) {
        shared->on_public(msg, rng);
    };
    return a;
}

}  // namespace ppsim
