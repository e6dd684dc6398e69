#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ppsim/protocol.hpp"
#include "ppsim/qstate.hpp"

namespace ppsim {

struct SecurityPoint {
    double gamma = 0.0;
    double s_max = 0.0;    // entropy ceiling in bits
    double d_lower = 0.0;  // gamma / 2
    std::optional<double> d_exact;
};

// Per-control-round detection probability of a shared state, with
// equiprobable bases: the weight on the Bell components whose same-basis
// outcomes coincide, d = tr(rho P_phi+) + tr(rho P_phi-)/2 + tr(rho P_psi+)/2.
double detection_probability(const DensityMatrix& rho);

// Entropy ceiling at singlet infidelity gamma:
// -(1-gamma) log2(1-gamma) - gamma log2(gamma/3).
double s_max_bound(double gamma);

// Bell-diagonal state with weight 1-gamma on the singlet and gamma/3 on
// each of the other Bell states; it attains the entropy ceiling.
DensityMatrix rho_max(double gamma);

std::vector<SecurityPoint> gamma_d_curve(int n_points);

struct MiEstimate {
    double bits = 0.0;
    double std_error = 0.0;
    std::size_t samples = 0;
};

// Plug-in mutual information of a 4x4 joint count table (message value vs
// guess value). std_error is the sample standard error of the pointwise
// log-ratio terms.
MiEstimate mutual_information_from_counts(const std::array<std::array<std::uint64_t, 4>, 4>& counts);

// I(sent bits; Eve's guess) over message-mode records carrying a guess.
MiEstimate empirical_mutual_information(const std::vector<RunRecord>& records,
                                        std::size_t min_samples = 100);

// Ensemble Bob's measurement faces when Alice encodes uniform messages on
// a post-attack shared state; its Holevo quantity bounds Eve's information.
Ensemble encoding_ensemble(const DensityMatrix& post_attack);

}  // namespace ppsim
