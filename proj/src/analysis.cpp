#include "ppsim/analysis.hpp"

#include <cmath>

#include "ppsim/codec.hpp"
#include "ppsim/errors.hpp"

namespace ppsim {

double detection_probability(const DensityMatrix& rho) {
    const double p_phi_plus = (bell_projector(BellLabel::PhiPlus) * rho.m).trace().real();
    const double p_phi_minus = (bell_projector(BellLabel::PhiMinus) * rho.m).trace().real();
    const double p_psi_plus = (bell_projector(BellLabel::PsiPlus) * rho.m).trace().real();
    return p_phi_plus + 0.5 * p_phi_minus + 0.5 * p_psi_plus;
}

double s_max_bound(double gamma) {
    if (gamma < 0.0 || gamma > 1.0) throw DomainError("gamma must be in [0,1]");
    double s = 0.0;
    if (gamma < 1.0) s -= (1.0 - gamma) * std::log2(1.0 - gamma);
    if (gamma > 0.0) s -= gamma * std::log2(gamma / 3.0);
    return s;
}

DensityMatrix rho_max(double gamma) {
    if (gamma < 0.0 || gamma > 1.0) throw DomainError("gamma must be in [0,1]");
    DensityMatrix rho;
    rho.m = (1.0 - gamma) * bell_projector(BellLabel::PsiMinus) +
            (gamma / 3.0) * (bell_projector(BellLabel::PsiPlus) +
                             bell_projector(BellLabel::PhiPlus) +
                             bell_projector(BellLabel::PhiMinus));
    return rho;
}

std::vector<SecurityPoint> gamma_d_curve(int n_points) {
    if (n_points < 2) throw DomainError("curve needs at least 2 points");
    std::vector<SecurityPoint> curve;
    curve.reserve(static_cast<std::size_t>(n_points));
    for (int k = 0; k < n_points; ++k) {
        SecurityPoint pt;
        pt.gamma = static_cast<double>(k) / static_cast<double>(n_points - 1);
        pt.s_max = s_max_bound(pt.gamma);
        pt.d_lower = pt.gamma / 2.0;
        pt.d_exact = detection_probability(rho_max(pt.gamma));
        curve.push_back(pt);
    }
    return curve;
}

MiEstimate mutual_information_from_counts(
    const std::array<std::array<std::uint64_t, 4>, 4>& counts) {
    std::uint64_t n = 0;
    std::array<std::uint64_t, 4> row{}, col{};
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            row[static_cast<std::size_t>(x)] += counts[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
            col[static_cast<std::size_t>(y)] += counts[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
            n += counts[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
        }
    if (n == 0) throw InsufficientDataError("no samples for mutual information");

    const double dn = static_cast<double>(n);
    double mi = 0.0;
    double second_moment = 0.0;
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            const auto c = counts[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
            if (c == 0) continue;
            const double pxy = static_cast<double>(c) / dn;
            const double px = static_cast<double>(row[static_cast<std::size_t>(x)]) / dn;
            const double py = static_cast<double>(col[static_cast<std::size_t>(y)]) / dn;
            const double term = std::log2(pxy / (px * py));
            mi += pxy * term;
            second_moment += pxy * term * term;
        }
    MiEstimate est;
    est.bits = mi;
    est.samples = n;
    est.std_error = std::sqrt(std::max(0.0, second_moment - mi * mi) / dn);
    return est;
}

MiEstimate empirical_mutual_information(const std::vector<RunRecord>& records,
                                        std::size_t min_samples) {
    std::array<std::array<std::uint64_t, 4>, 4> counts{};
    std::size_t n = 0;
    for (const auto& rec : records) {
        if (rec.mode != Mode::Message || !rec.sent_bits || !rec.eve_guess) continue;
        ++counts[static_cast<std::size_t>(rec.sent_bits->index())]
                [static_cast<std::size_t>(rec.eve_guess->index())];
        ++n;
    }
    if (n < min_samples) {
        throw InsufficientDataError("mutual information needs at least " +
                                    std::to_string(min_samples) + " samples, got " +
                                    std::to_string(n));
    }
    return mutual_information_from_counts(counts);
}

Ensemble encoding_ensemble(const DensityMatrix& post_attack) {
    Ensemble e;
    for (int idx = 0; idx < 4; ++idx) {
        e.members.emplace_back(0.25, encode(MessagePair::from_index(idx), post_attack));
    }
    return e;
}

}  // namespace ppsim
