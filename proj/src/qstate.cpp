#include "ppsim/qstate.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace ppsim {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

std::string to_string(BellLabel label) {
    switch (label) {
        case BellLabel::PhiPlus: return "phi_plus";
        case BellLabel::PhiMinus: return "phi_minus";
        case BellLabel::PsiPlus: return "psi_plus";
        case BellLabel::PsiMinus: return "psi_minus";
    }
    return "?";
}

BellLabel bell_label_from_string(const std::string& name) {
    if (name == "phi_plus") return BellLabel::PhiPlus;
    if (name == "phi_minus") return BellLabel::PhiMinus;
    if (name == "psi_plus") return BellLabel::PsiPlus;
    if (name == "psi_minus") return BellLabel::PsiMinus;
    throw DomainError("unknown Bell label: " + name);
}

std::string to_string(BasisTag tag) { return tag == BasisTag::Z ? "Z" : "X"; }

Basis Basis::z() {
    Basis b;
    b.tag = BasisTag::Z;
    b.proj0 << 1, 0, 0, 0;
    b.proj1 << 0, 0, 0, 1;
    return b;
}

Basis Basis::x() {
    Basis b;
    b.tag = BasisTag::X;
    b.proj0 << 0.5, 0.5, 0.5, 0.5;
    b.proj1 << 0.5, -0.5, -0.5, 0.5;
    return b;
}

Basis Basis::from_tag(BasisTag tag) { return tag == BasisTag::Z ? z() : x(); }

void StateVector::validate() const {
    if (std::abs(amps.squaredNorm() - 1.0) > kStructuralTol) {
        throw DomainError("state vector is not normalized");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    DensityMatrix rho;
    rho.m = psi.amps * psi.amps.adjoint();
    return rho;
}

void DensityMatrix::validate() const {
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kStructuralTol) {
        throw DomainError("density matrix is not Hermitian");
    }
    if (std::abs(m.trace().real() - 1.0) > kStructuralTol ||
        std::abs(m.trace().imag()) > kStructuralTol) {
        throw DomainError("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Mat4> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
        throw DomainError("density matrix is not positive semidefinite");
    }
}

void Ensemble::validate() const {
    double total = 0.0;
    for (const auto& [p, rho] : members) {
        if (p < 0.0 || p > 1.0) throw InvalidDistributionError("ensemble probability out of [0,1]");
        total += p;
        rho.validate();
    }
    if (std::abs(total - 1.0) > kStructuralTol) {
        throw InvalidDistributionError("ensemble probabilities do not sum to 1");
    }
}

DensityMatrix Ensemble::average() const {
    DensityMatrix avg;
    avg.m.setZero();
    for (const auto& [p, rho] : members) avg.m += p * rho.m;
    return avg;
}

Mat4 kron2(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Mat4 embed_on(const Mat2& op, Qubit which) {
    return which == Qubit::Home ? kron2(op, Mat2::Identity()) : kron2(Mat2::Identity(), op);
}

StateVector bell_state(BellLabel label) {
    StateVector s;
    switch (label) {
        case BellLabel::PhiPlus:  s.amps << kInvSqrt2, 0, 0, kInvSqrt2; break;
        case BellLabel::PhiMinus: s.amps << kInvSqrt2, 0, 0, -kInvSqrt2; break;
        case BellLabel::PsiPlus:  s.amps << 0, kInvSqrt2, kInvSqrt2, 0; break;
        case BellLabel::PsiMinus: s.amps << 0, kInvSqrt2, -kInvSqrt2, 0; break;
    }
    return s;
}

Mat4 bell_projector(BellLabel label) {
    const Vec4 v = bell_state(label).amps;
    return v * v.adjoint();
}

StateVector canonical_phase(StateVector s) {
    for (int i = 0; i < 4; ++i) {
        if (std::abs(s.amps(i)) > kBranchFloor) {
            s.amps *= std::conj(s.amps(i)) / std::abs(s.amps(i));
            break;
        }
    }
    return s;
}

void require_unitary(const Mat2& u) {
    if ((u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff() > kPsdTol) {
        throw NonUnitaryError("operator is not unitary");
    }
}

StateVector apply_on_travel(const Mat2& u, const StateVector& s) {
    require_unitary(u);
    StateVector out;
    out.amps = embed_on(u, Qubit::Travel) * s.amps;
    return out;
}

DensityMatrix apply_on_travel(const Mat2& u, const DensityMatrix& s) {
    require_unitary(u);
    const Mat4 lifted = embed_on(u, Qubit::Travel);
    DensityMatrix out;
    out.m = lifted * s.m * lifted.adjoint();
    return out;
}

std::pair<int, StateVector> measure_qubit(const StateVector& s, Qubit which,
                                          const Basis& b, double rand) {
    const Mat4 p0 = embed_on(b.proj0, which);
    const double prob0 = s.amps.dot(p0 * s.amps).real();
    const int outcome = rand < prob0 ? 0 : 1;
    const Mat4 proj = outcome == 0 ? p0 : embed_on(b.proj1, which);
    Vec4 branch = proj * s.amps;
    const double norm = branch.norm();
    if (norm < kBranchFloor) throw DegenerateStateError("projected branch has vanishing norm");
    StateVector post;
    post.amps = branch / norm;
    return {outcome, post};
}

std::pair<int, DensityMatrix> measure_qubit(const DensityMatrix& s, Qubit which,
                                            const Basis& b, double rand) {
    const Mat4 p0 = embed_on(b.proj0, which);
    const double prob0 = (p0 * s.m).trace().real();
    const int outcome = rand < prob0 ? 0 : 1;
    const Mat4 proj = outcome == 0 ? p0 : embed_on(b.proj1, which);
    Mat4 branch = proj * s.m * proj;
    const double weight = branch.trace().real();
    if (weight < kBranchFloor) throw DegenerateStateError("projected branch has vanishing weight");
    DensityMatrix post;
    post.m = branch / weight;
    return {outcome, post};
}

std::pair<BellLabel, StateVector> bell_measure(const StateVector& s, double rand) {
    double acc = 0.0;
    for (std::size_t k = 0; k < kBellOrder.size(); ++k) {
        const BellLabel label = kBellOrder[k];
        const Vec4 v = bell_state(label).amps;
        const cplx overlap = v.dot(s.amps);
        const double p = std::norm(overlap);
        acc += p;
        if (rand < acc || k + 1 == kBellOrder.size()) {
            StateVector post = bell_state(label);
            return {label, post};
        }
    }
    return {BellLabel::PsiMinus, bell_state(BellLabel::PsiMinus)};  // unreachable
}

std::pair<BellLabel, DensityMatrix> bell_measure(const DensityMatrix& s, double rand) {
    double acc = 0.0;
    for (std::size_t k = 0; k < kBellOrder.size(); ++k) {
        const BellLabel label = kBellOrder[k];
        acc += (bell_projector(label) * s.m).trace().real();
        if (rand < acc || k + 1 == kBellOrder.size()) {
            return {label, DensityMatrix::pure(bell_state(label))};
        }
    }
    return {BellLabel::PsiMinus, DensityMatrix::pure(bell_state(BellLabel::PsiMinus))};
}

Mat2 partial_trace(const DensityMatrix& s, Qubit keep) {
    Mat2 out = Mat2::Zero();
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int t = 0; t < 2; ++t) {
                if (keep == Qubit::Home)
                    out(a, b) += s.m(2 * a + t, 2 * b + t);
                else
                    out(a, b) += s.m(2 * t + a, 2 * t + b);
            }
    return out;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lambda = es.eigenvalues()(i);
        if (lambda > kBranchFloor) entropy -= lambda * std::log2(lambda);
    }
    return entropy;
}

double fidelity_pure(const StateVector& ref, const DensityMatrix& rho) {
    const double overlap = ref.amps.dot(rho.m * ref.amps).real();
    return std::sqrt(std::max(0.0, overlap));
}

double gamma_of(const DensityMatrix& rho) {
    const StateVector singlet = bell_state(BellLabel::PsiMinus);
    const double overlap = singlet.amps.dot(rho.m * singlet.amps).real();
    return 1.0 - overlap;
}

double holevo(const Ensemble& e) {
    e.validate();
    double conditional = 0.0;
    for (const auto& [p, rho] : e.members) {
        if (p > 0.0) conditional += p * von_neumann_entropy(rho.m);
    }
    return von_neumann_entropy(e.average().m) - conditional;
}

}  // namespace ppsim
