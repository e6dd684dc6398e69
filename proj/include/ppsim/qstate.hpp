#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "ppsim/errors.hpp"

namespace ppsim {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2cd;
using Vec4 = Eigen::Vector4cd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Structural tolerance for norms, traces, hermiticity.
inline constexpr double kStructuralTol = 1e-12;
// Tolerance for positive semidefiniteness checks.
inline constexpr double kPsdTol = 1e-10;
// A projected branch below this norm cannot be normalized.
inline constexpr double kBranchFloor = 1e-14;

// Fixed label order; measurement branch selection walks this order.
enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellLabel, 4> kBellOrder{
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

std::string to_string(BellLabel label);
BellLabel bell_label_from_string(const std::string& name);

enum class Qubit { Home, Travel };

enum class BasisTag { Z, X };

std::string to_string(BasisTag tag);

// Single-qubit measurement basis as a pair of rank-1 projectors.
struct Basis {
    BasisTag tag;
    Mat2 proj0;
    Mat2 proj1;

    static Basis z();
    static Basis x();
    static Basis from_tag(BasisTag tag);
};

// Pure state of the home+travel pair, basis order |00>,|01>,|10>,|11>,
// first index home, second travel.
struct StateVector {
    Vec4 amps;

    void validate() const;  // throws DomainError on bad norm
};

struct DensityMatrix {
    Mat4 m;

    static DensityMatrix pure(const StateVector& psi);
    void validate() const;  // Hermitian, unit trace, PSD
};

struct Ensemble {
    std::vector<std::pair<double, DensityMatrix>> members;

    void validate() const;
    DensityMatrix average() const;
};

// kron(a, b) on 2x2 blocks, a acts on the home index.
Mat4 kron2(const Mat2& a, const Mat2& b);
// Lift a single-qubit operator onto one slot of the pair.
Mat4 embed_on(const Mat2& op, Qubit which);

StateVector bell_state(BellLabel label);
Mat4 bell_projector(BellLabel label);

// Multiply by a global phase so the first nonzero amplitude is real positive.
StateVector canonical_phase(StateVector s);

void require_unitary(const Mat2& u);  // throws NonUnitaryError

StateVector apply_on_travel(const Mat2& u, const StateVector& s);
DensityMatrix apply_on_travel(const Mat2& u, const DensityMatrix& s);

// Born-rule measurement, deterministic given rand: outcome 0 iff rand < p0.
std::pair<int, StateVector> measure_qubit(const StateVector& s, Qubit which,
                                          const Basis& b, double rand);
std::pair<int, DensityMatrix> measure_qubit(const DensityMatrix& s, Qubit which,
                                            const Basis& b, double rand);

std::pair<BellLabel, StateVector> bell_measure(const StateVector& s, double rand);
std::pair<BellLabel, DensityMatrix> bell_measure(const DensityMatrix& s, double rand);

Mat2 partial_trace(const DensityMatrix& s, Qubit keep);

// In bits; 0*log 0 := 0. Accepts any square Hermitian PSD matrix.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);

// sqrt(<ref|rho|ref>)
double fidelity_pure(const StateVector& ref, const DensityMatrix& rho);

// 1 - <psi-|rho|psi->, the singlet infidelity of the shared pair.
double gamma_of(const DensityMatrix& rho);

double holevo(const Ensemble& e);

}  // namespace ppsim
