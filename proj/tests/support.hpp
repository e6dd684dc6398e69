#pragma once

// Test-only helpers: a small raw-array linear algebra oracle (independent
// of the library's Eigen-based path) and random state generators.

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "ppsim/qstate.hpp"
#include "ppsim/rng.hpp"

namespace oracle {

using cx = std::complex<double>;
using V4 = std::array<cx, 4>;
using M2 = std::array<cx, 4>;   // row major
using M4 = std::array<cx, 16>;  // row major

inline M4 kron(const M2& a, const M2& b) {
    M4 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    out[static_cast<std::size_t>(4 * (2 * i + k) + (2 * j + l))] =
                        a[static_cast<std::size_t>(2 * i + j)] * b[static_cast<std::size_t>(2 * k + l)];
    return out;
}

inline V4 matvec(const M4& m, const V4& v) {
    V4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[static_cast<std::size_t>(r)] += m[static_cast<std::size_t>(4 * r + c)] * v[static_cast<std::size_t>(c)];
    return out;
}

inline M4 matmul(const M4& a, const M4& b) {
    M4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            for (int k = 0; k < 4; ++k)
                out[static_cast<std::size_t>(4 * r + c)] +=
                    a[static_cast<std::size_t>(4 * r + k)] * b[static_cast<std::size_t>(4 * k + c)];
    return out;
}

inline cx overlap(const V4& bra, const V4& ket) {
    cx s = 0;
    for (int k = 0; k < 4; ++k) s += std::conj(bra[static_cast<std::size_t>(k)]) * ket[static_cast<std::size_t>(k)];
    return s;
}

inline bool same_up_to_phase(const V4& a, const V4& b, double tol = 1e-12) {
    return std::abs(std::abs(overlap(a, b)) - 1.0) < tol;
}

inline constexpr M2 kId{cx(1), cx(0), cx(0), cx(1)};
inline constexpr M2 kPhaseFlip{cx(1), cx(0), cx(0), cx(-1)};
inline constexpr M2 kBitFlip{cx(0), cx(1), cx(1), cx(0)};
inline constexpr M2 kBitPhaseFlip{cx(0), cx(1), cx(-1), cx(0)};

inline const double kR = 1.0 / std::sqrt(2.0);
inline const V4 kPhiPlus{kR, 0, 0, kR};
inline const V4 kPhiMinus{kR, 0, 0, -kR};
inline const V4 kPsiPlus{0, kR, kR, 0};
inline const V4 kPsiMinus{0, kR, -kR, 0};

// Reduced 2x2 matrix of a pure 4-vector by index summation.
inline std::array<cx, 4> reduce(const V4& psi, bool keep_home) {
    std::array<cx, 4> out{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int t = 0; t < 2; ++t) {
                const int ia = keep_home ? 2 * a + t : 2 * t + a;
                const int ib = keep_home ? 2 * b + t : 2 * t + b;
                out[static_cast<std::size_t>(2 * a + b)] +=
                    psi[static_cast<std::size_t>(ia)] * std::conj(psi[static_cast<std::size_t>(ib)]);
            }
    return out;
}

inline V4 to_v4(const ppsim::StateVector& s) {
    return {s.amps(0), s.amps(1), s.amps(2), s.amps(3)};
}

}  // namespace oracle

namespace gen {

// Random pure two-qubit state.
inline ppsim::StateVector random_state(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    ppsim::StateVector s;
    for (int k = 0; k < 4; ++k) s.amps(k) = ppsim::cplx(normal(rng), normal(rng));
    s.amps /= s.amps.norm();
    return s;
}

// Random full-rank density matrix (Ginibre construction).
inline ppsim::DensityMatrix random_density(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    ppsim::Mat4 g;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) g(r, c) = ppsim::cplx(normal(rng), normal(rng));
    ppsim::DensityMatrix rho;
    rho.m = g * g.adjoint();
    rho.m /= rho.m.trace().real();
    return rho;
}

// Random Bell-diagonal density matrix.
inline ppsim::DensityMatrix random_bell_diagonal(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::array<double, 4> w{uni(rng), uni(rng), uni(rng), uni(rng)};
    const double total = w[0] + w[1] + w[2] + w[3];
    ppsim::DensityMatrix rho;
    rho.m.setZero();
    for (std::size_t k = 0; k < 4; ++k) {
        rho.m += (w[k] / total) * ppsim::bell_projector(ppsim::kBellOrder[k]);
    }
    return rho;
}

// Random single-qubit unitary from two Gram-Schmidt-orthonormalized columns.
inline ppsim::Mat2 random_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    ppsim::Vec2 a, b;
    for (int k = 0; k < 2; ++k) {
        a(k) = ppsim::cplx(normal(rng), normal(rng));
        b(k) = ppsim::cplx(normal(rng), normal(rng));
    }
    a /= a.norm();
    b -= a * a.dot(b);
    b /= b.norm();
    ppsim::Mat2 u;
    u.col(0) = a;
    u.col(1) = b;
    return u;
}

inline std::vector<std::uint8_t> random_key(std::mt19937_64& rng, std::size_t n = 16) {
    std::vector<std::uint8_t> key(n);
    for (auto& byte : key) byte = static_cast<std::uint8_t>(rng() & 0xff);
    return key;
}

}  // namespace gen
