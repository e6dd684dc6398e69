#include <doctest.h>

#include "ppsim/adversary.hpp"
#include "ppsim/analysis.hpp"
#include "ppsim/errors.hpp"

#include "support.hpp"

using namespace ppsim;

namespace {

DensityMatrix singlet_density() { return DensityMatrix::pure(bell_state(BellLabel::PsiMinus)); }

// Exact average of the first-leg channel from its Choi matrix applied to
// the travel qubit of `rho`: independent route for checking sampled maps.
DensityMatrix apply_choi_to_travel(const Mat4& choi, const DensityMatrix& rho) {
    DensityMatrix out;
    out.m.setZero();
    // E(sigma)_{kl} = sum_{ij} choi[(i,k),(j,l)] sigma_{ij}; lift to I (x) E.
    for (int hr = 0; hr < 2; ++hr)
        for (int hc = 0; hc < 2; ++hc)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    for (int i = 0; i < 2; ++i)
                        for (int j = 0; j < 2; ++j)
                            out.m(2 * hr + k, 2 * hc + l) +=
                                choi(2 * i + k, 2 * j + l) * rho.m(2 * hr + i, 2 * hc + j);
    return out;
}

}  // namespace

TEST_CASE("no_attack passes states through untouched") {
    auto attack = no_attack();
    validate_channel(attack.travel_choi_b_to_a, attack.name);
    std::mt19937_64 rng(3);
    DensityMatrix state = gen::random_density(rng);
    const DensityMatrix before = state;
    EveRunState eve;
    CHECK(attack.on_b_to_a(state, eve, rng));
    attack.on_a_to_b(state, eve, rng);
    CHECK((state.m - before.m).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(!eve.guess);
}

TEST_CASE("every built-in first-leg map is completely positive") {
    std::vector<AttackStrategy> attacks;
    attacks.push_back(no_attack());
    attacks.push_back(intercept_resend(Basis::z()));
    attacks.push_back(intercept_resend(Basis::x()));
    attacks.push_back(bell_diagonal_attack({0.1, 0.2, 0.3, 0.4}));
    attacks.push_back(mitm_unitary((Mat2() << 0, 1, 1, 0).finished()));
    attacks.push_back(mitm_measure(Basis::z()));
    attacks.push_back(mitm_forge_public());
    attacks.push_back(loss_hiding(0.4, intercept_resend(Basis::z())));
    for (const auto& attack : attacks) {
        CHECK_NOTHROW(validate_channel(attack.travel_choi_b_to_a, attack.name));
    }
}

TEST_CASE("intercept_resend dephases the singlet to the expected mixture") {
    auto attack = intercept_resend(Basis::z());

    // Choi route: the average post-attack state is (|01><01| + |10><10|)/2.
    const DensityMatrix avg = apply_choi_to_travel(attack.travel_choi_b_to_a, singlet_density());
    Mat4 expect = Mat4::Zero();
    expect(1, 1) = 0.5;
    expect(2, 2) = 0.5;
    CHECK((avg.m - expect).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(gamma_of(avg) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(detection_probability(avg) == doctest::Approx(0.25).epsilon(1e-12));

    // Sampled route agrees with the average.
    std::mt19937_64 rng(5);
    Mat4 acc = Mat4::Zero();
    const int trials = 4000;
    for (int k = 0; k < trials; ++k) {
        DensityMatrix state = singlet_density();
        EveRunState eve;
        CHECK(attack.on_b_to_a(state, eve, rng));
        CHECK(eve.first_outcome);
        acc += state.m;
    }
    CHECK((acc / trials - expect).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("intercept_resend in B_z always recovers the first message bit") {
    auto attack = intercept_resend(Basis::z());
    std::mt19937_64 rng(7);
    for (int idx = 0; idx < 4; ++idx) {
        const MessagePair m = MessagePair::from_index(idx);
        for (int trial = 0; trial < 50; ++trial) {
            DensityMatrix state = singlet_density();
            EveRunState eve;
            attack.on_b_to_a(state, eve, rng);
            state = encode(m, state);
            attack.on_a_to_b(state, eve, rng);
            REQUIRE(eve.guess);
            CHECK(eve.guess->i == m.i);
        }
    }
}

TEST_CASE("intercept_resend in B_x recovers the second message bit instead") {
    auto attack = intercept_resend(Basis::x());
    std::mt19937_64 rng(9);
    for (int idx = 0; idx < 4; ++idx) {
        const MessagePair m = MessagePair::from_index(idx);
        for (int trial = 0; trial < 50; ++trial) {
            DensityMatrix state = singlet_density();
            EveRunState eve;
            attack.on_b_to_a(state, eve, rng);
            state = encode(m, state);
            attack.on_a_to_b(state, eve, rng);
            REQUIRE(eve.guess);
            CHECK(eve.guess->j == m.j);
        }
    }
}

TEST_CASE("bell_diagonal_attack") {
    SUBCASE("gamma matches the nominal value exactly on the average state") {
        const BellWeights w{0.15, 0.25, 0.35, 0.25};
        auto attack = bell_diagonal_attack(w);
        CHECK(attack.nominal_gamma == doctest::Approx(0.75).epsilon(1e-12));
        const DensityMatrix avg =
            apply_choi_to_travel(attack.travel_choi_b_to_a, singlet_density());
        // Independent construction of the target Bell-diagonal state.
        Mat4 expect = w.phi_plus * bell_projector(BellLabel::PhiPlus) +
                      w.phi_minus * bell_projector(BellLabel::PhiMinus) +
                      w.psi_plus * bell_projector(BellLabel::PsiPlus) +
                      w.psi_minus * bell_projector(BellLabel::PsiMinus);
        CHECK((avg.m - expect).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(gamma_of(avg) == doctest::Approx(attack.nominal_gamma).epsilon(1e-12));
    }
    SUBCASE("all weight on psi_minus is the identity channel") {
        auto attack = bell_diagonal_attack({0, 0, 0, 1});
        CHECK(attack.nominal_gamma == doctest::Approx(0.0));
        std::mt19937_64 rng(11);
        DensityMatrix state = singlet_density();
        EveRunState eve;
        attack.on_b_to_a(state, eve, rng);
        CHECK((state.m - singlet_density().m).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("all weight on phi_plus gives certain detection") {
        auto attack = bell_diagonal_attack({1, 0, 0, 0});
        const DensityMatrix avg =
            apply_choi_to_travel(attack.travel_choi_b_to_a, singlet_density());
        CHECK(gamma_of(avg) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(detection_probability(avg) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("equal phi_minus/psi_plus weight sits exactly on the bound") {
        auto attack = bell_diagonal_attack({0, 0.5, 0.5, 0});
        const DensityMatrix avg =
            apply_choi_to_travel(attack.travel_choi_b_to_a, singlet_density());
        CHECK(gamma_of(avg) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(detection_probability(avg) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("invalid weights are rejected") {
        CHECK_THROWS_AS(bell_diagonal_attack({0.5, 0.5, 0.5, -0.5}), InvalidDistributionError);
        CHECK_THROWS_AS(bell_diagonal_attack({0.3, 0.3, 0.3, 0.3}), InvalidDistributionError);
    }
}

TEST_CASE("mitm_unitary bit-flips the first decoded bit") {
    auto attack = mitm_unitary((Mat2() << 0, 1, 1, 0).finished());
    std::mt19937_64 rng(13);
    for (int idx = 0; idx < 4; ++idx) {
        const MessagePair m = MessagePair::from_index(idx);
        DensityMatrix state = singlet_density();
        EveRunState eve;
        attack.on_b_to_a(state, eve, rng);
        state = encode(m, state);
        attack.on_a_to_b(state, eve, rng);
        auto [label, post] = bell_measure(state, 0.5);
        const MessagePair decoded = decode(label);
        CHECK(decoded.i == (m.i ^ 1));
        CHECK(decoded.j == m.j);
    }
}

TEST_CASE("loss_hiding") {
    SUBCASE("rate one withholds everything") {
        auto attack = loss_hiding(1.0, no_attack());
        std::mt19937_64 rng(17);
        DensityMatrix state = singlet_density();
        EveRunState eve;
        CHECK(!attack.on_b_to_a(state, eve, rng));
        CHECK(eve.caused_loss);
    }
    SUBCASE("rate zero delegates to the inner strategy") {
        auto attack = loss_hiding(0.0, intercept_resend(Basis::z()));
        std::mt19937_64 rng(19);
        DensityMatrix state = singlet_density();
        EveRunState eve;
        CHECK(attack.on_b_to_a(state, eve, rng));
        CHECK(eve.first_outcome);
    }
    SUBCASE("out-of-range rate is rejected") {
        CHECK_THROWS_AS(loss_hiding(1.5, no_attack()), DomainError);
    }
}
