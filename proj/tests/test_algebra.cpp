#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "common.hpp"
#include "swspectra/algebra.hpp"
#include "swspectra/systems.hpp"

using namespace sw;

TEST_CASE("structure constants evaluate polynomial-wise") {
    StructureConstants sc;
    sc.alpha = EnergyPolynomial({2.0});
    sc.delta = EnergyPolynomial({1.0, -3.0});
    sc.casimir = EnergyPolynomial({0.0, 0.0, 4.0});
    const StructureConstantsValues v = eval(sc, 2.0);
    CHECK(v.alpha == 2.0);
    CHECK(v.beta == 0.0);
    CHECK(v.delta == doctest::Approx(-5.0));
    CHECK(v.casimir == doctest::Approx(16.0));
}

TEST_CASE("realization branch dispatch enforces its preconditions") {
    StructureConstantsValues v;
    v.epsilon = 4.0;
    CHECK_NOTHROW(realize_gamma_zero(v, 0.5));

    v.gamma = 1.0;
    CHECK_THROWS_AS(realize_gamma_zero(v, 0.5), std::invalid_argument);
    CHECK_NOTHROW(realize_gamma_nonzero(v, 0.3));

    v.gamma = 0.0;
    CHECK_THROWS_AS(realize_gamma_nonzero(v, 0.3), std::invalid_argument);

    v.epsilon = -1.0;
    CHECK_THROWS_AS(realize_gamma_zero(v, 0.5), std::domain_error);
}

TEST_CASE("vanishing-gamma realization carries the advertised ladder data") {
    StructureConstantsValues v;
    v.alpha = 2.0;
    v.delta = 3.0;
    v.epsilon = 4.0;
    v.zeta = 5.0;
    const double u = 0.3;
    const OscillatorRealization re = realize_gamma_zero(v, u);
    CHECK(re.branch == OscillatorRealization::Branch::gamma_zero);
    CHECK(re.u == u);
    // A(n) = sqrt(eps) (n+u);  b(n) = -alpha (n+u)^2 - delta/sqrt(eps) (n+u) - zeta/eps.
    CHECK(re.A_of_N(1.2) == doctest::Approx(2.0 * 1.5));
    const double t = 1.5;
    CHECK(re.b_of_N(1.2) == doctest::Approx(-2.0 * t * t - 1.5 * t - 1.25));
    CHECK(re.rho_of_N(0.0) == 1.0);
    CHECK(re.rho_of_N(3.0) == 1.0);
}

TEST_CASE("nonzero-gamma realization hits its pole guard") {
    StructureConstantsValues v;
    v.gamma = 2.0;
    v.epsilon = -1.0;
    v.zeta = 1.0;
    // u = 1/2 puts the n = 0 ladder argument on the (n+u)^2 = 1/4 pole.
    const OscillatorRealization re = realize_gamma_nonzero(v, 0.5);
    CHECK_THROWS_AS(re.b_of_N(0.0), std::domain_error);
    CHECK_NOTHROW(re.b_of_N(1.0));
}

TEST_CASE("explicit representation has the deformed-oscillator structure exactly") {
    // First oscillator-type system at its lowest quantized level: the matrix
    // identities b bdag = Phi(N+1) and bdag b = Phi(N) must hold bitwise,
    // because the entries are built from the same square roots.
    const TildeParams tp = swtest::tilde_osc(1.0, 1.0, 1.0, 0.0, 0.0);
    const int p = 2;
    const SignPair s{+1, +1};
    const StructureConstants sc = structure_constants(1, tp);
    const double e = 2.0 * (p + 1.5); // closed-form level for this branch
    const StructureConstantsValues v = eval(sc, e);
    const double u = representation_shift_rule(1, tp, s, p)(e);
    const OscillatorRealization re = realize_gamma_zero(v, u);
    const MatrixRep rep = build_matrix_rep(re, p);

    REQUIRE(rep.dimension == p + 1);
    CHECK(rep.N(0, 0) == 0.0);
    CHECK(rep.N(p, p) == doctest::Approx(p));

    // Ladder structure: bdag has sqrt(Phi(n+1)) one below the diagonal.
    for (int n = 0; n + 1 <= p; ++n) {
        const double phi = re.Phi_of_N(n + 1.0);
        CHECK(rep.bdag(n + 1, n) == doctest::Approx(std::sqrt(std::max(0.0, phi))));
        CHECK(rep.b(n, n + 1) == rep.bdag(n + 1, n));
    }

    const Matrix lower = rep.b * rep.bdag;
    const Matrix upper = rep.bdag * rep.b;
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= p; ++j) {
            if (i != j) {
                CHECK(lower(i, j) == 0.0); // exactly, not approximately
                CHECK(upper(i, j) == 0.0);
            }
        }
    for (int n = 0; n <= p; ++n) {
        CHECK(lower(n, n) == doctest::Approx(re.Phi_of_N(n + 1.0)).epsilon(1e-14));
        CHECK(upper(n, n) == doctest::Approx(re.Phi_of_N(static_cast<double>(n))).epsilon(1e-14));
    }

    // A is diagonal, B symmetric tridiagonal, C = [A,B] antisymmetric.
    for (int i = 0; i <= p; ++i)
        for (int j = 0; j <= p; ++j) {
            if (i != j) CHECK(rep.A(i, j) == 0.0);
            if (std::abs(i - j) > 1) CHECK(rep.B(i, j) == 0.0);
            CHECK(rep.B(i, j) == doctest::Approx(rep.B(j, i)).epsilon(1e-14));
            CHECK(rep.C(i, j) == doctest::Approx(-rep.C(j, i)).epsilon(1e-12));
        }
}

TEST_CASE("closure holds at machine precision on quantized levels of every case") {
    std::mt19937 rng(7321u);
    std::uniform_real_distribution<double> Umu(0.0, 2.0);
    std::uniform_real_distribution<double> Uw(0.5, 2.0);

    for (int case_id = 1; case_id <= 4; ++case_id) {
        for (int draw = 0; draw < 3; ++draw) {
            TildeParams tp;
            tp.m = 1.0;
            tp.hbar = 1.0;
            if (case_id <= 2)
                tp.omega = Uw(rng);
            else
                tp.k = Uw(rng);
            tp.mu1 = Umu(rng);
            tp.mu2 = Umu(rng);
            tp.mu = Umu(rng);

            std::vector<SignPair> branches;
            if (case_id == 1 || case_id == 3) {
                branches = {{-1, -1}, {-1, +1}, {+1, -1}, {+1, +1}};
            } else {
                branches = {{-1, 0}, {+1, 0}};
            }
            for (int p = 0; p <= 3; ++p) {
                for (SignPair s : branches) {
                    for (double e : quasi_spectrum(case_id, tp, p, s)) {
                        ClosureReport rep;
                        try {
                            rep = swtest::closure_at(case_id, tp, s, p, e, 1e-9);
                        } catch (const std::domain_error&) {
                            continue; // no unitary representation on this branch
                        }
                        INFO("case ", case_id, " p ", p, " signs ", s.e1, s.e2, " e ", e);
                        CHECK(rep.pass);
                        CHECK(rep.max_dev < 1e-9);
                    }
                }
            }
        }
    }
}

TEST_CASE("off-shell energies break exactly the boundary-sensitive identities") {
    // With the representation shift pinning Phi(0) = 0, both [A,B] = C and the
    // [A,C] relation hold at any energy; the [B,C] relation and the Casimir
    // scalarity require Phi(p+1) = 0 as well, so an energy that is not a
    // quantized level must leave large deviations in exactly those two.
    const TildeParams tp = swtest::tilde_osc(1.0, 1.0, 1.0, 0.0, 0.0, 0.75);
    const double off_shell = 4.3; // levels of this branch sit at 3 and 5
    const ClosureReport rep = swtest::closure_at(2, tp, {+1, 0}, 1, off_shell, 1e-9);
    CHECK(rep.dev_ab_c < 1e-12);
    CHECK(rep.dev_ac < 1e-10);
    CHECK(rep.dev_bc > 1e-3);
    CHECK(rep.dev_casimir > 1e-3);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("interior positivity failure aborts the representation build") {
    // Below the first excited level the structure function goes negative at
    // the interior point, so no 2-dimensional unitary representation exists.
    const TildeParams tp = swtest::tilde_osc(1.0, 1.0, 1.0, 0.0, 0.0, 0.75);
    CHECK_THROWS_AS(swtest::closure_at(2, tp, {+1, 0}, 1, 2.37, 1e-9), std::domain_error);
}

TEST_CASE("quantization-condition roots: oscillator-type branch") {
    // First system, zero couplings, branch (+,+), p = 0: the closed form puts
    // the level at E = 3; scanning also brackets the mirror image at E = 2
    // where the p+1 zero crosses the origin boundary instead.
    const TildeParams tp = swtest::tilde_osc(1.0, 1.0, 1.0, 0.0, 0.0);
    const StructureConstants sc = structure_constants(1, tp);
    const auto u_rule = representation_shift_rule(1, tp, {+1, +1}, 0);
    const std::vector<QuantizedEnergy> roots =
        find_quantized_energies(sc, u_rule, 0, 0.5, 4.0, 1e-10);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].E_tilde == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(roots[1].E_tilde == doctest::Approx(3.0).epsilon(1e-9));
    for (const QuantizedEnergy& q : roots) {
        CHECK(q.positivity_ok); // p = 0 has no interior points
        CHECK(std::abs(q.residual) < 1e-10);
    }
}

TEST_CASE("quantization-condition roots: Coulomb-type branch") {
    // Third system, zero couplings, branch (+,+), p = 0: closed form -1/18.
    const TildeParams tp = swtest::tilde_coulomb(1.0, 1.0, 1.0, 0.0, 0.0);
    const StructureConstants sc = structure_constants(3, tp);
    const auto u_rule = representation_shift_rule(3, tp, {+1, +1}, 0);
    const std::vector<QuantizedEnergy> roots =
        find_quantized_energies(sc, u_rule, 0, -0.4, -0.01, 1e-10);
    REQUIRE(roots.size() >= 1);
    bool found = false;
    for (const QuantizedEnergy& q : roots)
        if (std::abs(q.E_tilde + 1.0 / 18.0) < 1e-9) found = q.positivity_ok;
    CHECK(found);
}

TEST_CASE("casimir matrix is scalar exactly on shell and not off shell") {
    const TildeParams tp = swtest::tilde_osc(1.0, 1.0, 1.0, 0.5, 0.25);
    const StructureConstants sc = structure_constants(1, tp);
    const SignPair s{+1, +1};
    const int p = 2;
    const double e_on = quasi_spectrum(1, tp, p, s).front();

    const StructureConstantsValues v = eval(sc, e_on);
    const double u = representation_shift_rule(1, tp, s, p)(e_on);
    const MatrixRep rep = build_matrix_rep(realize_gamma_zero(v, u), p);
    const Matrix K = casimir_matrix(v, rep.A, rep.B, rep.C);

    const double scale = std::max(1.0, std::abs(v.casimir));
    for (int i = 0; i <= p; ++i) {
        CHECK(std::abs(K(i, i) - v.casimir) < 1e-9 * scale);
        for (int j = 0; j <= p; ++j)
            if (i != j) CHECK(std::abs(K(i, j)) < 1e-9 * scale);
    }
}
