#include <doctest.h>

#include <cmath>
#include <random>

#include "kb/closed_form.hpp"

using kb::Channel;
using kb::PotentialParams;

namespace {

const PotentialParams oscillator{0.5, 0.0, 0.0, 1.0};  // alpha = 1/2, omega = 1

}  // namespace

TEST_CASE("oscillator energies") {
    CHECK(kb::energy_eigenvalue(Channel(0, 0, 3), oscillator) ==
          doctest::Approx(1.5).epsilon(1e-15));
    // n' = n + l degeneracy: (1,0) and (0,1) share E = 2.5
    CHECK(kb::energy_eigenvalue(Channel(1, 0, 3), oscillator) ==
          doctest::Approx(2.5).epsilon(1e-15));
    CHECK(kb::energy_eigenvalue(Channel(0, 1, 3), oscillator) ==
          doctest::Approx(2.5).epsilon(1e-15));
    CHECK(kb::energy_eigenvalue(Channel(2, 0, 3), oscillator) ==
          doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("linear term shifts the spectrum by -b^2/(4a)") {
    const PotentialParams p(0.5, 1.0, 0.7, 1.0);  // c plays no role in the formula
    CHECK(kb::energy_eigenvalue(Channel(0, 0, 3), p) ==
          doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("constant level spacing 2 sqrt(a/(2 mu))") {
    const PotentialParams p(1.3, 0.4, 0.2, 0.9);
    const double spacing = 2.0 * std::sqrt(p.a / (2.0 * p.mu));
    for (int n = 0; n < 4; ++n)
        for (int l = 0; l < 3; ++l)
            CHECK(kb::energy_eigenvalue(Channel(n + 1, l, 4), p) -
                      kb::energy_eigenvalue(Channel(n, l, 4), p) ==
                  doctest::Approx(spacing).epsilon(1e-13));
}

TEST_CASE("degeneracies of the closed-form spectrum") {
    const PotentialParams p(0.8, -0.3, 0.5, 1.7);
    // (n, l) -> (n-1, l+1) at fixed N
    CHECK(kb::energy_eigenvalue(Channel(2, 1, 3), p) ==
          kb::energy_eigenvalue(Channel(1, 2, 3), p));
    // (l, N+2) -> (l+1, N)
    CHECK(kb::energy_eigenvalue(Channel(1, 1, 5), p) ==
          kb::energy_eigenvalue(Channel(1, 2, 3), p));
}

TEST_CASE("with b = 0 the formula is independent of c") {
    const PotentialParams with_c(0.5, 0.0, 2.5, 1.0);
    const PotentialParams without_c(0.5, 0.0, 0.0, 1.0);
    CHECK(kb::energy_eigenvalue(Channel(0, 0, 3), with_c) ==
          kb::energy_eigenvalue(Channel(0, 0, 3), without_c));
}

TEST_CASE("identity residuals") {
    SUBCASE("b = c = 0 satisfies the Coulomb identity trivially") {
        const auto r = kb::identity_residuals(Channel(0, 0, 3), oscillator);
        CHECK(r.r26 == doctest::Approx(0.0));
    }
    SUBCASE("the pole-order identity cannot hold for N = 3") {
        const auto r = kb::identity_residuals(Channel(0, 0, 3), oscillator);
        CHECK(r.r25 == doctest::Approx(-0.5).epsilon(1e-15));
    }
    SUBCASE("self-consistency residual at the closed-form energy") {
        const PotentialParams p(0.5, 1.0, 1.0, 1.0);
        const auto r = kb::identity_residuals(Channel(0, 0, 3), p);
        CHECK(r.r27 == doctest::Approx(-0.5).epsilon(1e-14));
    }
    SUBCASE("the one physical family where all three hold: n=0, l=0, N=2") {
        PotentialParams p(0.7, 0.9, 0.0, 1.3);
        const Channel ch(0, 0, 2);
        const PotentialParams constrained(
            p.a, p.b, kb::exact_solvability_constraint(ch, p), p.mu);
        const auto r = kb::identity_residuals(ch, constrained);
        CHECK(r.r25 == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(std::abs(r.r26) < 1e-14);
        CHECK(std::abs(r.r27) < 1e-13);
    }
}

TEST_CASE("exact solvability constraint") {
    CHECK(kb::exact_solvability_constraint(Channel(0, 0, 3), oscillator) == 0.0);
    const PotentialParams p(0.5, 1.0, 0.0, 1.0);  // alpha = 1/2
    CHECK(kb::exact_solvability_constraint(Channel(0, 0, 3), p) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kb::exact_solvability_constraint(Channel(0, 1, 3), p) ==
          doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("normalization constant") {
    SUBCASE("Gaussian ground state") {
        // quadrature oracle: integral of C^2 e^{-r^2} r^2 equals C^2 sqrt(pi)/4
        const double expected = std::sqrt(4.0 / std::sqrt(M_PI));
        CHECK(kb::normalization_constant(Channel(0, 0, 3), oscillator) ==
              doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("N = 2 with unit 2 alpha") {
        CHECK(kb::normalization_constant(Channel(0, 0, 2), oscillator) ==
              doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    }
    SUBCASE("the linear term multiplies C by exp(-beta^2/(4 alpha))") {
        const PotentialParams with_b(0.5, 1.0, 0.0, 1.0);  // beta = 1, alpha = 1/2
        const double ratio = kb::normalization_constant(Channel(0, 0, 3), with_b) /
                             kb::normalization_constant(Channel(0, 0, 3), oscillator);
        CHECK(ratio == doctest::Approx(std::exp(-0.5)).epsilon(1e-13));
    }
    SUBCASE("overflow reports a range error") {
        CHECK_THROWS_AS(
            kb::normalization_constant(Channel(3, 2, 4),
                                       PotentialParams(1e300, 0.0, 0.0, 1e8)),
            std::range_error);
    }
}

TEST_CASE("radial wavefunction") {
    SUBCASE("oscillator ground state is a pure Gaussian") {
        const auto R = kb::radial_wavefunction(Channel(0, 0, 3), oscillator);
        const double C = std::sqrt(4.0 / std::sqrt(M_PI));
        CHECK(R(0.0) == doctest::Approx(C).epsilon(1e-14));
        CHECK(R(1.3) == doctest::Approx(C * std::exp(-0.5 * 1.3 * 1.3)).epsilon(1e-14));
    }
    SUBCASE("vanishes at the origin for l + n > 0") {
        CHECK(kb::radial_wavefunction(Channel(0, 1, 3), oscillator)(0.0) == 0.0);
        CHECK(kb::radial_wavefunction(Channel(2, 0, 3), oscillator)(0.0) == 0.0);
    }
    SUBCASE("leading power: R(r)/r approaches the amplitude for l = 1") {
        const auto R = kb::radial_wavefunction(Channel(0, 1, 3), oscillator);
        CHECK(R(1e-8) / 1e-8 == doctest::Approx(R.amplitude).epsilon(1e-7));
    }
    SUBCASE("negative radius is a domain error") {
        const auto R = kb::radial_wavefunction(Channel(0, 0, 3), oscillator);
        CHECK_THROWS_AS(R(-0.1), std::domain_error);
        CHECK_THROWS_AS(R.derivative(-0.1), std::domain_error);
        CHECK_THROWS_AS(R.second_derivative(-0.1), std::domain_error);
    }
    SUBCASE("structure: R e^{alpha r^2 + beta r} is A r^{l+n}") {
        const PotentialParams p(0.9, 0.6, 0.3, 1.4);
        const Channel ch(2, 1, 4);
        const auto R = kb::radial_wavefunction(ch, p);
        for (double r : {0.3, 0.9, 1.7, 2.6}) {
            const double stripped = R(r) * std::exp(R.alpha * r * r + R.beta * r);
            CHECK(stripped ==
                  doctest::Approx(R.amplitude * std::pow(r, 3.0)).epsilon(1e-12));
        }
    }
    SUBCASE("derivatives at the origin") {
        const auto s = kb::radial_wavefunction(Channel(0, 0, 3), oscillator);
        CHECK(s.derivative(0.0) == doctest::Approx(-s.beta * s.amplitude));
        const auto p = kb::radial_wavefunction(Channel(0, 1, 3), oscillator);
        CHECK(p.derivative(0.0) == doctest::Approx(p.amplitude));
        CHECK(p.second_derivative(0.0) ==
              doctest::Approx(-2.0 * p.beta * p.amplitude));
    }
    SUBCASE("analytic derivatives match central differences") {
        const PotentialParams p(0.7, 0.5, 0.2, 1.1);
        const auto R = kb::radial_wavefunction(Channel(1, 1, 3), p);
        const double step = 1e-5;
        for (double r : {0.4, 1.1, 2.3}) {
            const double d1 = (R(r + step) - R(r - step)) / (2.0 * step);
            const double d2 = (R(r + step) - 2.0 * R(r) + R(r - step)) / (step * step);
            CHECK(R.derivative(r) == doctest::Approx(d1).epsilon(1e-8));
            CHECK(R.second_derivative(r) == doctest::Approx(d2).epsilon(1e-5));
        }
    }
    SUBCASE("nodeless for every n: strictly positive for r > 0") {
        for (int n = 0; n <= 3; ++n) {
            const auto R = kb::radial_wavefunction(Channel(n, 0, 3), oscillator);
            for (int i = 1; i <= 400; ++i) CHECK(R(i * 0.02) > 0.0);
        }
    }
}

TEST_CASE("rms radius") {
    CHECK(kb::rms_radius(Channel(0, 0, 3), PotentialParams(1.125, 0.0, 0.0, 1.0)) ==
          doctest::Approx(1.0).epsilon(1e-14));  // alpha = 3/4
    CHECK(kb::rms_radius(Channel(0, 0, 3), oscillator) ==
          doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
    CHECK(kb::rms_radius(Channel(0, 1, 3), oscillator) ==
          doctest::Approx(std::sqrt(2.5)).epsilon(1e-14));
}

TEST_CASE("closed form state bundles the pieces consistently") {
    const PotentialParams p(0.5, 1.0, 1.0, 1.0);
    const auto state = kb::closed_form_state(Channel(0, 0, 3), p);
    CHECK(state.energy == kb::energy_eigenvalue(Channel(0, 0, 3), p));
    CHECK(state.norm_constant == kb::normalization_constant(Channel(0, 0, 3), p));
    CHECK(state.residuals.r27 == kb::identity_residuals(Channel(0, 0, 3), p).r27);
}
