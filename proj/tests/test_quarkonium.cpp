#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "kb/closed_form.hpp"
#include "kb/quarkonium.hpp"

using kb::Channel;
using kb::PotentialParams;
namespace quark = kb::quarkonium;

TEST_CASE("quark system validation") {
    CHECK_NOTHROW(quark::make_system(1.0, 1.0, 0.5, 0.0, 0.0, "qq"));
    // mu must equal the reduced mass
    CHECK_THROWS_AS(quark::QuarkSystem(1.0, 1.0, PotentialParams(0.5, 0.0, 0.0, 0.7),
                                       "qq"),
                    std::invalid_argument);
    CHECK_THROWS_AS(quark::make_system(-1.0, 1.0, 0.5, 0.0, 0.0, "qq"),
                    std::invalid_argument);
}

TEST_CASE("state mass is additive in the constituent masses") {
    // a chosen so E(1S) = 0.5: sqrt(a/(2 mu)) * 3 = 0.5 with mu = 1/2
    const auto sys = quark::make_system(1.0, 1.0, 1.0 / 36.0, 0.0, 0.0, "qq");
    CHECK(quark::state_mass(sys, Channel(0, 0, 3)) ==
          doctest::Approx(2.5).epsilon(1e-14));

    const auto heavy = quark::make_system(1.0, 1.0, 0.5, 0.0, 0.0, "qq");
    CHECK(quark::state_mass(heavy, Channel(0, 0, 3)) ==
          doctest::Approx(2.0 + 3.0 * std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("mass increases strictly with n at fixed l") {
    const auto sys = quark::make_system(1.5, 1.5, 0.3, 0.2, 0.1, "qq");
    for (int n = 0; n < 5; ++n)
        CHECK(quark::state_mass(sys, Channel(n + 1, 1, 3)) >
              quark::state_mass(sys, Channel(n, 1, 3)));
}

TEST_CASE("mass differences depend only on the spectrum spacing") {
    const auto sys = quark::make_system(1.2, 1.8, 0.4, 0.3, 0.2, "qq");
    const double spacing = 2.0 * std::sqrt(sys.params.a / (2.0 * sys.params.mu));
    CHECK(quark::state_mass(sys, Channel(1, 0, 3)) -
              quark::state_mass(sys, Channel(0, 0, 3)) ==
          doctest::Approx(spacing).epsilon(1e-13));
}

TEST_CASE("rms radius in femtometers") {
    // alpha = 3/4 makes the moment ratio exactly 1
    const auto sys = quark::make_system(1.0, 1.0, 2.25, 0.0, 0.0, "qq");
    CHECK(quark::rms_radius_fm(sys, Channel(0, 0, 3)) ==
          doctest::Approx(0.1973).epsilon(1e-14));
    CHECK_THROWS_AS(quark::rms_radius_fm(sys, Channel(0, 0, 4)),
                    std::invalid_argument);
}

TEST_CASE("radius scales as a^{-1/4}") {
    const auto base = quark::make_system(1.0, 1.0, 0.2, 0.0, 0.0, "qq");
    const auto strong = quark::make_system(1.0, 1.0, 3.2, 0.0, 0.0, "qq");  // 16 a
    const double ratio = quark::rms_radius_fm(strong, Channel(0, 0, 3)) /
                         quark::rms_radius_fm(base, Channel(0, 0, 3));
    CHECK(ratio == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("published radii are stored as flagged references") {
    const auto& refs = quark::reference_radii();
    REQUIRE(refs.size() == 2);
    CHECK(std::string(refs[0].system) == "bbbar");
    CHECK(refs[0].radius_fm == 0.2672);
    CHECK(std::string(refs[1].system) == "ccbar");
    CHECK(refs[1].radius_fm == 0.4839);
    for (const auto& ref : refs) CHECK(ref.requires_external_parameters);
}

TEST_CASE("fit recovers synthesized parameters") {
    const double a_true = 0.3, b_true = 0.2, c_fixed = 0.1;
    const auto truth = quark::make_system(1.5, 1.5, a_true, b_true, c_fixed, "qq");

    quark::FitProblem problem;
    problem.free_a = true;
    problem.free_b = true;
    problem.free_c = false;
    problem.bounds_a = {0.01, 2.0};
    // the spectrum is even in b; bound to the physical b >= 0 branch
    problem.bounds_b = {0.0, 2.0};
    for (const auto& [n, l] : {std::pair{0, 0}, {1, 0}, {0, 1}, {2, 0}})
        problem.observations.emplace_back(Channel(n, l, 3),
                                          quark::state_mass(truth, Channel(n, l, 3)));

    // start the search away from the truth
    const auto start = quark::make_system(1.5, 1.5, 0.8, 0.9, c_fixed, "qq");
    const auto fit = quark::fit_parameters(problem, start, 42);

    CHECK(fit.converged);
    CHECK(fit.params.a == doctest::Approx(a_true).epsilon(1e-6));
    CHECK(fit.params.b == doctest::Approx(b_true).epsilon(1e-6));
    CHECK(fit.params.c == c_fixed);
    CHECK(fit.objective < 1e-14);
    for (double r : fit.residuals) CHECK(std::abs(r) < 1e-7);

    SUBCASE("deterministic under a fixed seed") {
        const auto again = quark::fit_parameters(problem, start, 42);
        CHECK(again.params.a == fit.params.a);
        CHECK(again.params.b == fit.params.b);
        CHECK(again.objective == fit.objective);
        CHECK(again.winning_start == fit.winning_start);
    }
    SUBCASE("invariant under reordering of observations") {
        quark::FitProblem reversed = problem;
        std::reverse(reversed.observations.begin(), reversed.observations.end());
        const auto fit2 = quark::fit_parameters(reversed, start, 42);
        CHECK(fit2.params.a == doctest::Approx(fit.params.a).epsilon(1e-9));
        CHECK(fit2.params.b == doctest::Approx(fit.params.b).epsilon(1e-9));
    }
}

TEST_CASE("single-parameter fit matches the closed-form inversion") {
    const auto truth = quark::make_system(1.2, 1.2, 0.45, 0.0, 0.0, "qq");
    const Channel ch(1, 0, 3);
    const double observed = quark::state_mass(truth, ch);

    quark::FitProblem problem;
    problem.free_a = true;
    problem.free_b = false;
    problem.free_c = false;
    problem.bounds_a = {0.01, 2.0};
    problem.observations.emplace_back(ch, observed);

    const auto start = quark::make_system(1.2, 1.2, 0.9, 0.0, 0.0, "qq");
    const auto fit = quark::fit_parameters(problem, start, 7);

    const double gap = observed - start.m1 - start.m2;
    const double inverted =
        2.0 * start.params.mu * std::pow(gap / (2 * ch.n + 2 * ch.l + ch.dim), 2);
    CHECK(fit.params.a == doctest::Approx(inverted).epsilon(1e-8));
}

TEST_CASE("conflicting observations leave an irreducible residual") {
    quark::FitProblem problem;
    problem.free_a = true;
    problem.free_b = false;
    problem.free_c = false;
    problem.bounds_a = {0.01, 2.0};
    problem.observations.emplace_back(Channel(0, 0, 3), 3.0);
    problem.observations.emplace_back(Channel(0, 0, 3), 3.4);  // same channel

    const auto start = quark::make_system(1.0, 1.0, 0.5, 0.0, 0.0, "qq");
    const auto fit = quark::fit_parameters(problem, start, 3);
    CHECK(fit.converged);
    // the model is single-valued per channel: best it can do is split the gap
    CHECK(fit.objective == doctest::Approx(2.0 * 0.2 * 0.2).epsilon(1e-6));
}

TEST_CASE("underdetermined problems are rejected") {
    quark::FitProblem problem;
    problem.free_a = true;
    problem.free_b = true;
    problem.free_c = false;
    problem.observations.emplace_back(Channel(0, 0, 3), 3.0);
    const auto start = quark::make_system(1.0, 1.0, 0.5, 0.0, 0.0, "qq");
    CHECK_THROWS_AS(quark::fit_parameters(problem, start, 1), std::invalid_argument);
}
