#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "intfield/scattering.hpp"

using namespace intfield;
using std::numbers::pi;

TEST_CASE("free reflection factor") {
    CHECK(std::abs(free_reflection(1.3, 0.0).value - 1.0) < 1e-15);
    CHECK(std::abs(free_reflection(0.7, 0.7).value - cplx(0, -1)) < 1e-15);
    CHECK(std::abs(free_reflection(1e9, 0.5).value - 1.0) < 1e-8);
    CHECK(free_reflection(1.1, -0.4).modulus() == doctest::Approx(1.0).epsilon(1e-14));
    // arg R = -2 atan(lambda / k) for k > 0
    CHECK(std::arg(free_reflection(1.5, 0.7).value) == doctest::Approx(-2 * std::atan(0.7 / 1.5)));
    const auto pole = free_reflection(cplx(0, 0.3), -0.3);
    CHECK(pole.pole);
    CHECK(pole.pole_at.find("bound state") != std::string::npos);
    CHECK_THROWS_AS(free_reflection(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("block identities") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> th(-5, 5), xs(-3, 3);
    for (int s = 0; s < 200; ++s) {
        const double t = th(rng), x = xs(rng);
        const auto b = block(x, t);
        REQUIRE_FALSE(b.pole);
        CHECK(std::abs(b.modulus() - 1.0) < 1e-12);
        CHECK(std::abs(b.value * block(x, -t).value - 1.0) < 1e-12);
        CHECK(std::abs(block(0.0, t).value - 1.0) == 0.0);
        CHECK(std::abs(block(2.0, t).value + 1.0) < 1e-12);
    }
    // (1)_Theta has its pole at Theta = i pi / 2
    const auto p = block(1.0, cplx(0, pi / 2));
    CHECK(p.pole);
    CHECK(p.pole_at == "(1)_Theta");
}

TEST_CASE("S-matrix") {
    CHECK(coupling_B(0.0) == 0.0);
    CHECK(coupling_B(1.0) == doctest::Approx(2.0 / (8 * pi + 1)));
    CHECK(std::abs(s_matrix(0.7, 1.0).modulus() - 1.0) < 1e-12);
    CHECK(std::abs(s_matrix(0.7, 0.0).value - 1.0) < 1e-15);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> th(-4, 4), be(0.05, 4);
    for (int s = 0; s < 200; ++s) {
        const double t = th(rng), b = be(rng);
        const auto S = s_matrix(t, b);
        CHECK(std::abs(S.modulus() - 1.0) < 1e-12);
        CHECK(std::abs(S.value * s_matrix(-t, b).value - 1.0) < 1e-12);
    }
    // B <-> 2 - B symmetry: the block product is symmetric by construction; check
    // via direct evaluation of the product with swapped factors
    const double B = coupling_B(1.3);
    const cplx lhs = -1.0 / (block(B, 0.4).value * block(2 - B, 0.4).value);
    const cplx rhs = -1.0 / (block(2 - B, 0.4).value * block(B, 0.4).value);
    CHECK(std::abs(lhs - rhs) < 1e-15);
    CHECK(std::abs(s_matrix(0.4, 1.3).value - lhs) < 1e-13);

    // free limit: |S - 1| / B tends to a constant
    double prev_ratio = 0;
    for (double beta : {0.1, 0.05, 0.025}) {
        const double r = std::abs(s_matrix(0.5, beta).value - 1.0) / coupling_B(beta);
        if (prev_ratio > 0) CHECK(r == doctest::Approx(prev_ratio).epsilon(0.01));
        prev_ratio = r;
    }
}

TEST_CASE("sinh-Gordon reflection factor") {
    const ShGBoundary p{0.3, 0.2, 1.0};
    CHECK(std::abs(reflection_factor(0.9, p).modulus() - 1.0) < 1e-12);
    const ShGBoundary q{0.3, -0.2, 1.0};
    CHECK(q.E() == doctest::Approx(p.F()));
    CHECK(q.F() == doctest::Approx(p.E()));
    CHECK(std::abs(reflection_factor(0.9, p).value - reflection_factor(0.9, q).value) < 1e-14);
    CHECK(std::abs(reflection_factor(0.9, p).value * reflection_factor(-0.9, p).value - 1.0) < 1e-12);

    // pole of (1-E)_theta: sinh(theta/2 + i pi (1-E)/4) = 0 at theta = -i pi (1-E)/2
    const auto pole = reflection_factor(cplx(0, -pi * (1 - p.E()) / 2), p);
    CHECK(pole.pole);
    CHECK(pole.pole_at == "(1-E)_theta");
}

TEST_CASE("coefficient conversion and bound states") {
    CHECK(a_from_b(1.0) == 0.0);
    CHECK(a_from_b(0.0) == doctest::Approx(0.5));
    CHECK(a_from_b(-1.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(a_from_b(1.5), std::invalid_argument);
    CHECK(bound_state_frequency(1.0, -0.6) == doctest::Approx(0.8));
    CHECK(bound_state_frequency(1.0, -1e-9) == doctest::Approx(1.0));
    CHECK_THROWS_AS(bound_state_frequency(1.0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(bound_state_frequency(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("interval spectrum") {
    SpectrumProblem nn{1.0, 5.0, 0.0, 0.0, 6};
    const auto r = interval_spectrum(nn);
    REQUIRE(r.failures.empty());
    REQUIRE(r.roots.size() == 6);
    for (const auto& root : r.roots) {
        CHECK(root.branch == root.index);
        CHECK(std::abs(root.k - root.index * pi / (2 * nn.L)) < 1e-10 * root.k);
        CHECK(root.omega == doctest::Approx(std::sqrt(1 + root.k * root.k)));
    }

    SpectrumProblem rr{1.0, 5.0, 0.5, 0.25, 8};
    const auto s = interval_spectrum(rr);
    REQUIRE(s.roots.size() == 8);
    for (std::size_t i = 0; i < s.roots.size(); ++i) {
        const auto& root = s.roots[i];
        CHECK(std::abs(interval_phase(rr, root.k) - 2 * pi * root.branch) < 1e-8);
        CHECK(root.branch == static_cast<int>(i));  // starts at n = 0, no branch skipped
        if (i > 0) CHECK(root.k > s.roots[i - 1].k);
        // direct Robin check: cos(k x + d) meets both end conditions
        const double k = root.k;
        const double d = std::atan(rr.lambda_plus / k) - k * rr.L;
        CHECK(std::abs(-k * std::sin(-k * rr.L + d) - rr.lambda_minus * std::cos(-k * rr.L + d)) < 1e-9);
    }

    // equal ends: the phase is the single-boundary phase doubled
    SpectrumProblem eq{1.0, 3.0, 0.4, 0.4, 4};
    for (const auto& root : interval_spectrum(eq).roots)
        CHECK(std::abs(4 * root.k * eq.L - 4 * std::atan(0.4 / root.k) - 2 * pi * root.branch) < 1e-8);

    CHECK_THROWS_AS(interval_spectrum(SpectrumProblem{1.0, 0.0, 0.0, 0.0, 3}), std::invalid_argument);
}
