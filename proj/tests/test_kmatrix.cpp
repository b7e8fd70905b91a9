#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <iostream>

#include "intfield/kmatrix.hpp"
#include "intfield/linsolve.hpp"

using namespace intfield;

TEST_CASE("symbolic solve: consistent and inconsistent systems") {
    // x + y = c0, x - y = c1, 2x = c0 + c1 + c0*c1
    SymbolicSystem sys;
    sys.unknowns = 2;
    sys.symbols = 2;
    const auto c0 = Polynomial::variable(2, 0);
    const auto c1 = Polynomial::variable(2, 1);
    sys.add_equation({1, 1}, c0);
    sys.add_equation({1, -1}, c1);
    sys.add_equation({2, 0}, c0 + c1 + c0 * c1);
    const auto sol = solve_symbolic(sys);
    CHECK(sol.rank == 2);
    CHECK(sol.nullspace.empty());
    REQUIRE(sol.conditions.size() == 1);
    CHECK(sol.conditions[0] == c0 * c1);
    CHECK(sol.particular[0] == Rational(1, 2) * (c0 + c1));
    CHECK(sol.particular[1] == Rational(1, 2) * (c0 - c1));

    SymbolicSystem hom;
    hom.unknowns = 3;
    hom.symbols = 1;
    hom.add_equation({1, 2, 3}, Polynomial(1));
    const auto hs = solve_symbolic(hom);
    CHECK(hs.nullspace.size() == 2);
    CHECK(hs.conditions.empty());
}

TEST_CASE("A1: no constraints and the central k2") {
    const auto rs = build_root_system(Family::A, 1);
    const auto k = solve_k_expansion(rs, defining_rep(rs));
    CHECK(k.k1_simple_support);
    CHECK(k.k1_solution_dimension == 3);
    CHECK(k.gradient_identity);
    CHECK(k.k2_central);
    CHECK(k.raw_conditions.empty());
    CHECK(k.report.consistent);
    CHECK(k.report.free_parameters == 2);
    CHECK(k.report.sign_choices.empty());
    for (const auto& n : k.report.nodes) CHECK(n.relation == "free");

    // lambda^3 term differs from the closed form by the central factor only:
    // K3 - (c0 c1 / 2) k1 = -(c0 E + c1 F).
    const std::size_t nv = 2;
    const auto c0 = Polynomial::variable(nv, 0);
    const auto c1 = Polynomial::variable(nv, 1);
    const PolyMatrix adjusted = k.K3 - (Rational(1, 2) * (c0 * c1)) * k.k1;
    CHECK(adjusted(0, 1) == -c0);
    CHECK(adjusted(1, 0) == -c1);
    CHECK(adjusted(0, 0).is_zero());
    CHECK(adjusted(1, 1).is_zero());
}

TEST_CASE("A2: b_i^2 = 4 with eight sign choices") {
    const auto rs = build_root_system(Family::A, 2);
    const auto k = solve_k_expansion(rs, defining_rep(rs));
    CHECK(k.k1_simple_support);
    CHECK(k.k1_solution_dimension == 4);
    CHECK(k.gradient_identity);
    CHECK(k.k2_central);
    CHECK_FALSE(k.raw_conditions.empty());
    REQUIRE(k.report.consistent);
    CHECK(k.report.free_parameters == 0);
    CHECK(k.report.sign_choices.size() == 8);
    for (const auto& n : k.report.nodes) {
        CHECK(n.fixed);
        CHECK(n.b_squared == Rational(4));
    }
    const auto j = k.report.to_json();
    CHECK(j["sign_choices"] == 8);
    CHECK(j["constraints"][1]["relation"] == "b_1^2 = 4");
    CHECK(k.series_json()["orders"].size() == 3);
}

TEST_CASE("matrix and adjacency routes agree for A2..A5") {
    for (int r = 2; r <= 5; ++r) {
        const auto rs = build_root_system(Family::A, r);
        const auto k = solve_k_expansion(rs, defining_rep(rs));
        const auto adj = adjacency_constraints(rs);
        CAPTURE(r);
        CHECK(k.k1_simple_support);
        CHECK(k.gradient_identity);
        CHECK(k.k2_central);
        REQUIRE(k.report.nodes.size() == adj.nodes.size());
        for (std::size_t i = 0; i < adj.nodes.size(); ++i) {
            CHECK(k.report.nodes[i].fixed == adj.nodes[i].fixed);
            CHECK(k.report.nodes[i].b_squared == adj.nodes[i].b_squared);
        }
        CHECK(k.report.sign_choices.size() == (std::size_t{1} << (r + 1)));
        CHECK(adj.sign_choices == k.report.sign_choices);
    }
}

TEST_CASE("adjacency route across families") {
    const auto a1 = adjacency_constraints(build_root_system(Family::A, 1));
    CHECK(a1.free_parameters == 2);
    CHECK(a1.sign_choices.empty());

    const auto d4 = build_root_system(Family::D, 4);
    const auto rep = adjacency_constraints(d4);
    REQUIRE(rep.consistent);
    CHECK(rep.sign_choices.size() == 32);
    for (int i = 0; i <= 4; ++i) CHECK(rep.nodes[i].b_squared == Rational(4 * d4.marks()[i]));

    for (int r : {6, 7, 8}) {
        const auto e = build_root_system(Family::E, r);
        const auto er = adjacency_constraints(e);
        CHECK(er.consistent);
        CHECK(er.free_parameters == 0);
        for (int i = 0; i <= r; ++i) CHECK(er.nodes[i].b_squared == Rational(4 * e.marks()[i]));
    }
    CHECK_THROWS_AS(solve_k_expansion(d4, MatrixRep{}), std::invalid_argument);
}

TEST_CASE("interpretation of synthetic conditions") {
    const std::vector<Rational> scale{2, 2};
    const auto c0 = Polynomial::variable(2, 0);
    const auto c1 = Polynomial::variable(2, 1);
    // c0 * c1 = 0 cannot hold with nonzero c_i
    auto bad = interpret_conditions("X", {c0 * c1}, scale);
    CHECK_FALSE(bad.consistent);
    CHECK(bad.message.find("no integrable boundary of this form") == 0);
    CHECK(bad.sign_choices.empty());
    // c0^2 = -1 has no real solution
    auto neg = interpret_conditions("X", {c0 * c0 + Polynomial(2, Rational(1))}, scale);
    CHECK_FALSE(neg.consistent);
    auto good = interpret_conditions("X", {c1 * (c0 * c0 - Polynomial(2, Rational(3)))}, scale);
    CHECK(good.consistent);
    CHECK(good.nodes[0].b_squared == Rational(6));
    CHECK(good.nodes[1].relation == "free");
    CHECK(good.free_parameters == 1);
}

TEST_CASE("boundary potential") {
    const auto a1 = build_root_system(Family::A, 1);
    const auto b = boundary_potential(a1, std::vector<double>{2.0, 2.0});
    CHECK(b.value({0.0}) == doctest::Approx(4.0));
    CHECK(std::abs(b.gradient({0.0})[0]) < 1e-15);
    CHECK_THROWS_AS(boundary_potential(a1, std::vector<int>{1, 1}), std::invalid_argument);

    const auto a2 = build_root_system(Family::A, 2);
    const auto p = boundary_potential(a2, std::vector<int>{1, -1, 1});
    CHECK(p.coefficients()[1] == doctest::Approx(-2.0));
    CHECK_THROWS_AS(boundary_potential(a2, std::vector<double>{1.0, 2.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(boundary_potential(a2, std::vector<int>{1, 0, 1}), std::invalid_argument);

    // each boundary term squared is 4 n_i exp(alpha_i.phi), four times the bulk term n_i exp(alpha_i.phi)
    const auto d4 = build_root_system(Family::D, 4);
    const auto pd = boundary_potential(d4, std::vector<int>{1, 1, 1, 1, 1});
    const std::vector<double> phi{0.3, -0.2, 0.1, 0.5};
    for (std::size_t i = 0; i < 5; ++i) {
        double s = 0;
        for (std::size_t a = 0; a < 4; ++a) s += pd.roots()[i][a] * phi[a];
        const double t = pd.term(i, phi);
        CHECK(t * t == doctest::Approx(4.0 * d4.marks()[i] * std::exp(s)));
    }

    // gradient against central differences
    const double h = 1e-6;
    const auto g = pd.gradient(phi);
    for (std::size_t a = 0; a < 4; ++a) {
        auto up = phi, dn = phi;
        up[a] += h;
        dn[a] -= h;
        CHECK(g[a] == doctest::Approx((pd.value(up) - pd.value(dn)) / (2 * h)).epsilon(1e-7));
    }
}
