#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "intfield/algebra.hpp"
#include "intfield/polynomial.hpp"

namespace intfield {

/// Square matrix whose entries are polynomials in the k_1 coefficients c_0..c_r.
class PolyMatrix {
public:
    PolyMatrix(std::size_t n, std::size_t nvars);
    PolyMatrix(const RationalMatrix& m, std::size_t nvars);

    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] std::size_t nvars() const { return nvars_; }
    Polynomial& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Polynomial& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    [[nodiscard]] bool is_zero() const;

    PolyMatrix& operator+=(const PolyMatrix& o);
    PolyMatrix& operator-=(const PolyMatrix& o);
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const Polynomial& s, const PolyMatrix& a);

    [[nodiscard]] nlohmann::json to_json() const;

private:
    std::size_t n_;
    std::size_t nvars_;
    std::vector<Polynomial> a_;
};

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix anticommutator(const PolyMatrix& a, const PolyMatrix& b);

/// Outcome for one affine node.
struct NodeConstraint {
    int node = 0;
    bool fixed = false;
    Rational b_squared;    ///< meaningful when fixed
    std::string relation;  ///< e.g. "b_1^2 = 4" or "free"
};

struct ConstraintReport {
    std::string system;
    std::string route;  ///< "matrix" or "adjacency"
    bool consistent = true;
    std::string message;
    std::vector<NodeConstraint> nodes;
    int free_parameters = 0;
    std::vector<std::vector<int>> sign_choices;

    /// {system, route, consistent, message, constraints:[{node, relation}], free_parameters, sign_choices}
    [[nodiscard]] nlohmann::json to_json() const;
};

/// Order-by-order solution of the boundary gauge condition for K(lambda).
struct KExpansion {
    std::string system;
    std::size_t symbols = 0;  ///< c_0..c_r
    /// Null space of the O(1) equation lies in span{E_{alpha_i}} + centre.
    bool k1_simple_support = false;
    std::size_t k1_solution_dimension = 0;
    /// O(1) balance: [k1, m_i E_{-alpha_i}] = m_i c_i (2/alpha_i^2) H.alpha_i for every node.
    bool gradient_identity = false;
    /// O(lambda) system is consistent and its solution differs from k1^2/2 by a central element.
    bool k2_central = false;
    PolyMatrix k1;
    PolyMatrix K2;  ///< coefficient of lambda^2 in K with k2 = 0
    PolyMatrix K3;  ///< particular solution at lambda^3 (free unknowns set to zero)
    PolyMatrix k3;  ///< K3 - k1^3/6
    std::vector<Polynomial> raw_conditions;      ///< solvability conditions at O(lambda^2)
    std::vector<Polynomial> reduced_conditions;  ///< reduced basis of their span
    ConstraintReport report;

    /// Per-order coefficient matrices of K(lambda).
    [[nodiscard]] nlohmann::json series_json() const;
};

/// Matrix route: requires family A with rank <= 5.
KExpansion solve_k_expansion(const RootSystem& rs, const MatrixRep& rep);

/// Adjacency route, valid for every simply-laced system.
ConstraintReport adjacency_constraints(const RootSystem& rs);

/// Interprets solvability conditions in the c_i assuming every c_i != 0.
/// `b_scale[i]` converts c_i^2 = s into b_i^2 = b_scale[i] s.
ConstraintReport interpret_conditions(const std::string& system, const std::vector<Polynomial>& reduced,
                                      const std::vector<Rational>& b_scale);

/// b_i^2 / c_i^2 = 2 n_i / alpha_i^2 for each affine node.
std::vector<Rational> b_over_c_squared(const RootSystem& rs);

/// Boundary potential B(phi) = sum_i b_i exp(alpha_i . phi / 2) in field-space coordinates.
class BoundaryPotential {
public:
    BoundaryPotential(std::vector<double> coefficients, std::vector<std::vector<double>> roots);

    [[nodiscard]] const std::vector<double>& coefficients() const { return b_; }
    [[nodiscard]] const std::vector<std::vector<double>>& roots() const { return roots_; }
    [[nodiscard]] std::size_t components() const { return roots_.front().size(); }
    [[nodiscard]] double value(const std::vector<double>& phi) const;
    [[nodiscard]] std::vector<double> gradient(const std::vector<double>& phi) const;
    [[nodiscard]] double term(std::size_t i, const std::vector<double>& phi) const;

private:
    std::vector<double> b_;
    std::vector<std::vector<double>> roots_;
};

/// Rank >= 2: b_i = sign_i * 2 sqrt(n_i). Rejects rank 1 (use the coefficient overload).
BoundaryPotential boundary_potential(const RootSystem& rs, const std::vector<int>& signs);
/// Explicit coefficients; for rank >= 2 they must satisfy b_i^2 = 4 n_i.
BoundaryPotential boundary_potential(const RootSystem& rs, const std::vector<double>& coefficients);

}  // namespace intfield
