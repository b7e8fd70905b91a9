#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "intfield/rational.hpp"

namespace intfield {

enum class Family { A, D, E };

Family parse_family(const std::string& s);
char family_letter(Family f);

using RationalVector = std::vector<Rational>;
using Coeffs = std::vector<int>;

Rational dot(const RationalVector& a, const RationalVector& b);

struct Root {
    RationalVector vector;  ///< Euclidean embedding
    Coeffs coeffs;          ///< expansion over the simple roots
    int height = 0;
};

/// Simply-laced root system together with its affine extension.
///
/// Node indices 0..r refer to the affine diagram: node 0 is the affine root
/// alpha_0 = -sum n_i alpha_i, nodes 1..r are the simple roots.
class RootSystem {
public:
    [[nodiscard]] Family family() const { return family_; }
    [[nodiscard]] int rank() const { return rank_; }
    [[nodiscard]] std::string name() const;
    [[nodiscard]] std::size_t embedding_dimension() const { return simple_.front().size(); }

    /// Simple roots alpha_1..alpha_r (index 0 here is alpha_1).
    [[nodiscard]] const std::vector<RationalVector>& simple_roots() const { return simple_; }
    /// Marks n_0..n_r with n_0 = 1.
    [[nodiscard]] const std::vector<int>& marks() const { return marks_; }
    [[nodiscard]] const RationalVector& alpha0() const { return alpha0_; }
    /// Affine node i in 0..r.
    [[nodiscard]] const RationalVector& affine_root(int i) const;
    [[nodiscard]] Coeffs affine_coeffs(int i) const;
    [[nodiscard]] const std::vector<std::vector<int>>& cartan() const { return cartan_; }
    [[nodiscard]] int coxeter_number() const { return coxeter_; }
    [[nodiscard]] const std::vector<Root>& roots() const { return roots_; }

    [[nodiscard]] std::optional<std::size_t> find_root(const Coeffs& c) const;
    [[nodiscard]] bool is_root(const Coeffs& c) const { return find_root(c).has_value(); }
    /// True when alpha_i + alpha_j is a root (affine nodes i, j in 0..r).
    [[nodiscard]] bool adjacent(int i, int j) const;

    /// Orthonormal basis (r vectors in the embedding space) of the span of the roots.
    [[nodiscard]] const std::vector<std::vector<double>>& orthonormal_basis() const { return basis_; }
    /// Affine roots alpha_0..alpha_r in the r-dimensional orthonormal coordinates.
    [[nodiscard]] const std::vector<std::vector<double>>& field_space_roots() const { return field_roots_; }

    /// Root-system dump {family, rank, marks, cartan, coxeter_number, roots:[{vector, coeffs, height}]}.
    [[nodiscard]] nlohmann::json to_json() const;

    /// Re-runs reflection closure on the stored root set; returns the number of new roots found.
    [[nodiscard]] std::size_t closure_additions() const;

    friend RootSystem build_root_system(Family family, int rank);

private:
    RootSystem() = default;

    Family family_ = Family::A;
    int rank_ = 0;
    std::vector<RationalVector> simple_;
    std::vector<int> marks_;
    RationalVector alpha0_;
    std::vector<std::vector<int>> cartan_;
    int coxeter_ = 0;
    std::vector<Root> roots_;
    std::map<Coeffs, std::size_t> index_;
    std::vector<std::vector<double>> basis_;
    std::vector<std::vector<double>> field_roots_;
};

/// Builds A_r (r>=1), D_r (r>=4) or E_6/E_7/E_8; throws std::invalid_argument otherwise.
RootSystem build_root_system(Family family, int rank);

/// Sign cocycle on the root lattice.
///
/// eps is the bimultiplicative form fixed on simple roots by
/// eps(a_i, a_j) = (-1)^{a_i.a_j} for i < j, -1 for i == j, +1 for i > j,
/// so that eps(a, b) eps(b, a) = (-1)^{a.b} and eps(a, a) = (-1)^{a.a/2}.
class Cocycle {
public:
    explicit Cocycle(const RootSystem& rs);

    /// Bimultiplicative sign on arbitrary lattice vectors.
    [[nodiscard]] int lattice_sign(const Coeffs& a, const Coeffs& b) const;
    /// eps(a, b) for roots with a + b a root; throws std::invalid_argument otherwise.
    [[nodiscard]] int epsilon(const Coeffs& a, const Coeffs& b) const;

private:
    const RootSystem* rs_;
    std::vector<std::vector<int>> exponent_;
};

/// Lie algebra realized on the root lattice with structure constants from a cocycle.
///
/// Basis: one step operator per root (in RootSystem::roots() order) followed by
/// the r Cartan elements h_i = alpha_i. Elements are dense coefficient vectors.
class LatticeLieAlgebra {
public:
    using Element = std::vector<Rational>;

    explicit LatticeLieAlgebra(const RootSystem& rs);

    [[nodiscard]] std::size_t dimension() const { return nroots_ + rank_; }
    [[nodiscard]] Element basis_element(std::size_t k) const;
    [[nodiscard]] Element bracket(const Element& x, const Element& y) const;

private:
    [[nodiscard]] Element bracket_basis(std::size_t a, std::size_t b) const;

    const RootSystem* rs_;
    Cocycle cocycle_;
    std::size_t nroots_;
    std::size_t rank_;
    std::vector<std::vector<Element>> table_;
};

/// Dense square matrix over the rationals.
class RationalMatrix {
public:
    explicit RationalMatrix(std::size_t n = 0) : n_(n), a_(n * n, Rational(0)) {}
    static RationalMatrix identity(std::size_t n);
    static RationalMatrix unit(std::size_t n, std::size_t i, std::size_t j);

    [[nodiscard]] std::size_t size() const { return n_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    [[nodiscard]] bool is_zero() const;

    RationalMatrix& operator+=(const RationalMatrix& o);
    RationalMatrix& operator-=(const RationalMatrix& o);
    friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) { return a += b; }
    friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) { return a -= b; }
    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
    friend RationalMatrix operator*(const Rational& s, RationalMatrix a);
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

private:
    std::size_t n_;
    std::vector<Rational> a_;
};

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix anticommutator(const RationalMatrix& a, const RationalMatrix& b);

/// Defining (N = r+1) representation of a_r.
///
/// Cartan generators are indexed by embedding coordinates: H_k = e_kk - I/N,
/// so that H.u = diag(u) for u in the root hyperplane and [H.u, E_a] = (a.u) E_a
/// for every u. Step operators are matrix units, E_{e_i - e_j} = e_ij.
struct MatrixRep {
    std::size_t dimension = 0;
    std::vector<RationalMatrix> cartan;  ///< H_k, k = 1..N
    std::vector<RationalMatrix> step;    ///< parallel to RootSystem::roots()

    [[nodiscard]] RationalMatrix cartan_element(const RationalVector& u) const;
    /// E_{+alpha_i} (sign > 0) or E_{-alpha_i} for affine node i in 0..r.
    [[nodiscard]] const RationalMatrix& affine_step(const RootSystem& rs, int node, int sign) const;
};

/// Builds the defining representation and verifies the commutation relations;
/// throws std::invalid_argument for families other than A.
MatrixRep defining_rep(const RootSystem& rs);

/// m_i^2 = n_i alpha_i^2 / 8 for i = 0..r (exact).
std::vector<Rational> mass_squared(const RootSystem& rs);
/// Positive square roots of mass_squared.
std::vector<double> mass_coefficients(const RootSystem& rs);

}  // namespace intfield
