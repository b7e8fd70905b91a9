#pragma once

#include <map>
#include <string>
#include <vector>

#include "intfield/rational.hpp"

namespace intfield {

/// Exponent vector of a monomial in a fixed set of variables.
using Monomial = std::vector<int>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// All polynomials that are combined must share the same variable count.
/// Zero coefficients are never stored.
class Polynomial {
public:
    explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}
    Polynomial(std::size_t nvars, const Rational& constant);

    static Polynomial variable(std::size_t nvars, std::size_t index);

    [[nodiscard]] std::size_t nvars() const { return nvars_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_constant() const;
    [[nodiscard]] int degree() const;
    [[nodiscard]] const std::map<Monomial, Rational>& terms() const { return terms_; }
    [[nodiscard]] Rational coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const Rational& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    Polynomial operator-() const { return *this * Rational(-1); }
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    [[nodiscard]] Rational evaluate(const std::vector<Rational>& x) const;
    [[nodiscard]] double evaluate(const std::vector<double>& x) const;

    /// Largest monomial dividing every term (componentwise minimum exponent).
    [[nodiscard]] Monomial monomial_content() const;
    /// Divides every term by a monomial; the monomial must divide every term.
    [[nodiscard]] Polynomial divide_monomial(const Monomial& m) const;
    /// Variables that occur with nonzero exponent.
    [[nodiscard]] std::vector<std::size_t> support() const;

    [[nodiscard]] std::string str(const std::vector<std::string>& names) const;
    [[nodiscard]] std::string str(const std::string& prefix = "c") const;

private:
    std::size_t nvars_;
    std::map<Monomial, Rational> terms_;
};

/// Graded order: higher total degree first, then lexicographically larger.
bool graded_greater(const Monomial& a, const Monomial& b);

/// Row-reduces a list of polynomials viewed as vectors over the monomial basis
/// (graded order, leading monomials first). Returns a reduced basis of their
/// Q-linear span, each element normalized to leading coefficient 1.
std::vector<Polynomial> reduce_linear_span(const std::vector<Polynomial>& polys);

}  // namespace intfield
