#pragma once

#include <vector>

#include "intfield/polynomial.hpp"
#include "intfield/rational.hpp"

namespace intfield {

/// Linear system A x = b with a constant rational matrix A and a right-hand side
/// whose entries are polynomials in a set of symbols.
struct SymbolicSystem {
    std::size_t unknowns = 0;
    std::size_t symbols = 0;
    std::vector<std::vector<Rational>> rows;
    std::vector<Polynomial> rhs;

    void add_equation(std::vector<Rational> row, Polynomial value);
};

struct SymbolicSolution {
    std::size_t rank = 0;
    /// One solution with every free unknown set to zero; valid wherever the
    /// consistency conditions vanish.
    std::vector<Polynomial> particular;
    /// Basis of the null space of A.
    std::vector<std::vector<Rational>> nullspace;
    /// Polynomials that must vanish for the system to be solvable.
    std::vector<Polynomial> conditions;
};

/// Exact Gauss-Jordan elimination; row operations act on the polynomial right-hand side.
SymbolicSolution solve_symbolic(const SymbolicSystem& system);

}  // namespace intfield
