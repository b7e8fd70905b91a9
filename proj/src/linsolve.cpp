#include "intfield/linsolve.hpp"

#include <stdexcept>

namespace intfield {

void SymbolicSystem::add_equation(std::vector<Rational> row, Polynomial value) {
    if (row.size() != unknowns) throw std::invalid_argument("SymbolicSystem: row length mismatch");
    if (value.nvars() != symbols) throw std::invalid_argument("SymbolicSystem: symbol count mismatch");
    rows.push_back(std::move(row));
    rhs.push_back(std::move(value));
}

SymbolicSolution solve_symbolic(const SymbolicSystem& system) {
    std::vector<std::vector<Rational>> a = system.rows;
    std::vector<Polynomial> b = system.rhs;
    const std::size_t m = a.size();
    const std::size_t n = system.unknowns;

    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t p = row;
        while (p < m && a[p][col].is_zero()) ++p;
        if (p == m) continue;
        std::swap(a[p], a[row]);
        std::swap(b[p], b[row]);
        const Rational inv = Rational(1) / a[row][col];
        for (auto& q : a[row]) q *= inv;
        b[row] *= inv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            const Rational f = a[r][col];
            for (std::size_t c = col; c < n; ++c)
                if (!a[row][c].is_zero()) a[r][c] -= f * a[row][c];
            b[r] -= b[row] * f;
        }
        pivot_col.push_back(col);
        ++row;
    }

    SymbolicSolution sol;
    sol.rank = row;
    sol.particular.assign(n, Polynomial(system.symbols));
    for (std::size_t r = 0; r < row; ++r) sol.particular[pivot_col[r]] = b[r];
    for (std::size_t r = row; r < m; ++r)
        if (!b[r].is_zero()) sol.conditions.push_back(b[r]);

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[f] = Rational(1);
        for (std::size_t r = 0; r < row; ++r) v[pivot_col[r]] = -a[r][f];
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

}  // namespace intfield
