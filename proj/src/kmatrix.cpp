#include "intfield/kmatrix.hpp"

#include <cmath>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "intfield/linsolve.hpp"

namespace intfield {

PolyMatrix::PolyMatrix(std::size_t n, std::size_t nvars) : n_(n), nvars_(nvars), a_(n * n, Polynomial(nvars)) {}

PolyMatrix::PolyMatrix(const RationalMatrix& m, std::size_t nvars) : PolyMatrix(m.size(), nvars) {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) (*this)(i, j) = Polynomial(nvars, m(i, j));
}

bool PolyMatrix::is_zero() const {
    for (const auto& p : a_)
        if (!p.is_zero()) return false;
    return true;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    PolyMatrix c(a.n_, a.nvars_);
    for (std::size_t i = 0; i < a.n_; ++i)
        for (std::size_t k = 0; k < a.n_; ++k) {
            if (a(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < a.n_; ++j)
                if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

PolyMatrix operator*(const Polynomial& s, const PolyMatrix& a) {
    PolyMatrix c(a.n_, a.nvars_);
    for (std::size_t k = 0; k < a.a_.size(); ++k) c.a_[k] = s * a.a_[k];
    return c;
}

nlohmann::json PolyMatrix::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < n_; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < n_; ++j) row.push_back((*this)(i, j).str("c"));
        rows.push_back(row);
    }
    return rows;
}

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b) { return a * b - b * a; }
PolyMatrix anticommutator(const PolyMatrix& a, const PolyMatrix& b) { return a * b + b * a; }

nlohmann::json ConstraintReport::to_json() const {
    nlohmann::json j;
    j["system"] = system;
    j["route"] = route;
    j["consistent"] = consistent;
    j["message"] = message;
    j["constraints"] = nlohmann::json::array();
    for (const auto& n : nodes) {
        nlohmann::json c{{"node", n.node}, {"relation", n.relation}, {"fixed", n.fixed}};
        if (n.fixed) c["b_squared"] = n.b_squared.str();
        j["constraints"].push_back(c);
    }
    j["free_parameters"] = free_parameters;
    j["sign_choices"] = sign_choices.size();
    j["sign_vectors"] = sign_choices;
    return j;
}

std::vector<Rational> b_over_c_squared(const RootSystem& rs) {
    std::vector<Rational> s;
    for (int i = 0; i <= rs.rank(); ++i) {
        const RationalVector& a = rs.affine_root(i);
        s.push_back(Rational(2 * rs.marks()[i]) / dot(a, a));
    }
    return s;
}

namespace {

std::vector<std::vector<int>> all_signs(std::size_t n) {
    std::vector<std::vector<int>> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<int> s(n);
        for (std::size_t b = 0; b < n; ++b) s[b] = (mask >> b) & 1 ? -1 : 1;
        out.push_back(s);
    }
    return out;
}

void finish_report(ConstraintReport& rep) {
    rep.free_parameters = 0;
    for (const auto& n : rep.nodes)
        if (!n.fixed) ++rep.free_parameters;
    rep.sign_choices.clear();
    if (rep.consistent && rep.free_parameters == 0) rep.sign_choices = all_signs(rep.nodes.size());
    if (rep.consistent && rep.message.empty())
        rep.message = rep.free_parameters == 0 ? "all boundary coefficients fixed up to sign"
                                               : "boundary coefficients unconstrained";
}

std::string b_relation(int node, const Rational& v) {
    return "b_" + std::to_string(node) + "^2 = " + v.str();
}

// Rows of the linear map X -> [X, R_i] for each i, one row per matrix entry.
void append_commutator_rows(SymbolicSystem& sys, const std::vector<RationalMatrix>& right,
                            const std::vector<PolyMatrix>& rhs, std::size_t extra_offset = 0,
                            const std::vector<RationalMatrix>* extra = nullptr) {
    const std::size_t n = right.front().size();
    for (std::size_t i = 0; i < right.size(); ++i) {
        const RationalMatrix& r = right[i];
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                std::vector<Rational> row(sys.unknowns, Rational(0));
                for (std::size_t p = 0; p < n; ++p)
                    for (std::size_t q = 0; q < n; ++q) {
                        Rational c(0);
                        if (p == a) c += r(q, b);
                        if (q == b) c -= r(a, p);
                        row[p * n + q] = c;
                    }
                if (extra) row[extra_offset + i] = -(*extra)[i](a, b);
                sys.add_equation(std::move(row), rhs.empty() ? Polynomial(sys.symbols) : rhs[i](a, b));
            }
    }
}

PolyMatrix unpack(const std::vector<Polynomial>& x, std::size_t n, std::size_t nvars) {
    PolyMatrix m(n, nvars);
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) m(p, q) = x[p * n + q];
    return m;
}

bool is_central(const PolyMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (i != j && !m(i, j).is_zero()) return false;
            if (i == j && !(m(i, i) == m(0, 0))) return false;
        }
    return true;
}

}  // namespace

ConstraintReport interpret_conditions(const std::string& system, const std::vector<Polynomial>& reduced,
                                      const std::vector<Rational>& b_scale) {
    ConstraintReport rep;
    rep.system = system;
    rep.route = "matrix";
    const std::size_t nodes = b_scale.size();
    std::vector<std::optional<Rational>> value(nodes);
    std::vector<std::string> unresolved;

    std::set<std::map<Monomial, Rational>> seen;
    for (const auto& p : reduced) {
        if (p.is_zero()) continue;
        const Polynomial q = p.divide_monomial(p.monomial_content());
        if (!seen.insert(q.terms()).second) continue;
        if (q.is_constant()) {
            rep.consistent = false;
            unresolved.push_back(p.str("c") + " = 0 (requires a vanishing c_i)");
            continue;
        }
        const auto vars = q.support();
        bool handled = false;
        if (vars.size() == 1 && q.degree() == 2 && q.terms().size() == 2) {
            const std::size_t v = vars.front();
            Monomial sq(q.nvars(), 0);
            sq[v] = 2;
            const Rational lead = q.coefficient(sq);
            const Rational c0 = q.coefficient(Monomial(q.nvars(), 0));
            if (!lead.is_zero() && !c0.is_zero()) {
                const Rational s = -c0 / lead;
                if (s > Rational(0)) {
                    const Rational b2 = b_scale[v] * s;
                    if (value[v] && !(*value[v] == b2)) {
                        rep.consistent = false;
                        unresolved.push_back("conflicting values for b_" + std::to_string(v));
                    }
                    value[v] = b2;
                    handled = true;
                }
            }
        }
        if (!handled) {
            rep.consistent = false;
            unresolved.push_back(q.str("c") + " = 0");
        }
    }

    for (std::size_t i = 0; i < nodes; ++i) {
        NodeConstraint nc;
        nc.node = static_cast<int>(i);
        if (value[i]) {
            nc.fixed = true;
            nc.b_squared = *value[i];
            nc.relation = b_relation(nc.node, nc.b_squared);
        } else {
            nc.relation = "free";
        }
        rep.nodes.push_back(nc);
    }
    if (!rep.consistent) {
        std::ostringstream os;
        os << "no integrable boundary of this form:";
        for (const auto& u : unresolved) os << ' ' << u << ';';
        rep.message = os.str();
    }
    finish_report(rep);
    return rep;
}

KExpansion solve_k_expansion(const RootSystem& rs, const MatrixRep& rep) {
    if (rs.family() != Family::A || rs.rank() > 5)
        throw std::invalid_argument("solve_k_expansion: matrix route supports A_1..A_5 (got " + rs.name() +
                                    "); use the adjacency route");
    const std::size_t n = rep.dimension;
    const std::size_t nodes = static_cast<std::size_t>(rs.rank()) + 1;
    const std::size_t nv = nodes;

    std::vector<RationalMatrix> up, down, h;
    std::vector<Rational> inv_len;  // 1 / alpha_i^2
    for (int i = 0; i <= rs.rank(); ++i) {
        up.push_back(rep.affine_step(rs, i, +1));
        down.push_back(rep.affine_step(rs, i, -1));
        h.push_back(rep.cartan_element(rs.affine_root(i)));
        inv_len.push_back(Rational(1) / dot(rs.affine_root(i), rs.affine_root(i)));
    }

    KExpansion out{.system = rs.name(),
                   .symbols = nv,
                   .k1 = PolyMatrix(n, nv),
                   .K2 = PolyMatrix(n, nv),
                   .K3 = PolyMatrix(n, nv),
                   .k3 = PolyMatrix(n, nv),
                   .raw_conditions = {},
                   .reduced_conditions = {},
                   .report = {}};

    // O(1): [K1, E_{-i}] must be proportional to alpha_i.H.
    {
        std::vector<RationalMatrix> target;
        for (std::size_t i = 0; i < nodes; ++i) target.push_back((Rational(2) * inv_len[i]) * h[i]);
        SymbolicSystem sys;
        sys.unknowns = n * n + nodes;
        sys.symbols = 1;
        append_commutator_rows(sys, down, {}, n * n, &target);
        const auto sol = solve_symbolic(sys);
        out.k1_solution_dimension = sol.nullspace.size();

        std::set<std::pair<std::size_t, std::size_t>> allowed;
        for (const auto& e : up)
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q)
                    if (!e(p, q).is_zero()) allowed.insert({p, q});
        bool ok = sol.nullspace.size() == nodes + 1;
        for (const auto& v : sol.nullspace) {
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) {
                    const Rational& x = v[p * n + q];
                    if (p != q && !x.is_zero() && !allowed.count({p, q})) ok = false;
                    if (p == q && !(x == v[0])) ok = false;
                }
        }
        out.k1_simple_support = ok;
    }

    for (std::size_t i = 0; i < nodes; ++i)
        out.k1 += Polynomial::variable(nv, i) * PolyMatrix(up[i], nv);

    out.gradient_identity = true;
    for (std::size_t i = 0; i < nodes; ++i) {
        const PolyMatrix lhs = commutator(out.k1, PolyMatrix(down[i], nv));
        const PolyMatrix rhs = (Polynomial::variable(nv, i) * (Rational(2) * inv_len[i])) * PolyMatrix(h[i], nv);
        if (!(lhs - rhs).is_zero()) out.gradient_identity = false;
    }

    // O(lambda): [K2, E_{-i}] = (c_i / alpha_i^2) {k1, H_i}.
    {
        std::vector<PolyMatrix> rhs;
        for (std::size_t i = 0; i < nodes; ++i)
            rhs.push_back((Polynomial::variable(nv, i) * inv_len[i]) * anticommutator(out.k1, PolyMatrix(h[i], nv)));
        SymbolicSystem sys;
        sys.unknowns = n * n;
        sys.symbols = nv;
        append_commutator_rows(sys, down, rhs);
        const auto sol = solve_symbolic(sys);
        const PolyMatrix half_sq = Polynomial(nv, Rational(1, 2)) * (out.k1 * out.k1);
        const PolyMatrix particular = unpack(sol.particular, n, nv);
        out.k2_central = sol.conditions.empty() && sol.nullspace.size() == 1 && is_central(particular - half_sq);
        out.K2 = half_sq;
    }

    // O(lambda^2): [K3, E_{-i}] = (c_i / alpha_i^2) {K2, H_i} + [k1, E_i].
    {
        std::vector<PolyMatrix> rhs;
        for (std::size_t i = 0; i < nodes; ++i)
            rhs.push_back((Polynomial::variable(nv, i) * inv_len[i]) * anticommutator(out.K2, PolyMatrix(h[i], nv)) +
                          commutator(out.k1, PolyMatrix(up[i], nv)));
        SymbolicSystem sys;
        sys.unknowns = n * n;
        sys.symbols = nv;
        append_commutator_rows(sys, down, rhs);
        const auto sol = solve_symbolic(sys);
        out.K3 = unpack(sol.particular, n, nv);
        out.k3 = out.K3 - Polynomial(nv, Rational(1, 6)) * (out.k1 * out.k1 * out.k1);
        out.raw_conditions = sol.conditions;
        out.reduced_conditions = reduce_linear_span(sol.conditions);
    }

    out.report = interpret_conditions(rs.name(), out.reduced_conditions, b_over_c_squared(rs));
    return out;
}

nlohmann::json KExpansion::series_json() const {
    nlohmann::json j;
    j["system"] = system;
    j["symbols"] = "c_i, with b_i = sqrt(2 n_i / alpha_i^2) c_i";
    j["orders"] = nlohmann::json::array();
    j["orders"].push_back({{"power", 1}, {"K", k1.to_json()}});
    j["orders"].push_back({{"power", 2}, {"K", K2.to_json()}});
    j["orders"].push_back({{"power", 3}, {"K", K3.to_json()}, {"k3", k3.to_json()}});
    j["conditions"] = nlohmann::json::array();
    for (const auto& p : reduced_conditions) j["conditions"].push_back(p.str("c") + " = 0");
    return j;
}

ConstraintReport adjacency_constraints(const RootSystem& rs) {
    ConstraintReport rep;
    rep.system = rs.name();
    rep.route = "adjacency";
    const auto m2 = mass_squared(rs);
    const auto scale = b_over_c_squared(rs);
    for (int i = 0; i <= rs.rank(); ++i) {
        NodeConstraint nc;
        nc.node = i;
        const RationalVector& ai = rs.affine_root(i);
        for (int j = 0; j <= rs.rank(); ++j) {
            if (j == i || !rs.adjacent(i, j)) continue;
            // m_i + (b_i c_i / 24)(a_i.a_j - a_i.a_i) = 0, and b_i = sqrt(scale_i) c_i,
            // so b_i^4 = (b_i c_i)^2 scale_i = 576 m_i^2 scale_i / gap^2.
            const Rational gap = dot(ai, ai) - dot(ai, rs.affine_root(j));
            const Rational b4 = Rational(576) * m2[static_cast<std::size_t>(i)] / (gap * gap) *
                                scale[static_cast<std::size_t>(i)];
            Rational b2;
            if (!exact_sqrt(b4, b2)) {
                rep.consistent = false;
                rep.message = "adjacency relation for node " + std::to_string(i) + " has no rational b_i^2";
                continue;
            }
            if (nc.fixed && !(nc.b_squared == b2)) {
                rep.consistent = false;
                rep.message = "adjacent pairs disagree at node " + std::to_string(i);
            }
            nc.fixed = true;
            nc.b_squared = b2;
        }
        nc.relation = nc.fixed ? b_relation(i, nc.b_squared) : "free";
        rep.nodes.push_back(nc);
    }
    finish_report(rep);
    return rep;
}

BoundaryPotential::BoundaryPotential(std::vector<double> coefficients, std::vector<std::vector<double>> roots)
    : b_(std::move(coefficients)), roots_(std::move(roots)) {
    if (b_.size() != roots_.size() || roots_.empty())
        throw std::invalid_argument("BoundaryPotential: one coefficient per affine root required");
}

double BoundaryPotential::term(std::size_t i, const std::vector<double>& phi) const {
    double s = 0;
    for (std::size_t a = 0; a < phi.size(); ++a) s += roots_[i][a] * phi[a];
    return b_[i] * std::exp(0.5 * s);
}

double BoundaryPotential::value(const std::vector<double>& phi) const {
    if (phi.size() != components()) throw std::invalid_argument("BoundaryPotential: field dimension mismatch");
    double v = 0;
    for (std::size_t i = 0; i < b_.size(); ++i) v += term(i, phi);
    return v;
}

std::vector<double> BoundaryPotential::gradient(const std::vector<double>& phi) const {
    if (phi.size() != components()) throw std::invalid_argument("BoundaryPotential: field dimension mismatch");
    std::vector<double> g(phi.size(), 0.0);
    for (std::size_t i = 0; i < b_.size(); ++i) {
        const double t = 0.5 * term(i, phi);
        for (std::size_t a = 0; a < phi.size(); ++a) g[a] += t * roots_[i][a];
    }
    return g;
}

BoundaryPotential boundary_potential(const RootSystem& rs, const std::vector<int>& signs) {
    if (rs.rank() < 2)
        throw std::invalid_argument("boundary_potential: A_1 magnitudes are free; pass coefficients explicitly");
    if (signs.size() != static_cast<std::size_t>(rs.rank()) + 1)
        throw std::invalid_argument("boundary_potential: expected " + std::to_string(rs.rank() + 1) + " signs");
    std::vector<double> b;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] != 1 && signs[i] != -1) throw std::invalid_argument("boundary_potential: signs must be +1 or -1");
        b.push_back(signs[i] * 2.0 * std::sqrt(static_cast<double>(rs.marks()[i])));
    }
    return {b, rs.field_space_roots()};
}

BoundaryPotential boundary_potential(const RootSystem& rs, const std::vector<double>& coefficients) {
    if (coefficients.size() != static_cast<std::size_t>(rs.rank()) + 1)
        throw std::invalid_argument("boundary_potential: expected " + std::to_string(rs.rank() + 1) +
                                    " coefficients");
    if (rs.rank() >= 2) {
        for (std::size_t i = 0; i < coefficients.size(); ++i) {
            const double want = 4.0 * rs.marks()[i];
            const double b2 = coefficients[i] * coefficients[i];
            if (std::abs(b2 - want) > 1e-9 * want) {
                std::ostringstream os;
                os << "boundary_potential: " << rs.name() << " requires b_i^2 = 4 n_i; node " << i << " has b^2 = " << b2
                   << ", expected " << want;
                throw std::invalid_argument(os.str());
            }
        }
    }
    return {coefficients, rs.field_space_roots()};
}

}  // namespace intfield
