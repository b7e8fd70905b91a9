#include "intfield/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace intfield {

namespace {

const char* kSupported = "supported simply-laced systems: A_r (r>=1), D_r (r>=4), E_6, E_7, E_8";

RationalVector unit_vector(std::size_t dim, std::size_t i, int sign = 1) {
    RationalVector v(dim, Rational(0));
    v[i] = Rational(sign);
    return v;
}

RationalVector difference(const RationalVector& a, const RationalVector& b) {
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RationalVector sum(const RationalVector& a, const RationalVector& b) {
    RationalVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

std::vector<RationalVector> simple_roots_for(Family family, int rank) {
    std::vector<RationalVector> s;
    switch (family) {
        case Family::A: {
            const std::size_t dim = static_cast<std::size_t>(rank) + 1;
            for (int i = 0; i < rank; ++i) s.push_back(difference(unit_vector(dim, i), unit_vector(dim, i + 1)));
            break;
        }
        case Family::D: {
            const std::size_t dim = static_cast<std::size_t>(rank);
            for (int i = 0; i + 1 < rank; ++i) s.push_back(difference(unit_vector(dim, i), unit_vector(dim, i + 1)));
            s.push_back(sum(unit_vector(dim, rank - 2), unit_vector(dim, rank - 1)));
            break;
        }
        case Family::E: {
            // Bourbaki labelling inside R^8; E_6 and E_7 are the first 6 and 7 roots.
            const Rational h(1, 2);
            s.push_back(RationalVector{h, -h, -h, -h, -h, -h, -h, h});
            s.push_back(sum(unit_vector(8, 0), unit_vector(8, 1)));
            for (int i = 0; i < 6; ++i) s.push_back(difference(unit_vector(8, i + 1), unit_vector(8, i)));
            s.resize(static_cast<std::size_t>(rank));
            break;
        }
    }
    return s;
}

bool valid(Family family, int rank) {
    switch (family) {
        case Family::A: return rank >= 1;
        case Family::D: return rank >= 4;
        case Family::E: return rank >= 6 && rank <= 8;
    }
    return false;
}

}  // namespace

Family parse_family(const std::string& s) {
    if (s == "A" || s == "a") return Family::A;
    if (s == "D" || s == "d") return Family::D;
    if (s == "E" || s == "e") return Family::E;
    throw std::invalid_argument("unknown root-system family '" + s + "'; " + kSupported);
}

char family_letter(Family f) {
    switch (f) {
        case Family::A: return 'A';
        case Family::D: return 'D';
        case Family::E: return 'E';
    }
    return '?';
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string RootSystem::name() const { return std::string(1, family_letter(family_)) + std::to_string(rank_); }

const RationalVector& RootSystem::affine_root(int i) const {
    if (i < 0 || i > rank_) throw std::out_of_range("affine node index out of range");
    return i == 0 ? alpha0_ : simple_[static_cast<std::size_t>(i - 1)];
}

Coeffs RootSystem::affine_coeffs(int i) const {
    if (i < 0 || i > rank_) throw std::out_of_range("affine node index out of range");
    Coeffs c(static_cast<std::size_t>(rank_), 0);
    if (i == 0) {
        for (int k = 0; k < rank_; ++k) c[static_cast<std::size_t>(k)] = -marks_[static_cast<std::size_t>(k + 1)];
    } else {
        c[static_cast<std::size_t>(i - 1)] = 1;
    }
    return c;
}

std::optional<std::size_t> RootSystem::find_root(const Coeffs& c) const {
    auto it = index_.find(c);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool RootSystem::adjacent(int i, int j) const {
    if (i == j) return false;
    Coeffs a = affine_coeffs(i);
    const Coeffs b = affine_coeffs(j);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
    return is_root(a);
}

nlohmann::json RootSystem::to_json() const {
    nlohmann::json j;
    j["family"] = std::string(1, family_letter(family_));
    j["rank"] = rank_;
    j["marks"] = marks_;
    j["cartan"] = cartan_;
    j["coxeter_number"] = coxeter_;
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& r : roots_) {
        nlohmann::json v = nlohmann::json::array();
        for (const auto& q : r.vector) v.push_back(q.str());
        rs.push_back({{"vector", v}, {"coeffs", r.coeffs}, {"height", r.height}});
    }
    j["roots"] = rs;
    return j;
}

namespace {

// Reflection closure over (vector, coeffs) pairs, seeded with `seed`.
std::vector<Root> reflection_closure(const std::vector<RationalVector>& simple, const std::vector<Root>& seed) {
    const std::size_t r = simple.size();
    std::vector<std::vector<Rational>> gram(r, std::vector<Rational>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) gram[i][j] = dot(simple[i], simple[j]);

    std::set<Coeffs> seen;
    std::vector<Root> out;
    std::deque<Root> queue;
    for (const auto& s : seed) {
        if (seen.insert(s.coeffs).second) {
            out.push_back(s);
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        const Root cur = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < r; ++i) {
            // s_i(v) = v - (v.alpha_i) alpha_i   (alpha_i^2 = 2)
            Rational pairing(0);
            for (std::size_t k = 0; k < r; ++k) pairing += Rational(cur.coeffs[k]) * gram[k][i];
            if (!pairing.is_integer()) throw std::logic_error("non-integral root pairing");
            const int p = static_cast<int>(pairing.num());
            if (p == 0) continue;
            Root next = cur;
            next.coeffs[i] -= p;
            next.height -= p;
            for (std::size_t d = 0; d < next.vector.size(); ++d) next.vector[d] -= Rational(p) * simple[i][d];
            if (seen.insert(next.coeffs).second) {
                out.push_back(next);
                queue.push_back(next);
            }
        }
    }
    return out;
}

}  // namespace

std::size_t RootSystem::closure_additions() const {
    return reflection_closure(simple_, roots_).size() - roots_.size();
}

RootSystem build_root_system(Family family, int rank) {
    if (!valid(family, rank)) {
        throw std::invalid_argument(std::string("unsupported root system ") + family_letter(family) +
                                    std::to_string(rank) + "; " + kSupported);
    }
    RootSystem rs;
    rs.family_ = family;
    rs.rank_ = rank;
    rs.simple_ = simple_roots_for(family, rank);
    const auto r = static_cast<std::size_t>(rank);

    rs.cartan_.assign(r, std::vector<int>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            const Rational c = Rational(2) * dot(rs.simple_[i], rs.simple_[j]) / dot(rs.simple_[j], rs.simple_[j]);
            rs.cartan_[i][j] = static_cast<int>(c.num());
        }
    }

    std::vector<Root> seed;
    for (std::size_t i = 0; i < r; ++i) {
        Root s{rs.simple_[i], Coeffs(r, 0), 1};
        s.coeffs[i] = 1;
        seed.push_back(s);
    }
    std::vector<Root> roots = reflection_closure(rs.simple_, seed);
    std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
        const bool pa = a.height > 0;
        const bool pb = b.height > 0;
        if (pa != pb) return pa;
        const int ha = std::abs(a.height);
        const int hb = std::abs(b.height);
        if (ha != hb) return ha < hb;
        return pa ? a.coeffs > b.coeffs : a.coeffs < b.coeffs;
    });
    rs.roots_ = std::move(roots);
    for (std::size_t k = 0; k < rs.roots_.size(); ++k) rs.index_[rs.roots_[k].coeffs] = k;

    const auto highest = std::max_element(rs.roots_.begin(), rs.roots_.end(),
                                          [](const Root& a, const Root& b) { return a.height < b.height; });
    rs.marks_.assign(r + 1, 1);
    for (std::size_t i = 0; i < r; ++i) rs.marks_[i + 1] = highest->coeffs[i];
    rs.coxeter_ = highest->height + 1;
    rs.alpha0_.assign(rs.embedding_dimension(), Rational(0));
    for (std::size_t d = 0; d < rs.alpha0_.size(); ++d) rs.alpha0_[d] = -highest->vector[d];

    // Gram-Schmidt on the simple roots gives field-space coordinates.
    const std::size_t dim = rs.embedding_dimension();
    for (std::size_t i = 0; i < r; ++i) {
        std::vector<double> v(dim);
        for (std::size_t d = 0; d < dim; ++d) v[d] = rs.simple_[i][d].to_double();
        for (const auto& b : rs.basis_) {
            double p = 0.0;
            for (std::size_t d = 0; d < dim; ++d) p += v[d] * b[d];
            for (std::size_t d = 0; d < dim; ++d) v[d] -= p * b[d];
        }
        double n = 0.0;
        for (double x : v) n += x * x;
        n = std::sqrt(n);
        for (double& x : v) x /= n;
        rs.basis_.push_back(std::move(v));
    }
    for (int i = 0; i <= rank; ++i) {
        const RationalVector& a = rs.affine_root(i);
        std::vector<double> c(r);
        for (std::size_t b = 0; b < r; ++b) {
            double p = 0.0;
            for (std::size_t d = 0; d < dim; ++d) p += a[d].to_double() * rs.basis_[b][d];
            c[b] = p;
        }
        rs.field_roots_.push_back(std::move(c));
    }
    return rs;
}

// ---------------------------------------------------------------------------

Cocycle::Cocycle(const RootSystem& rs) : rs_(&rs) {
    const auto r = static_cast<std::size_t>(rs.rank());
    exponent_.assign(r, std::vector<int>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j) {
                exponent_[i][j] = 1;
            } else if (i < j) {
                const Rational p = dot(rs.simple_roots()[i], rs.simple_roots()[j]);
                exponent_[i][j] = static_cast<int>(((p.num() % 2) + 2) % 2);
            }
        }
    }
}

int Cocycle::lattice_sign(const Coeffs& a, const Coeffs& b) const {
    long parity = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) parity += static_cast<long>(a[i]) * b[j] * exponent_[i][j];
    }
    return (parity % 2 == 0) ? 1 : -1;
}

int Cocycle::epsilon(const Coeffs& a, const Coeffs& b) const {
    if (!rs_->is_root(a) || !rs_->is_root(b)) throw std::invalid_argument("epsilon: arguments must be roots");
    Coeffs s = a;
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += b[k];
    if (!rs_->is_root(s)) throw std::invalid_argument("epsilon: alpha + beta is not a root");
    return lattice_sign(a, b);
}

// ---------------------------------------------------------------------------

LatticeLieAlgebra::LatticeLieAlgebra(const RootSystem& rs)
    : rs_(&rs), cocycle_(rs), nroots_(rs.roots().size()), rank_(static_cast<std::size_t>(rs.rank())) {
    const std::size_t n = dimension();
    table_.assign(n, std::vector<Element>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table_[a][b] = bracket_basis(a, b);
}

LatticeLieAlgebra::Element LatticeLieAlgebra::basis_element(std::size_t k) const {
    Element e(dimension(), Rational(0));
    e.at(k) = Rational(1);
    return e;
}

LatticeLieAlgebra::Element LatticeLieAlgebra::bracket_basis(std::size_t a, std::size_t b) const {
    Element out(dimension(), Rational(0));
    const auto& roots = rs_->roots();
    const auto& simple = rs_->simple_roots();
    const bool ra = a < nroots_;
    const bool rb = b < nroots_;
    if (!ra && !rb) return out;
    if (!ra || !rb) {
        // [h_i, E_beta] = (alpha_i . beta) E_beta
        const std::size_t h = ra ? b - nroots_ : a - nroots_;
        const std::size_t e = ra ? a : b;
        Rational w = dot(simple[h], roots[e].vector);
        out[e] = ra ? -w : w;
        return out;
    }
    Coeffs s = roots[a].coeffs;
    bool zero = true;
    for (std::size_t k = 0; k < s.size(); ++k) {
        s[k] += roots[b].coeffs[k];
        zero = zero && s[k] == 0;
    }
    const int sign = cocycle_.lattice_sign(roots[a].coeffs, roots[b].coeffs);
    if (zero) {
        // [E_alpha, E_-alpha] = eps(alpha, -alpha) h_alpha
        for (std::size_t k = 0; k < rank_; ++k) out[nroots_ + k] = Rational(sign * roots[a].coeffs[k]);
    } else if (auto idx = rs_->find_root(s)) {
        out[*idx] = Rational(sign);
    }
    return out;
}

LatticeLieAlgebra::Element LatticeLieAlgebra::bracket(const Element& x, const Element& y) const {
    Element out(dimension(), Rational(0));
    for (std::size_t a = 0; a < x.size(); ++a) {
        if (x[a].is_zero()) continue;
        for (std::size_t b = 0; b < y.size(); ++b) {
            if (y[b].is_zero()) continue;
            const Rational w = x[a] * y[b];
            const Element& t = table_[a][b];
            for (std::size_t k = 0; k < out.size(); ++k)
                if (!t[k].is_zero()) out[k] += w * t[k];
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
}

RationalMatrix RationalMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
    RationalMatrix m(n);
    m(i, j) = Rational(1);
    return m;
}

bool RationalMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Rational& q) { return q.is_zero(); });
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    const std::size_t n = a.n_;
    RationalMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Rational& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
        }
    return c;
}

RationalMatrix operator*(const Rational& s, RationalMatrix a) {
    for (auto& q : a.a_) q *= s;
    return a;
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }
RationalMatrix anticommutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b + b * a; }

RationalMatrix MatrixRep::cartan_element(const RationalVector& u) const {
    if (u.size() != cartan.size()) throw std::invalid_argument("cartan_element: dimension mismatch");
    RationalMatrix m(dimension);
    for (std::size_t k = 0; k < u.size(); ++k)
        if (!u[k].is_zero()) m += u[k] * cartan[k];
    return m;
}

const RationalMatrix& MatrixRep::affine_step(const RootSystem& rs, int node, int sign) const {
    Coeffs c = rs.affine_coeffs(node);
    if (sign < 0)
        for (int& x : c) x = -x;
    auto idx = rs.find_root(c);
    if (!idx) throw std::logic_error("affine_step: node is not a root");
    return step[*idx];
}

MatrixRep defining_rep(const RootSystem& rs) {
    if (rs.family() != Family::A) {
        throw std::invalid_argument("defining_rep: matrix representations are only built for family A (got " +
                                    rs.name() + ")");
    }
    const std::size_t n = static_cast<std::size_t>(rs.rank()) + 1;
    MatrixRep rep;
    rep.dimension = n;
    for (std::size_t k = 0; k < n; ++k) {
        RationalMatrix h = RationalMatrix::unit(n, k, k);
        h -= Rational(1, static_cast<std::int64_t>(n)) * RationalMatrix::identity(n);
        rep.cartan.push_back(h);
    }
    for (const auto& root : rs.roots()) {
        std::size_t plus = n;
        std::size_t minus = n;
        for (std::size_t k = 0; k < n; ++k) {
            if (root.vector[k] == Rational(1)) plus = k;
            if (root.vector[k] == Rational(-1)) minus = k;
        }
        rep.step.push_back(RationalMatrix::unit(n, plus, minus));
    }

    // Verify the relations used by the Lax construction.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t a = 0; a < rs.roots().size(); ++a) {
            const RationalMatrix lhs = commutator(rep.cartan[k], rep.step[a]);
            if (!(lhs == rs.roots()[a].vector[k] * rep.step[a]))
                throw std::logic_error("defining_rep: [H, E] relation failed");
        }
    }
    for (int i = 0; i <= rs.rank(); ++i) {
        for (int j = 0; j <= rs.rank(); ++j) {
            const RationalMatrix c = commutator(rep.affine_step(rs, i, +1), rep.affine_step(rs, j, -1));
            const RationalVector& ai = rs.affine_root(i);
            const RationalMatrix expect =
                i == j ? (Rational(2) / dot(ai, ai)) * rep.cartan_element(ai) : RationalMatrix(n);
            if (!(c == expect)) throw std::logic_error("defining_rep: [E_i, E_-j] relation failed");
        }
    }
    return rep;
}

std::vector<Rational> mass_squared(const RootSystem& rs) {
    std::vector<Rational> m;
    for (int i = 0; i <= rs.rank(); ++i) {
        const RationalVector& a = rs.affine_root(i);
        m.push_back(Rational(rs.marks()[static_cast<std::size_t>(i)]) * dot(a, a) / Rational(8));
    }
    return m;
}

std::vector<double> mass_coefficients(const RootSystem& rs) {
    std::vector<double> m;
    for (const auto& q : mass_squared(rs)) m.push_back(std::sqrt(q.to_double()));
    return m;
}

}  // namespace intfield
