#include "intfield/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace intfield {

bool exact_sqrt(const Rational& q, Rational& root) {
    if (q < Rational(0)) return false;
    auto isqrt = [](std::int64_t v, std::int64_t& r) {
        auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
        for (std::int64_t c = std::max<std::int64_t>(0, s - 2); c <= s + 2; ++c) {
            if (static_cast<__int128>(c) * c == v) {
                r = c;
                return true;
            }
        }
        return false;
    };
    std::int64_t n = 0;
    std::int64_t d = 0;
    if (!isqrt(q.num(), n) || !isqrt(q.den(), d)) return false;
    root = Rational(n, d);
    return true;
}

Polynomial::Polynomial(std::size_t nvars, const Rational& constant) : nvars_(nvars) {
    if (!constant.is_zero()) terms_[Monomial(nvars, 0)] = constant;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::out_of_range("Polynomial::variable: index out of range");
    Polynomial p(nvars);
    Monomial m(nvars, 0);
    m[index] = 1;
    p.terms_[m] = Rational(1);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && degree() == 0);
}

int Polynomial::degree() const {
    int deg = terms_.empty() ? -1 : 0;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (int e : m) d += e;
        deg = std::max(deg, d);
    }
    return deg;
}

Rational Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (m.size() != nvars_) throw std::invalid_argument("Polynomial: monomial arity mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("Polynomial: variable count mismatch");
    Polynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m(a.nvars_);
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& x) const {
    if (x.size() != nvars_) throw std::invalid_argument("Polynomial::evaluate: arity mismatch");
    Rational sum(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < nvars_; ++i)
            for (int e = 0; e < m[i]; ++e) t *= x[i];
        sum += t;
    }
    return sum;
}

double Polynomial::evaluate(const std::vector<double>& x) const {
    if (x.size() != nvars_) throw std::invalid_argument("Polynomial::evaluate: arity mismatch");
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = c.to_double();
        for (std::size_t i = 0; i < nvars_; ++i) t *= std::pow(x[i], m[i]);
        sum += t;
    }
    return sum;
}

Monomial Polynomial::monomial_content() const {
    Monomial g(nvars_, 0);
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (first) {
            g = m;
            first = false;
        } else {
            for (std::size_t i = 0; i < nvars_; ++i) g[i] = std::min(g[i], m[i]);
        }
    }
    return g;
}

Polynomial Polynomial::divide_monomial(const Monomial& d) const {
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
        Monomial q(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) {
            q[i] = m[i] - d[i];
            if (q[i] < 0) throw std::invalid_argument("Polynomial::divide_monomial: not a divisor");
        }
        r.terms_[q] = c;
    }
    return r;
}

std::vector<std::size_t> Polynomial::support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < nvars_; ++i) {
        for (const auto& [m, c] : terms_) {
            if (m[i] != 0) {
                s.push_back(i);
                break;
            }
        }
    }
    return s;
}

std::string Polynomial::str(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return graded_greater(a.first, b.first); });
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : sorted) {
        Rational mag = c < Rational(0) ? -c : c;
        if (first) {
            if (c < Rational(0)) os << "-";
        } else {
            os << (c < Rational(0) ? " - " : " + ");
        }
        first = false;
        bool has_var = false;
        for (int e : m) has_var = has_var || e != 0;
        if (!has_var || !(mag == Rational(1))) {
            os << mag.str();
            if (has_var) os << "*";
        }
        bool first_var = true;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << names.at(i);
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

std::string Polynomial::str(const std::string& prefix) const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nvars_; ++i) names.push_back(prefix + std::to_string(i));
    return str(names);
}

bool graded_greater(const Monomial& a, const Monomial& b) {
    int da = 0;
    int db = 0;
    for (int e : a) da += e;
    for (int e : b) db += e;
    if (da != db) return da > db;
    return a > b;
}

std::vector<Polynomial> reduce_linear_span(const std::vector<Polynomial>& polys) {
    std::vector<Polynomial> basis;
    if (polys.empty()) return basis;
    auto leading = [](const Polynomial& p) {
        Monomial best;
        bool have = false;
        for (const auto& [m, c] : p.terms()) {
            if (!have || graded_greater(m, best)) {
                best = m;
                have = true;
            }
        }
        return best;
    };
    for (Polynomial p : polys) {
        // reduce against existing basis
        for (const auto& b : basis) {
            const Rational c = p.coefficient(leading(b));
            if (!c.is_zero()) p -= b * c;
        }
        if (p.is_zero()) continue;
        const Monomial lm = leading(p);
        p *= Rational(1) / p.coefficient(lm);
        for (auto& b : basis) {
            const Rational c = b.coefficient(lm);
            if (!c.is_zero()) b -= p * c;
        }
        basis.push_back(std::move(p));
    }
    std::sort(basis.begin(), basis.end(),
              [&](const Polynomial& a, const Polynomial& b) { return graded_greater(leading(a), leading(b)); });
    return basis;
}

}  // namespace intfield
