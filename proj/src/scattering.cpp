#include "intfield/scattering.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace intfield {

namespace {

using std::numbers::pi;
constexpr cplx I{0.0, 1.0};

struct Factor {
    cplx v;
    std::string label;
};

// Product of numerator factors over denominator factors with a relative pole test.
Amplitude ratio(double sign, const std::vector<Factor>& num, const std::vector<Factor>& den, double scale) {
    Amplitude a;
    for (const auto& d : den) {
        if (std::abs(d.v) < kPoleTolerance * scale) {
            a.pole = true;
            a.pole_at = d.label;
            a.value = cplx(std::numeric_limits<double>::infinity(), 0.0);
            return a;
        }
    }
    cplx v = sign;
    for (const auto& n : num) v *= n.v;
    for (const auto& d : den) v /= d.v;
    a.value = v;
    return a;
}

std::string block_label(const std::string& x, const std::string& var) { return "(" + x + ")_" + var; }

bool trivial_block(double x) { return std::fmod(x, 4.0) == 0.0; }

cplx block_num(double x, cplx theta) { return std::sinh(theta / 2.0 + I * pi * x / 4.0); }
cplx block_den(double x, cplx theta) { return std::sinh(theta / 2.0 - I * pi * x / 4.0); }

double sinh_scale(cplx theta) { return std::cosh(std::abs(theta.real()) / 2.0); }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

Amplitude free_reflection(cplx k, double lambda) {
    if (k == cplx(0.0) && lambda == 0.0) throw std::invalid_argument("free_reflection: k and lambda both zero");
    const double scale = std::abs(k) + std::abs(lambda);
    Amplitude a = ratio(1.0, {{I * k + lambda, "ik+lambda"}}, {{I * k - lambda, "ik-lambda"}}, scale);
    if (a.pole) a.pole_at = "ik-lambda (boundary bound state at k = -i lambda)";
    return a;
}

Amplitude block(double x, cplx theta) {
    if (trivial_block(x)) return {cplx(1.0, 0.0), false, {}};
    return ratio(1.0, {{block_num(x, theta), ""}}, {{block_den(x, theta), block_label(fmt(x), "Theta")}},
                 sinh_scale(theta));
}

double coupling_B(double beta) { return 2.0 * beta * beta / (8.0 * pi + beta * beta); }

Amplitude s_matrix(cplx theta, double beta) {
    const double B = coupling_B(beta);
    std::vector<Factor> num, den;
    double sign = -1.0;
    for (double x : {B, 2.0 - B}) {
        if (trivial_block(x)) continue;
        // 1 / (x)_Theta contributes its denominator upstairs and its numerator downstairs
        num.push_back({block_den(x, theta), ""});
        den.push_back({block_num(x, theta), "numerator of " + block_label(fmt(x), "Theta")});
    }
    return ratio(sign, num, den, sinh_scale(theta));
}

Amplitude reflection_factor(cplx theta, const ShGBoundary& p) {
    const double B = p.B(), E = p.E(), F = p.F();
    std::vector<Factor> num, den;
    const std::pair<double, std::string> upstairs[] = {{1.0, "1"}, {1.0 + B / 2, "1+B/2"}, {2.0 - B / 2, "2-B/2"}};
    const std::pair<double, std::string> downstairs[] = {{1.0 + E, "1+E"}, {1.0 - E, "1-E"}, {1.0 + F, "1+F"}, {1.0 - F, "1-F"}};
    for (const auto& [x, name] : upstairs) {
        if (trivial_block(x)) continue;
        num.push_back({block_num(x, theta), ""});
        den.push_back({block_den(x, theta), block_label(name, "theta")});
    }
    for (const auto& [x, name] : downstairs) {
        if (trivial_block(x)) continue;
        num.push_back({block_den(x, theta), ""});
        den.push_back({block_num(x, theta), block_label(name, "theta")});
    }
    return ratio(1.0, num, den, sinh_scale(theta));
}

double a_from_b(double b) {
    if (std::abs(b) > 1.0)
        throw std::invalid_argument("a_from_b: |b| > 1 has no real a; supply a_0, a_1 directly");
    return std::acos(b) / pi;
}

double bound_state_frequency(double m, double lambda) {
    if (!(lambda > -m && lambda < 0.0))
        throw std::invalid_argument("bound_state_frequency: boundary bound state requires -m < lambda < 0");
    return std::sqrt(m * m - lambda * lambda);
}

double interval_phase(const SpectrumProblem& p, double k) {
    return 4.0 * k * p.L - 2.0 * std::atan(p.lambda_plus / k) - 2.0 * std::atan(p.lambda_minus / k);
}

SpectrumResult interval_spectrum(const SpectrumProblem& p) {
    if (!(p.L > 0.0) || p.m < 0.0 || p.n_max < 1) throw std::invalid_argument("interval_spectrum: need L > 0, m >= 0, n_max >= 1");
    auto sgn = [](double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); };
    const double step = pi / (40.0 * p.L);
    const double k_limit = pi * (p.n_max + 3) / (2.0 * p.L) + 4.0 * (std::abs(p.lambda_plus) + std::abs(p.lambda_minus));
    const double two_pi = 2.0 * pi;

    SpectrumResult out;
    auto refine = [&](double lo, double flo, double hi, int n) {
        const double target = two_pi * n;
        double glo = flo - target;
        for (int it = 0; it < 300 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double g = interval_phase(p, mid) - target;
            if ((g > 0) == (glo > 0)) {
                lo = mid;
                glo = g;
            } else {
                hi = mid;
            }
        }
        const double ghi = interval_phase(p, hi) - target;
        if ((glo > 0) == (ghi > 0) && ghi != 0.0) {
            out.failures.push_back("branch " + std::to_string(n) + ": root escaped its bracket");
            return;
        }
        if (hi - lo > 1e-10 * hi) {
            out.failures.push_back("branch " + std::to_string(n) + ": bisection did not reach 1e-10 relative width");
            return;
        }
        const double k = 0.5 * (lo + hi);
        out.roots.push_back({static_cast<int>(out.roots.size()) + 1, n, k, std::sqrt(p.m * p.m + k * k)});
    };

    double k_prev = 0.0;
    double f_prev = -pi * (sgn(p.lambda_plus) + sgn(p.lambda_minus));  // limit as k -> 0+
    for (int j = 1; static_cast<int>(out.roots.size()) < p.n_max; ++j) {
        const double k = j * step;
        if (k > k_limit) {
            out.failures.push_back("scan reached k = " + fmt(k) + " before finding " + std::to_string(p.n_max) + " roots");
            break;
        }
        const double f = interval_phase(p, k);
        if (f > f_prev) {
            for (auto n = static_cast<int>(std::floor(f_prev / two_pi)) + 1; n <= static_cast<int>(std::floor(f / two_pi)); ++n)
                refine(k_prev, f_prev, k, n);
        } else if (f < f_prev) {
            for (auto n = static_cast<int>(std::floor(f_prev / two_pi)); n > static_cast<int>(std::floor(f / two_pi)); --n)
                refine(k_prev, f_prev, k, n);
        }
        k_prev = k;
        f_prev = f;
    }
    if (static_cast<int>(out.roots.size()) > p.n_max) out.roots.resize(static_cast<std::size_t>(p.n_max));
    return out;
}

}  // namespace intfield
