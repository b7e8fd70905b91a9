#pragma once

#include <complex>
#include <string>
#include <vector>

namespace intfield {

using cplx = std::complex<double>;

/// Value of a closed-form amplitude, or a tagged pole.
struct Amplitude {
    cplx value{0.0, 0.0};
    bool pole = false;
    std::string pole_at;  ///< factor whose denominator vanished, e.g. "(1+E)_theta"

    [[nodiscard]] double modulus() const { return std::abs(value); }
};

/// Relative size below which a denominator counts as a pole.
inline constexpr double kPoleTolerance = 1e-8;

/// Klein-Gordon reflection factor (ik + lambda) / (ik - lambda). Complex k reaches
/// the bound-state pole at k = -i lambda; k = lambda = 0 is rejected.
Amplitude free_reflection(cplx k, double lambda);

/// (x)_Theta = sinh(Theta/2 + i pi x / 4) / sinh(Theta/2 - i pi x / 4).
Amplitude block(double x, cplx theta);

/// Sinh-Gordon coupling map B(beta) = 2 beta^2 / (8 pi + beta^2).
double coupling_B(double beta);

/// S = -1 / [(B)_Theta (2 - B)_Theta].
Amplitude s_matrix(cplx theta, double beta);

struct ShGBoundary {
    double a0 = 0;
    double a1 = 0;
    double beta = 1;

    [[nodiscard]] double B() const { return coupling_B(beta); }
    [[nodiscard]] double E() const { return (a0 + a1) * (1 - B() / 2); }
    [[nodiscard]] double F() const { return (a0 - a1) * (1 - B() / 2); }
};

/// R = (1)(1+B/2)(2-B/2) / [(1+E)(1-E)(1+F)(1-F)], all blocks at rapidity theta.
Amplitude reflection_factor(cplx theta, const ShGBoundary& p);

/// a_j = arccos(b_j) / pi on the real branch |b_j| <= 1.
double a_from_b(double b);

/// omega = sqrt(m^2 - lambda^2) for -m < lambda < 0.
double bound_state_frequency(double m, double lambda);

struct SpectrumProblem {
    double m = 1;
    double L = 1;  ///< half-length: the interval is -L < x < L
    double lambda_plus = 0;
    double lambda_minus = 0;
    int n_max = 3;
};

struct SpectrumRoot {
    int index = 0;   ///< 1-based position in increasing k
    int branch = 0;  ///< n in the phase condition
    double k = 0;
    double omega = 0;
};

struct SpectrumResult {
    std::vector<SpectrumRoot> roots;
    std::vector<std::string> failures;  ///< per-branch bisection failures
};

/// Phase Phi(k) = 4kL - 2 atan(lambda_+/k) - 2 atan(lambda_-/k); real modes solve Phi = 2 pi n.
double interval_phase(const SpectrumProblem& p, double k);

/// First n_max positive real roots. Branches are bracketed on a grid of step pi/(40L)
/// and each root is bisected to a relative width below 1e-10.
SpectrumResult interval_spectrum(const SpectrumProblem& p);

}  // namespace intfield
