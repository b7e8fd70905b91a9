#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "intfield/algebra.hpp"
#include "intfield/field.hpp"
#include "intfield/kmatrix.hpp"

namespace intfield {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Floating-point copy of a matrix representation in field-space coordinates.
struct NumericRep {
    std::size_t dimension = 0;
    std::size_t rank = 0;
    std::vector<CMatrix> H;                  ///< H_a for orthonormal field directions a = 0..r-1
    std::vector<CMatrix> up, down;           ///< E_{alpha_i}, E_{-alpha_i}, i = 0..r
    std::vector<std::vector<double>> roots;  ///< alpha_i in field space
    std::vector<double> mass;                ///< m_i

    [[nodiscard]] CMatrix cartan(const std::vector<double>& v) const;
    [[nodiscard]] CMatrix cartan(const double* v) const;
};

NumericRep numeric_rep(const RootSystem& rs, const MatrixRep& rep);

struct GaugeComponents {
    CMatrix a_t;
    CMatrix a_x;
};

/// Lax pair of the affine Toda equations with m = beta = 1; lambda = 0 is rejected.
GaugeComponents lax_components(const NumericRep& rep, const std::vector<double>& phi, const std::vector<double>& phi_t,
                               const std::vector<double>& phi_x, cplx lambda);

/// a_x alone (depends on phi and phi_t only).
CMatrix lax_ax(const NumericRep& rep, const double* phi, const double* phi_t, cplx lambda);

/// RMS over interior space-time points of the Frobenius norm of
/// F_tx = d_t a_x - d_x a_t + [a_t, a_x], all derivatives by centered differences.
/// `levels` are consecutive time samples spaced by dt; at least five are required,
/// as are at least five nodes.
double curvature_residual(const NumericRep& rep, const std::vector<FieldSlice>& levels, double h, double dt,
                          cplx lambda);

enum class TransportGeometry { Periodic, Open, Boundary };

/// Path-ordered product of exp(h a_x) at cell midpoints, ordered with x increasing
/// to the right, traced. The boundary case places the physical field on the left
/// of a boundary at the last node and closes the path by reflection:
/// Q = tr(T K T_reflected). The boundary case requires K.
cplx monodromy_charge(const NumericRep& rep, const FieldSlice& slice, double h, cplx lambda, TransportGeometry geometry,
                      const std::optional<CMatrix>& K = std::nullopt);

/// Closed-form a_1 boundary K(lambda) in the basis E_{alpha_0} = E_{-alpha}.
CMatrix a1_k_matrix(cplx lambda, double b0, double b1);

/// Frobenius norm of  1/2 {K, dB/dphi . H} + [K, sum_i m_i (lambda E_i - E_{-i} / lambda) e^{alpha_i.phi/2}].
double kalgebra_residual(const NumericRep& rep, const CMatrix& K, cplx lambda, const std::vector<double>& phi,
                         const BoundaryPotential& B);

}  // namespace intfield
