#pragma once

#include <memory>
#include <string>
#include <vector>

#include "intfield/algebra.hpp"
#include "intfield/kmatrix.hpp"

namespace intfield {

enum class ModelKind { KleinGordon, SineGordon, SinhGordon, AffineToda };

/// Bulk model. Potentials are shifted so that the vacuum phi = 0 has zero energy:
///   Klein-Gordon   V = m^2 phi^2 / 2
///   sine-Gordon    V = (m^2 / beta^2)(1 - cos beta phi)
///   sinh-Gordon    V = (m^2 / beta^2)(cosh beta phi - 1)
///   affine Toda    V = (m^2 / beta^2)(sum_i n_i exp(beta alpha_i . phi) - h)
class Model {
public:
    static Model klein_gordon(double m);
    static Model sine_gordon(double m, double beta);
    static Model sinh_gordon(double m, double beta);
    static Model affine_toda(const RootSystem& rs, double m, double beta);

    [[nodiscard]] ModelKind kind() const { return kind_; }
    [[nodiscard]] std::string name() const;
    [[nodiscard]] double mass() const { return m_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] std::size_t components() const { return comps_; }
    [[nodiscard]] const RootSystem* root_system() const { return rs_.get(); }

    [[nodiscard]] double potential(const double* phi) const;
    /// Writes dV/dphi into `grad` (components() entries).
    void gradient(const double* phi, double* grad) const;

    /// Scalar convenience overloads (components() == 1).
    [[nodiscard]] double potential(double phi) const { return potential(&phi); }
    [[nodiscard]] double gradient(double phi) const;

private:
    ModelKind kind_ = ModelKind::KleinGordon;
    double m_ = 1;
    double beta_ = 1;
    std::size_t comps_ = 1;
    std::shared_ptr<const RootSystem> rs_;
    std::vector<std::vector<double>> roots_;
    std::vector<double> marks_;
    double coxeter_ = 0;
};

/// Boundary condition at one end of the domain, written for the outward normal:
/// d_n phi = -dB/dphi with B the boundary potential.
struct BoundarySpec {
    enum class Kind { Neumann, Robin, Toda } kind = Kind::Neumann;
    double lambda = 0;  ///< Robin parameter: B = lambda phi^2 / 2 - offset phi
    double offset = 0;  ///< constant inhomogeneous Robin term
    std::vector<double> coefficients;  ///< Toda boundary: b_i, B = (m / beta^2) sum_i b_i exp(beta alpha_i . phi / 2)

    static BoundarySpec neumann() { return {}; }
    static BoundarySpec robin(double lambda, double offset = 0) { return {Kind::Robin, lambda, offset, {}}; }
    static BoundarySpec toda(std::vector<double> b) { return {Kind::Toda, 0, 0, std::move(b)}; }
};

/// Boundary potential bound to a model.
class BoundaryTerm {
public:
    BoundaryTerm() = default;
    BoundaryTerm(const BoundarySpec& spec, const Model& model);

    [[nodiscard]] double value(const double* phi) const;
    void gradient(const double* phi, double* grad) const;
    [[nodiscard]] const BoundarySpec& spec() const { return spec_; }

private:
    BoundarySpec spec_;
    std::size_t comps_ = 1;
    double scale_ = 1;  // m / beta^2
    double beta_ = 1;
    std::vector<std::vector<double>> roots_;
};

/// Defect sewing x = 0 between phi (x < 0) and psi (x > 0).
class DefectSpec {
public:
    enum class Kind { Free, SineGordonBacklund };

    /// B = (m lambda / 4)(phi + psi)^2 + (m / 4 lambda)(phi - psi)^2
    static DefectSpec free_defect(double lambda, double m);
    /// B = -(2 m lambda / beta^2) cos(beta (phi + psi) / 2) - (2 m / beta^2 lambda) cos(beta (phi - psi) / 2)
    static DefectSpec sine_gordon(double lambda, double m, double beta);

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] double lambda() const { return lambda_; }
    [[nodiscard]] double mass() const { return m_; }
    [[nodiscard]] double beta() const { return beta_; }

    /// B = f(phi + psi) + g(phi - psi)
    [[nodiscard]] double f(double s) const;
    [[nodiscard]] double g(double d) const;
    [[nodiscard]] double B(double phi, double psi) const { return f(phi + psi) + g(phi - psi); }
    [[nodiscard]] double dB_dphi(double phi, double psi) const;
    [[nodiscard]] double dB_dpsi(double phi, double psi) const;
    /// Second derivatives {B_phiphi, B_phipsi, B_psipsi}.
    void hessian(double phi, double psi, double& bpp, double& bpq, double& bqq) const;
    /// U = f - g, which makes P + U conserved.
    [[nodiscard]] double U(double phi, double psi) const { return f(phi + psi) - g(phi - psi); }

    /// Model on each side of the defect (the same model for both built-in kinds).
    [[nodiscard]] Model bulk_model() const;

private:
    Kind kind_ = Kind::Free;
    double lambda_ = 1;
    double m_ = 1;
    double beta_ = 1;

    [[nodiscard]] double fp(double s) const;
    [[nodiscard]] double gp(double d) const;
    [[nodiscard]] double fpp(double s) const;
    [[nodiscard]] double gpp(double d) const;
};

}  // namespace intfield
