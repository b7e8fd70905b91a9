#include "intfield/model.hpp"

#include <cmath>
#include <stdexcept>

namespace intfield {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
}

}  // namespace

Model Model::klein_gordon(double m) {
    if (!(m >= 0.0)) throw std::invalid_argument("Klein-Gordon mass must be non-negative");
    Model md;
    md.kind_ = ModelKind::KleinGordon;
    md.m_ = m;
    return md;
}

Model Model::sine_gordon(double m, double beta) {
    require_positive(m, "sine-Gordon mass");
    require_positive(beta, "sine-Gordon coupling");
    Model md;
    md.kind_ = ModelKind::SineGordon;
    md.m_ = m;
    md.beta_ = beta;
    return md;
}

Model Model::sinh_gordon(double m, double beta) {
    require_positive(m, "sinh-Gordon mass");
    require_positive(beta, "sinh-Gordon coupling");
    Model md;
    md.kind_ = ModelKind::SinhGordon;
    md.m_ = m;
    md.beta_ = beta;
    return md;
}

Model Model::affine_toda(const RootSystem& rs, double m, double beta) {
    require_positive(m, "Toda mass scale");
    require_positive(beta, "Toda coupling");
    Model md;
    md.kind_ = ModelKind::AffineToda;
    md.m_ = m;
    md.beta_ = beta;
    md.rs_ = std::make_shared<const RootSystem>(rs);
    md.comps_ = static_cast<std::size_t>(rs.rank());
    md.roots_ = rs.field_space_roots();
    for (int n : rs.marks()) md.marks_.push_back(n);
    md.coxeter_ = rs.coxeter_number();
    return md;
}

std::string Model::name() const {
    switch (kind_) {
        case ModelKind::KleinGordon: return "klein-gordon";
        case ModelKind::SineGordon: return "sine-gordon";
        case ModelKind::SinhGordon: return "sinh-gordon";
        case ModelKind::AffineToda: return "toda-" + rs_->name();
    }
    return "unknown";
}

double Model::potential(const double* phi) const {
    const double s = m_ * m_ / (beta_ * beta_);
    switch (kind_) {
        case ModelKind::KleinGordon: return 0.5 * m_ * m_ * phi[0] * phi[0];
        case ModelKind::SineGordon: return s * (1.0 - std::cos(beta_ * phi[0]));
        case ModelKind::SinhGordon: return s * (std::cosh(beta_ * phi[0]) - 1.0);
        case ModelKind::AffineToda: {
            double v = 0;
            for (std::size_t i = 0; i < roots_.size(); ++i) {
                double d = 0;
                for (std::size_t a = 0; a < comps_; ++a) d += roots_[i][a] * phi[a];
                // expm1 keeps the vacuum exactly at zero energy
                v += marks_[i] * std::expm1(beta_ * d);
            }
            return s * v;
        }
    }
    return 0;
}

void Model::gradient(const double* phi, double* grad) const {
    switch (kind_) {
        case ModelKind::KleinGordon: grad[0] = m_ * m_ * phi[0]; return;
        case ModelKind::SineGordon: grad[0] = m_ * m_ / beta_ * std::sin(beta_ * phi[0]); return;
        case ModelKind::SinhGordon: grad[0] = m_ * m_ / beta_ * std::sinh(beta_ * phi[0]); return;
        case ModelKind::AffineToda: {
            for (std::size_t a = 0; a < comps_; ++a) grad[a] = 0;
            const double s = m_ * m_ / beta_;
            for (std::size_t i = 0; i < roots_.size(); ++i) {
                double d = 0;
                for (std::size_t a = 0; a < comps_; ++a) d += roots_[i][a] * phi[a];
                const double w = s * marks_[i] * std::exp(beta_ * d);
                for (std::size_t a = 0; a < comps_; ++a) grad[a] += w * roots_[i][a];
            }
            return;
        }
    }
}

double Model::gradient(double phi) const {
    if (comps_ != 1) throw std::logic_error("Model::gradient(double) requires a scalar model");
    double g = 0;
    gradient(&phi, &g);
    return g;
}

BoundaryTerm::BoundaryTerm(const BoundarySpec& spec, const Model& model)
    : spec_(spec), comps_(model.components()), scale_(model.mass() / (model.beta() * model.beta())),
      beta_(model.beta()) {
    if (spec.kind != BoundarySpec::Kind::Toda) return;
    if (model.kind() == ModelKind::SinhGordon) {
        // sinh-Gordon is the A_1 theory; alpha_1 = 1 = -alpha_0 in its own coupling units
        roots_ = {{-1.0}, {1.0}};
    } else if (model.kind() == ModelKind::AffineToda) {
        roots_ = model.root_system()->field_space_roots();
    } else {
        throw std::invalid_argument("Toda boundary requires a sinh-Gordon or affine Toda bulk model");
    }
    if (spec.coefficients.size() != roots_.size())
        throw std::invalid_argument("Toda boundary needs " + std::to_string(roots_.size()) + " coefficients b_0..b_r");
    if (model.kind() == ModelKind::AffineToda && model.root_system()->rank() >= 2)
        (void)boundary_potential(*model.root_system(), spec.coefficients);  // enforces b_i^2 = 4 n_i
}

double BoundaryTerm::value(const double* phi) const {
    switch (spec_.kind) {
        case BoundarySpec::Kind::Neumann: return 0;
        case BoundarySpec::Kind::Robin: {
            double v = 0;
            for (std::size_t a = 0; a < comps_; ++a) v += 0.5 * spec_.lambda * phi[a] * phi[a] - spec_.offset * phi[a];
            return v;
        }
        case BoundarySpec::Kind::Toda: {
            double v = 0;
            for (std::size_t i = 0; i < roots_.size(); ++i) {
                double d = 0;
                for (std::size_t a = 0; a < comps_; ++a) d += roots_[i][a] * phi[a];
                v += spec_.coefficients[i] * std::exp(0.5 * beta_ * d);
            }
            return scale_ * v;
        }
    }
    return 0;
}

void BoundaryTerm::gradient(const double* phi, double* grad) const {
    for (std::size_t a = 0; a < comps_; ++a) grad[a] = 0;
    switch (spec_.kind) {
        case BoundarySpec::Kind::Neumann: return;
        case BoundarySpec::Kind::Robin:
            for (std::size_t a = 0; a < comps_; ++a) grad[a] = spec_.lambda * phi[a] - spec_.offset;
            return;
        case BoundarySpec::Kind::Toda:
            for (std::size_t i = 0; i < roots_.size(); ++i) {
                double d = 0;
                for (std::size_t a = 0; a < comps_; ++a) d += roots_[i][a] * phi[a];
                const double w = 0.5 * beta_ * scale_ * spec_.coefficients[i] * std::exp(0.5 * beta_ * d);
                for (std::size_t a = 0; a < comps_; ++a) grad[a] += w * roots_[i][a];
            }
            return;
    }
}

DefectSpec DefectSpec::free_defect(double lambda, double m) {
    require_positive(lambda, "defect parameter");
    require_positive(m, "defect mass");
    DefectSpec d;
    d.kind_ = Kind::Free;
    d.lambda_ = lambda;
    d.m_ = m;
    return d;
}

DefectSpec DefectSpec::sine_gordon(double lambda, double m, double beta) {
    require_positive(lambda, "defect parameter");
    require_positive(m, "defect mass");
    require_positive(beta, "defect coupling");
    DefectSpec d;
    d.kind_ = Kind::SineGordonBacklund;
    d.lambda_ = lambda;
    d.m_ = m;
    d.beta_ = beta;
    return d;
}

Model DefectSpec::bulk_model() const {
    return kind_ == Kind::Free ? Model::klein_gordon(m_) : Model::sine_gordon(m_, beta_);
}

double DefectSpec::f(double s) const {
    if (kind_ == Kind::Free) return 0.25 * m_ * lambda_ * s * s;
    return -2.0 * m_ * lambda_ / (beta_ * beta_) * std::cos(0.5 * beta_ * s);
}

double DefectSpec::g(double d) const {
    if (kind_ == Kind::Free) return 0.25 * m_ / lambda_ * d * d;
    return -2.0 * m_ / (beta_ * beta_ * lambda_) * std::cos(0.5 * beta_ * d);
}

double DefectSpec::fp(double s) const {
    if (kind_ == Kind::Free) return 0.5 * m_ * lambda_ * s;
    return m_ * lambda_ / beta_ * std::sin(0.5 * beta_ * s);
}

double DefectSpec::gp(double d) const {
    if (kind_ == Kind::Free) return 0.5 * m_ / lambda_ * d;
    return m_ / (beta_ * lambda_) * std::sin(0.5 * beta_ * d);
}

double DefectSpec::fpp(double s) const {
    if (kind_ == Kind::Free) return 0.5 * m_ * lambda_;
    return 0.5 * m_ * lambda_ * std::cos(0.5 * beta_ * s);
}

double DefectSpec::gpp(double d) const {
    if (kind_ == Kind::Free) return 0.5 * m_ / lambda_;
    return 0.5 * m_ / lambda_ * std::cos(0.5 * beta_ * d);
}

double DefectSpec::dB_dphi(double phi, double psi) const { return fp(phi + psi) + gp(phi - psi); }
double DefectSpec::dB_dpsi(double phi, double psi) const { return fp(phi + psi) - gp(phi - psi); }

void DefectSpec::hessian(double phi, double psi, double& bpp, double& bpq, double& bqq) const {
    const double a = fpp(phi + psi), b = gpp(phi - psi);
    bpp = a + b;
    bpq = a - b;
    bqq = a + b;
}

}  // namespace intfield
