#include "intfield/lax.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace intfield {

namespace {

CMatrix to_complex(const RationalMatrix& m) {
    CMatrix c(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) c(i, j) = m(i, j).to_double();
    return c;
}

void check_lambda(cplx lambda) {
    if (lambda == cplx(0.0)) throw std::invalid_argument("spectral parameter must be nonzero (a_t, a_x have a 1/lambda pole)");
}

double exp_dot(const std::vector<double>& root, const double* phi) {
    double s = 0;
    for (std::size_t a = 0; a < root.size(); ++a) s += root[a] * phi[a];
    return std::exp(0.5 * s);
}

// Step-operator part shared by a_t (sign = -1) and a_x (sign = +1).
CMatrix step_part(const NumericRep& rep, const double* phi, cplx lambda, double sign) {
    CMatrix m = CMatrix::Zero(rep.dimension, rep.dimension);
    for (std::size_t i = 0; i < rep.up.size(); ++i) {
        const double w = rep.mass[i] * exp_dot(rep.roots[i], phi);
        m += w * (lambda * rep.up[i] + (sign / lambda) * rep.down[i]);
    }
    return m;
}

}  // namespace

CMatrix NumericRep::cartan(const double* v) const {
    CMatrix m = CMatrix::Zero(dimension, dimension);
    for (std::size_t a = 0; a < rank; ++a) m += v[a] * H[a];
    return m;
}

CMatrix NumericRep::cartan(const std::vector<double>& v) const {
    if (v.size() != rank) throw std::invalid_argument("cartan: vector dimension must equal the rank");
    return cartan(v.data());
}

NumericRep numeric_rep(const RootSystem& rs, const MatrixRep& rep) {
    NumericRep n;
    n.dimension = rep.dimension;
    n.rank = static_cast<std::size_t>(rs.rank());
    std::vector<CMatrix> hk;
    for (const auto& h : rep.cartan) hk.push_back(to_complex(h));
    for (const auto& e : rs.orthonormal_basis()) {
        CMatrix m = CMatrix::Zero(n.dimension, n.dimension);
        for (std::size_t k = 0; k < e.size(); ++k) m += e[k] * hk[k];
        n.H.push_back(m);
    }
    for (int i = 0; i <= rs.rank(); ++i) {
        n.up.push_back(to_complex(rep.affine_step(rs, i, +1)));
        n.down.push_back(to_complex(rep.affine_step(rs, i, -1)));
    }
    n.roots = rs.field_space_roots();
    n.mass = mass_coefficients(rs);
    return n;
}

CMatrix lax_ax(const NumericRep& rep, const double* phi, const double* phi_t, cplx lambda) {
    check_lambda(lambda);
    return 0.5 * rep.cartan(phi_t) + step_part(rep, phi, lambda, +1.0);
}

GaugeComponents lax_components(const NumericRep& rep, const std::vector<double>& phi, const std::vector<double>& phi_t,
                               const std::vector<double>& phi_x, cplx lambda) {
    check_lambda(lambda);
    if (phi.size() != rep.rank || phi_t.size() != rep.rank || phi_x.size() != rep.rank)
        throw std::invalid_argument("lax_components: field dimension must equal the rank");
    return {0.5 * rep.cartan(phi_x) + step_part(rep, phi.data(), lambda, -1.0),
            0.5 * rep.cartan(phi_t) + step_part(rep, phi.data(), lambda, +1.0)};
}

double curvature_residual(const NumericRep& rep, const std::vector<FieldSlice>& levels, double h, double dt,
                          cplx lambda) {
    check_lambda(lambda);
    if (levels.size() < 5) throw std::invalid_argument("curvature_residual: need at least 5 time levels");
    const std::size_t nodes = levels.front().nodes();
    if (nodes < 5) throw std::invalid_argument("curvature_residual: need at least 5 nodes");
    const std::size_t r = rep.rank;
    for (const auto& l : levels)
        if (l.components != r || l.nodes() != nodes)
            throw std::invalid_argument("curvature_residual: inconsistent time levels");

    auto phi = [&](std::size_t s, std::size_t n) { return &levels[s].phi[n * r]; };
    auto dphi_t = [&](std::size_t s, std::size_t n) {
        std::vector<double> v(r);
        for (std::size_t a = 0; a < r; ++a) v[a] = (phi(s + 1, n)[a] - phi(s - 1, n)[a]) / (2 * dt);
        return v;
    };
    auto dphi_x = [&](std::size_t s, std::size_t n) {
        std::vector<double> v(r);
        for (std::size_t a = 0; a < r; ++a) v[a] = (phi(s, n + 1)[a] - phi(s, n - 1)[a]) / (2 * h);
        return v;
    };
    auto a_x = [&](std::size_t s, std::size_t n) { return lax_ax(rep, phi(s, n), dphi_t(s, n).data(), lambda); };
    auto a_t = [&](std::size_t s, std::size_t n) {
        return CMatrix(0.5 * rep.cartan(dphi_x(s, n)) + step_part(rep, phi(s, n), lambda, -1.0));
    };

    double sum = 0;
    std::size_t count = 0;
    for (std::size_t s = 2; s + 2 < levels.size(); ++s)
        for (std::size_t n = 2; n + 2 < nodes; ++n) {
            const CMatrix at = a_t(s, n);
            const CMatrix ax = a_x(s, n);
            const CMatrix F = (a_x(s + 1, n) - a_x(s - 1, n)) / (2 * dt) - (a_t(s, n + 1) - a_t(s, n - 1)) / (2 * h) +
                              (at * ax - ax * at);
            sum += F.squaredNorm();
            ++count;
        }
    return std::sqrt(sum / static_cast<double>(count));
}

cplx monodromy_charge(const NumericRep& rep, const FieldSlice& slice, double h, cplx lambda, TransportGeometry geometry,
                      const std::optional<CMatrix>& K) {
    check_lambda(lambda);
    if (geometry == TransportGeometry::Boundary && !K)
        throw std::invalid_argument("monodromy_charge: boundary geometry requires a K matrix");
    const std::size_t r = rep.rank;
    const std::size_t nodes = slice.nodes();
    if (slice.components != r || nodes < 2) throw std::invalid_argument("monodromy_charge: bad field slice");

    const std::size_t cells = geometry == TransportGeometry::Periodic ? nodes : nodes - 1;
    std::vector<CMatrix> factor;
    factor.reserve(cells);
    std::vector<double> mid_phi(r), mid_pi(r);
    for (std::size_t c = 0; c < cells; ++c) {
        const std::size_t n1 = (c + 1) % nodes;
        for (std::size_t a = 0; a < r; ++a) {
            mid_phi[a] = 0.5 * (slice.field(c, a) + slice.field(n1, a));
            mid_pi[a] = 0.5 * (slice.velocity(c, a) + slice.velocity(n1, a));
        }
        factor.push_back(CMatrix(h * lax_ax(rep, mid_phi.data(), mid_pi.data(), lambda)).exp());
    }

    CMatrix T = CMatrix::Identity(rep.dimension, rep.dimension);
    for (const auto& f : factor) T = T * f;
    if (geometry != TransportGeometry::Boundary) return T.trace();

    if (K->rows() != static_cast<Eigen::Index>(rep.dimension) || K->cols() != K->rows())
        throw std::invalid_argument("monodromy_charge: K has the wrong dimension");
    CMatrix Trev = CMatrix::Identity(rep.dimension, rep.dimension);
    for (auto it = factor.rbegin(); it != factor.rend(); ++it) Trev = Trev * (*it);
    return (T * (*K) * Trev).trace();
}

CMatrix a1_k_matrix(cplx lambda, double b0, double b1) {
    const cplx l2 = lambda * lambda;
    const cplx den = 1.0 - l2 * l2;
    if (std::abs(den) < 1e-14) throw std::invalid_argument("a1_k_matrix: lambda^4 = 1 is a pole");
    CMatrix K = CMatrix::Identity(2, 2);
    K(0, 1) = lambda / den * (b1 - l2 * b0);
    K(1, 0) = lambda / den * (b0 - l2 * b1);
    return K;
}

double kalgebra_residual(const NumericRep& rep, const CMatrix& K, cplx lambda, const std::vector<double>& phi,
                         const BoundaryPotential& B) {
    check_lambda(lambda);
    if (B.coefficients().size() != rep.up.size())
        throw std::invalid_argument("kalgebra_residual: boundary potential does not match the representation");
    const CMatrix dB = rep.cartan(B.gradient(phi));
    CMatrix R = CMatrix::Zero(rep.dimension, rep.dimension);
    for (std::size_t i = 0; i < rep.up.size(); ++i)
        R += rep.mass[i] * exp_dot(rep.roots[i], phi.data()) * (lambda * rep.up[i] - rep.down[i] / lambda);
    const CMatrix res = 0.5 * (K * dB + dB * K) + (K * R - R * K);
    return res.norm();
}

}  // namespace intfield
