#include "intfield/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace intfield {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr int kNewtonMaxIterations = 25;

bool is_sine_gordon(const Model& m) { return m.kind() == ModelKind::SineGordon; }

// Small-amplitude mass of a scalar model, from the gradient near the vacuum.
double linear_mass(const Model& m) {
    if (m.components() != 1) throw std::invalid_argument("linear mass is defined here for scalar models only");
    const double eps = 1e-6;
    return std::sqrt(std::max(0.0, m.gradient(eps) / eps));
}

}  // namespace

Grid1D Grid1D::make(double x_min, double x_max, std::size_t n_cells, double courant) {
    if (!(x_max > x_min)) throw std::invalid_argument("grid: x_max must exceed x_min");
    if (n_cells < 16) throw std::invalid_argument("grid: n_cells must be at least 16");
    if (!(courant > 0.0 && courant <= 0.9)) throw std::invalid_argument("grid: Courant ratio must lie in (0, 0.9]");
    Grid1D g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n_cells = n_cells;
    g.h = (x_max - x_min) / static_cast<double>(n_cells);
    g.courant = courant;
    g.dt = courant * g.h;
    return g;
}

GeometryKind parse_geometry(const std::string& s) {
    if (s == "periodic") return GeometryKind::Periodic;
    if (s == "line") return GeometryKind::Line;
    if (s == "half-line" || s == "halfline") return GeometryKind::HalfLine;
    if (s == "interval") return GeometryKind::Interval;
    if (s == "defect") return GeometryKind::Defect;
    throw std::invalid_argument("unknown geometry '" + s + "' (periodic, line, half-line, interval, defect)");
}

std::string geometry_name(GeometryKind g) {
    switch (g) {
        case GeometryKind::Periodic: return "periodic";
        case GeometryKind::Line: return "line";
        case GeometryKind::HalfLine: return "half-line";
        case GeometryKind::Interval: return "interval";
        case GeometryKind::Defect: return "defect";
    }
    return "?";
}

Simulation::Simulation(Model model, Grid1D grid, Geometry geometry)
    : model_(std::move(model)), grid_(grid), geom_(std::move(geometry)) {
    const double h = grid_.h;
    if (!(geom_.sponge_fraction >= 0.0 && geom_.sponge_fraction < 0.5))
        throw std::invalid_argument("sponge fraction must lie in [0, 0.5)");
    if (!(geom_.sponge_strength >= 0.0)) throw std::invalid_argument("sponge strength must be non-negative");

    const bool interval = geom_.kind == GeometryKind::Interval;
    if (interval) left_ = BoundaryTerm(geom_.left, model_);
    if (interval || geom_.kind == GeometryKind::HalfLine) right_ = BoundaryTerm(geom_.right, model_);

    if (geom_.kind == GeometryKind::Defect) {
        if (!geom_.defect) throw std::invalid_argument("defect geometry requires a defect specification");
        const Model bulk = geom_.defect->bulk_model();
        if (bulk.kind() != model_.kind() || std::abs(bulk.mass() - model_.mass()) > 1e-14 ||
            (bulk.kind() == ModelKind::SineGordon && std::abs(bulk.beta() - model_.beta()) > 1e-14))
            throw std::invalid_argument("defect type does not match the bulk model (free defect: klein-gordon, "
                                        "sine-gordon defect: sine-gordon with equal m and beta)");
        const double m_real = -grid_.x_min / h;
        const auto M = static_cast<std::size_t>(std::llround(m_real));
        if (!(grid_.x_min < 0.0 && grid_.x_max > 0.0) || std::abs(m_real - static_cast<double>(M)) > 1e-9 * std::max(1.0, m_real))
            throw std::invalid_argument("defect geometry needs x = 0 to be a grid node strictly inside the domain");
        if (M < 3 || grid_.n_cells - M < 3) throw std::invalid_argument("defect must have at least three cells on each side");
        n_phi_ = M + 1;
        n_psi_ = grid_.n_cells - M + 1;
    } else {
        n_phi_ = geom_.kind == GeometryKind::Periodic ? grid_.n_cells : grid_.n_cells + 1;
    }

    auto weights = [&](std::size_t n, bool periodic) {
        std::vector<double> w(n, h);
        if (!periodic) w.front() = w.back() = 0.5 * h;
        return w;
    };
    w_phi_ = weights(n_phi_, geom_.kind == GeometryKind::Periodic);
    if (n_psi_) w_psi_ = weights(n_psi_, false);

    const double layer = geom_.sponge_fraction * (grid_.x_max - grid_.x_min);
    const bool sponge_left = geom_.kind == GeometryKind::Line || geom_.kind == GeometryKind::HalfLine ||
                             geom_.kind == GeometryKind::Defect;
    const bool sponge_right = geom_.kind == GeometryKind::Line || geom_.kind == GeometryKind::Defect;
    auto rate = [&](double x) {
        if (layer <= 0.0) return 0.0;
        double g = 0;
        if (sponge_left && x < grid_.x_min + layer) g = std::pow((grid_.x_min + layer - x) / layer, 2);
        if (sponge_right && x > grid_.x_max - layer) g = std::max(g, std::pow((x - grid_.x_max + layer) / layer, 2));
        return geom_.sponge_strength * g;
    };
    damp_phi_.resize(n_phi_);
    for (std::size_t i = 0; i < n_phi_; ++i) damp_phi_[i] = rate(phi_x(i));
    damp_psi_.resize(n_psi_);
    for (std::size_t j = 0; j < n_psi_; ++j) damp_psi_[j] = rate(psi_x(j));
}

FieldState Simulation::sample(const Profile& field, const Profile& velocity) const {
    const std::size_t c = comps();
    FieldState s;
    s.phi = FieldSlice(n_phi_, c);
    for (std::size_t i = 0; i < n_phi_; ++i)
        for (std::size_t a = 0; a < c; ++a) {
            s.phi.field(i, a) = field(phi_x(i), a);
            s.phi.velocity(i, a) = velocity(phi_x(i), a);
        }
    if (has_defect()) {
        s.psi = FieldSlice(n_psi_, c);
        for (std::size_t j = 0; j < n_psi_; ++j) {
            s.psi.field(j, 0) = field(psi_x(j), 0);
            s.psi.velocity(j, 0) = velocity(psi_x(j), 0);
        }
        const double mu = 0.5 * grid_.h;
        s.p_phi = mu * s.phi.pi.back() - 0.5 * s.psi.phi.front();
        s.p_psi = mu * s.psi.pi.front() + 0.5 * s.phi.phi.back();
    }
    return s;
}

void Simulation::forces(const FieldSlice& f, const std::vector<double>& w, bool left_end_boundary,
                        bool right_end_boundary, bool periodic, std::vector<double>& out) const {
    const std::size_t c = comps(), n = f.nodes();
    const double inv_h = 1.0 / grid_.h;
    out.assign(n * c, 0.0);
    std::vector<double> grad(c);
    for (std::size_t i = 0; i < n; ++i) {
        model_.gradient(&f.phi[i * c], grad.data());
        for (std::size_t a = 0; a < c; ++a) out[i * c + a] = -w[i] * grad[a];
    }
    const std::size_t cells = periodic ? n : n - 1;
    for (std::size_t k = 0; k < cells; ++k) {
        const std::size_t j = (k + 1) % n;
        for (std::size_t a = 0; a < c; ++a) {
            const double d = (f.phi[j * c + a] - f.phi[k * c + a]) * inv_h;
            out[k * c + a] += d;
            out[j * c + a] -= d;
        }
    }
    if (left_end_boundary) {
        left_.gradient(&f.phi[0], grad.data());
        for (std::size_t a = 0; a < c; ++a) out[a] -= grad[a];
    }
    if (right_end_boundary) {
        right_.gradient(&f.phi[(n - 1) * c], grad.data());
        for (std::size_t a = 0; a < c; ++a) out[(n - 1) * c + a] -= grad[a];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < c; ++a) out[i * c + a] /= w[i];
}

void Simulation::half_kick(FieldSlice& f, const std::vector<double>& force, const std::vector<double>& damp,
                           std::size_t skip) const {
    const std::size_t c = comps();
    const double half = 0.5 * grid_.dt;
    for (std::size_t i = 0; i < f.nodes(); ++i) {
        if (i == skip) continue;
        const double decay = damp[i] > 0.0 ? std::exp(-damp[i] * half) : 1.0;
        for (std::size_t a = 0; a < c; ++a) f.pi[i * c + a] = decay * f.pi[i * c + a] + half * force[i * c + a];
    }
}

void Simulation::step(FieldState& s) const {
    const double dt = grid_.dt, h = grid_.h;
    const bool periodic = geom_.kind == GeometryKind::Periodic;
    const bool interval = geom_.kind == GeometryKind::Interval;
    const bool right_b = interval || geom_.kind == GeometryKind::HalfLine;
    std::vector<double> F;

    auto drift = [&](FieldSlice& f, std::size_t skip) {
        const std::size_t c = comps();
        for (std::size_t i = 0; i < f.nodes(); ++i) {
            if (i == skip) continue;
            for (std::size_t a = 0; a < c; ++a) f.phi[i * c + a] += dt * f.pi[i * c + a];
        }
    };

    if (!has_defect()) {
        forces(s.phi, w_phi_, interval, right_b, periodic, F);
        half_kick(s.phi, F, damp_phi_, kNone);
        drift(s.phi, kNone);
        forces(s.phi, w_phi_, interval, right_b, periodic, F);
        half_kick(s.phi, F, damp_phi_, kNone);
        s.t += dt;
        return;
    }

    const DefectSpec& D = *geom_.defect;
    const double mu = 0.5 * h;
    const std::size_t M = n_phi_ - 1;
    FieldSlice& ph = s.phi;
    FieldSlice& ps = s.psi;
    std::vector<double> G;

    const double phi0 = ph.phi[M], psi0 = ps.phi[0];
    const double Uphi0 = (ph.phi[M] - ph.phi[M - 1]) / h + mu * model_.gradient(ph.phi[M]);
    const double Upsi0 = (ps.phi[0] - ps.phi[1]) / h + mu * model_.gradient(ps.phi[0]);

    forces(ph, w_phi_, false, false, false, F);
    forces(ps, w_psi_, false, false, false, G);
    half_kick(ph, F, damp_phi_, M);
    half_kick(ps, G, damp_psi_, 0);
    drift(ph, M);
    drift(ps, 0);

    // Implicit interface update: residual of the discrete Euler-Lagrange equations at step n.
    auto residual = [&](double p1, double q1, double& r1, double& r2) {
        const double pm = 0.5 * (phi0 + p1), qm = 0.5 * (psi0 + q1);
        r1 = mu * (p1 - phi0) / dt + 0.5 * dt * Uphi0 - 0.5 * q1 + 0.5 * dt * D.dB_dphi(pm, qm) - s.p_phi;
        r2 = mu * (q1 - psi0) / dt + 0.5 * dt * Upsi0 + 0.5 * p1 + 0.5 * dt * D.dB_dpsi(pm, qm) - s.p_psi;
    };
    double p1 = phi0 + dt * interface_phi_t(s);
    double q1 = psi0 + dt * interface_psi_t(s);
    const double scale = std::max({1.0, std::abs(s.p_phi), std::abs(s.p_psi), std::abs(phi0), std::abs(psi0)});
    const double tol = 1e-13 * scale;
    double r1 = 0, r2 = 0;
    residual(p1, q1, r1, r2);
    double norm = std::hypot(r1, r2);
    int it = 0;
    while (!(norm <= tol)) {  // also catches a non-finite residual
        if (it == kNewtonMaxIterations) {
            last_residual_ = norm;
            last_iterations_ = it;
            std::ostringstream msg;
            msg << "defect Newton solve did not converge in " << kNewtonMaxIterations << " iterations at t = " << s.t
                << " (residual " << norm << ")";
            throw StepFailure(msg.str(), dump(s));
        }
        ++it;
        double bpp = 0, bpq = 0, bqq = 0;
        D.hessian(0.5 * (phi0 + p1), 0.5 * (psi0 + q1), bpp, bpq, bqq);
        const double j11 = mu / dt + 0.25 * dt * bpp, j12 = -0.5 + 0.25 * dt * bpq;
        const double j21 = 0.5 + 0.25 * dt * bpq, j22 = mu / dt + 0.25 * dt * bqq;
        const double det = j11 * j22 - j12 * j21;
        const double d1 = (j22 * r1 - j12 * r2) / det, d2 = (j11 * r2 - j21 * r1) / det;
        double alpha = 1.0;
        for (int k = 0; k < 12; ++k, alpha *= 0.5) {
            double t1 = 0, t2 = 0;
            residual(p1 - alpha * d1, q1 - alpha * d2, t1, t2);
            if (std::hypot(t1, t2) < norm || k == 11) {
                p1 -= alpha * d1;
                q1 -= alpha * d2;
                r1 = t1;
                r2 = t2;
                break;
            }
        }
        norm = std::hypot(r1, r2);
    }
    last_residual_ = norm;
    last_iterations_ = it;

    ph.phi[M] = p1;
    ps.phi[0] = q1;
    const double pm = 0.5 * (phi0 + p1), qm = 0.5 * (psi0 + q1);
    const double Uphi1 = (ph.phi[M] - ph.phi[M - 1]) / h + mu * model_.gradient(ph.phi[M]);
    const double Upsi1 = (ps.phi[0] - ps.phi[1]) / h + mu * model_.gradient(ps.phi[0]);
    s.p_phi = mu * (p1 - phi0) / dt - 0.5 * dt * Uphi1 - 0.5 * psi0 - 0.5 * dt * D.dB_dphi(pm, qm);
    s.p_psi = mu * (q1 - psi0) / dt - 0.5 * dt * Upsi1 + 0.5 * phi0 - 0.5 * dt * D.dB_dpsi(pm, qm);

    forces(ph, w_phi_, false, false, false, F);
    forces(ps, w_psi_, false, false, false, G);
    half_kick(ph, F, damp_phi_, M);
    half_kick(ps, G, damp_psi_, 0);
    ph.pi[M] = interface_phi_t(s);
    ps.pi[0] = interface_psi_t(s);
    s.t += dt;
}

double Simulation::interface_phi_t(const FieldState& s) const {
    return (s.p_phi + 0.5 * s.psi.phi.front()) / (0.5 * grid_.h);
}

double Simulation::interface_psi_t(const FieldState& s) const {
    return (s.p_psi - 0.5 * s.phi.phi.back()) / (0.5 * grid_.h);
}

std::pair<double, double> Simulation::interface_conditions(const FieldState& s) const {
    if (!has_defect()) throw std::logic_error("interface conditions need a defect geometry");
    const double h = grid_.h;
    const auto& p = s.phi.phi;
    const auto& q = s.psi.phi;
    const std::size_t M = n_phi_ - 1;
    const double phi_x = (3 * p[M] - 4 * p[M - 1] + p[M - 2]) / (2 * h);
    const double psi_x = (-3 * q[0] + 4 * q[1] - q[2]) / (2 * h);
    const DefectSpec& D = *geom_.defect;
    return {phi_x - interface_psi_t(s) + D.dB_dphi(p[M], q[0]), psi_x - interface_phi_t(s) - D.dB_dpsi(p[M], q[0])};
}

Diagnostics Simulation::diagnostics(const FieldState& s) const {
    const std::size_t c = comps();
    const bool periodic = geom_.kind == GeometryKind::Periodic;
    Diagnostics d;
    d.t = s.t;

    auto slice_terms = [&](const FieldSlice& f, const std::vector<double>& w) {
        const std::size_t n = f.nodes();
        double E = 0, P = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double kin = 0;
            for (std::size_t a = 0; a < c; ++a) kin += f.pi[i * c + a] * f.pi[i * c + a];
            E += w[i] * (0.5 * kin + model_.potential(&f.phi[i * c]));
        }
        const std::size_t cells = periodic ? n : n - 1;
        for (std::size_t k = 0; k < cells; ++k) {
            const std::size_t j = (k + 1) % n;
            for (std::size_t a = 0; a < c; ++a) {
                const double dphi = f.phi[j * c + a] - f.phi[k * c + a];
                E += 0.5 * dphi * dphi / grid_.h;
                P += 0.5 * (f.pi[k * c + a] + f.pi[j * c + a]) * dphi;
            }
        }
        return std::pair{E, P};
    };

    auto [E, P] = slice_terms(s.phi, w_phi_);
    if (geom_.kind == GeometryKind::Interval) E += left_.value(&s.phi.phi[0]);
    if (geom_.kind == GeometryKind::Interval || geom_.kind == GeometryKind::HalfLine)
        E += right_.value(&s.phi.phi[(s.phi.nodes() - 1) * c]);

    const double tq = is_sine_gordon(model_) ? model_.beta() / (2 * std::numbers::pi) : 0.0;
    if (has_defect()) {
        auto [E2, P2] = slice_terms(s.psi, w_psi_);
        const double phi0 = s.phi.phi.back(), psi0 = s.psi.phi.front();
        E += E2 + geom_.defect->B(phi0, psi0);
        P += P2;
        d.U = geom_.defect->U(phi0, psi0);
        d.Q_topological = tq * ((phi0 - s.phi.phi.front()) + (s.psi.phi.back() - psi0));
        d.Q_defect = tq * (psi0 - phi0);
        d.newton_residual = last_residual_;
        d.newton_iterations = last_iterations_;
    } else if (!periodic) {
        d.Q_topological = tq * (s.phi.phi.back() - s.phi.phi.front());
    }
    d.E = E;
    d.P = P;
    d.P_plus_U = P + d.U;
    return d;
}

std::string Simulation::dump(const FieldState& s) const {
    std::ostringstream os;
    os.precision(17);
    os << "t = " << s.t << "\n";
    if (has_defect())
        os << "interface phi = " << s.phi.phi.back() << ", psi = " << s.psi.phi.front() << ", p_phi = " << s.p_phi
           << ", p_psi = " << s.p_psi << "\n";
    auto row = [&](const char* name, const std::vector<double>& v) {
        os << name;
        for (double x : v) os << ' ' << x;
        os << "\n";
    };
    row("phi", s.phi.phi);
    row("phi_t", s.phi.pi);
    if (has_defect()) {
        row("psi", s.psi.phi);
        row("psi_t", s.psi.pi);
    }
    return os.str();
}

FieldState init_wavepacket(const Simulation& sim, double k0, double sigma, double x0, double amp, int direction) {
    if (!(sigma > 0.0)) throw std::invalid_argument("wavepacket width must be positive");
    if (!(k0 > 0.0)) throw std::invalid_argument("wavepacket carrier k0 must be positive; use direction for left movers");
    if (direction != 1 && direction != -1) throw std::invalid_argument("wavepacket direction must be +1 or -1");
    const auto& g = sim.grid();
    const auto& geo = sim.geometry();
    const double layer = geo.sponge_fraction * (g.x_max - g.x_min);
    const bool sponge_left = geo.kind == GeometryKind::Line || geo.kind == GeometryKind::HalfLine ||
                             geo.kind == GeometryKind::Defect;
    const bool sponge_right = geo.kind == GeometryKind::Line || geo.kind == GeometryKind::Defect;
    if (geo.kind != GeometryKind::Periodic) {
        const double lo = g.x_min + (sponge_left ? layer : 0.0);
        const double hi = g.x_max - (sponge_right ? layer : 0.0);
        if (x0 - 3 * sigma < lo || x0 + 3 * sigma > hi)
            throw std::invalid_argument("wavepacket violates the 3 sigma clearance from the domain ends and absorbing layers");
        if (geo.kind == GeometryKind::Defect && std::abs(x0) < 3 * sigma)
            throw std::invalid_argument("wavepacket violates the 3 sigma clearance from the defect");
    }
    const double m = linear_mass(sim.model());
    const double omega = std::sqrt(m * m + k0 * k0);
    const double vg = k0 / omega;
    const double s = direction;
    auto env = [=](double x) { return std::exp(-0.5 * (x - x0) * (x - x0) / (sigma * sigma)); };
    return sim.sample([=](double x, std::size_t) { return amp * env(x) * std::cos(k0 * (x - x0)); },
                      [=](double x, std::size_t) {
                          const double xi = x - x0;
                          return s * amp * env(x) * (omega * std::sin(k0 * xi) + vg * xi / (sigma * sigma) * std::cos(k0 * xi));
                      });
}

FieldState init_soliton(const Simulation& sim, double v, double x0, int charge) {
    if (!(std::abs(v) < 1.0)) throw std::invalid_argument("soliton velocity must satisfy |v| < 1");
    if (charge != 1 && charge != -1) throw std::invalid_argument("soliton charge must be +1 or -1");
    const Model& md = sim.model();
    if (md.kind() != ModelKind::SineGordon) throw std::invalid_argument("solitons are provided for the sine-Gordon model");
    const double m = md.mass(), beta = md.beta();
    const double gm = m / std::sqrt(1 - v * v);
    const double q = charge;
    return sim.sample([=](double x, std::size_t) { return 4.0 / beta * std::atan(std::exp(q * gm * (x - x0))); },
                      [=](double x, std::size_t) { return -q * v * gm * 2.0 / beta / std::cosh(gm * (x - x0)); });
}

FieldState init_boundary_mode(const Simulation& sim, double lambda_b, double amp) {
    const Model& md = sim.model();
    const double m = linear_mass(md);
    if (!(lambda_b > -m && lambda_b < 0.0))
        throw std::invalid_argument("boundary bound state requires -m < lambda_b < 0");
    const auto& geo = sim.geometry();
    if (geo.kind != GeometryKind::HalfLine || geo.right.kind != BoundarySpec::Kind::Robin ||
        std::abs(geo.right.lambda - lambda_b) > 1e-12)
        throw std::invalid_argument("boundary mode needs a half-line with a Robin end of the same lambda_b");
    const double xb = sim.grid().x_max;
    return sim.sample([=](double x, std::size_t) { return amp * std::exp(-lambda_b * (x - xb)); },
                      [](double, std::size_t) { return 0.0; });
}

}  // namespace intfield
