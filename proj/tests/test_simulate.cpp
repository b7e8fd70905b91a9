#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "intfield/simulate.hpp"
#include "intfield/spectral.hpp"

using namespace intfield;
using std::numbers::pi;

namespace {

Geometry geometry(GeometryKind k) {
    Geometry g;
    g.kind = k;
    return g;
}

double max_abs(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("grid invariants") {
    const auto g = Grid1D::make(-1, 1, 20, 0.5);
    CHECK(g.h == doctest::Approx(0.1));
    CHECK(g.dt == doctest::Approx(0.05));
    CHECK(g.x(20) == doctest::Approx(1.0));
    CHECK_THROWS_AS(Grid1D::make(0, 1, 15), std::invalid_argument);
    CHECK_THROWS_AS(Grid1D::make(0, 1, 32, 0.95), std::invalid_argument);
    CHECK_THROWS_AS(Grid1D::make(1, 0, 32), std::invalid_argument);
    CHECK(parse_geometry("half-line") == GeometryKind::HalfLine);
    CHECK_THROWS_AS(parse_geometry("annulus"), std::invalid_argument);
}

TEST_CASE("model potentials") {
    const auto kg = Model::klein_gordon(1.3);
    const auto sg = Model::sine_gordon(1.3, 0.7);
    // the sine-Gordon linearisation is Klein-Gordon with the same mass
    for (double phi : {1e-2, 5e-3, 2.5e-3}) {
        CHECK(std::abs(sg.potential(phi) - kg.potential(phi)) < 0.1 * std::pow(phi, 4) * 1.3 * 1.3 * 0.49);
        CHECK(std::abs(sg.gradient(phi) - kg.gradient(phi)) < 0.3 * std::pow(phi, 3) * 1.3 * 1.3 * 0.49);
    }
    // sinh-Gordon(2m, sqrt2 beta) is the A_1 Toda theory at (m, beta)
    const auto rs = build_root_system(Family::A, 1);
    const double m = 0.8, beta = 0.6;
    const auto toda = Model::affine_toda(rs, m, beta);
    const auto shg = Model::sinh_gordon(2 * m, std::sqrt(2.0) * beta);
    for (double phi = -2; phi <= 2; phi += 0.25) {
        CHECK(toda.potential(&phi) == doctest::Approx(shg.potential(phi)).epsilon(1e-12));
        double g = 0;
        toda.gradient(&phi, &g);
        CHECK(g == doctest::Approx(shg.gradient(phi)).epsilon(1e-12));
    }
    CHECK(toda.potential(std::vector<double>{0.0}.data()) == 0.0);
    const auto a3 = Model::affine_toda(build_root_system(Family::A, 3), 1, 1);
    REQUIRE(a3.components() == 3);
    std::vector<double> zero(3, 0.0), grad(3);
    a3.gradient(zero.data(), grad.data());
    CHECK(max_abs(grad) < 1e-14);
}

TEST_CASE("boundary terms") {
    const auto kg = Model::klein_gordon(1);
    double phi = 0.7, g = 0;
    BoundaryTerm(BoundarySpec::robin(0.0), kg).gradient(&phi, &g);
    CHECK(g == 0.0);  // Robin at lambda = 0 is Neumann
    BoundaryTerm(BoundarySpec::robin(0.4, 0.1), kg).gradient(&phi, &g);
    CHECK(g == doctest::Approx(0.4 * 0.7 - 0.1));

    const auto shg = Model::sinh_gordon(1.0, 0.5);
    const BoundaryTerm t(BoundarySpec::toda({0.3, -0.2}), shg);
    const double e = 1e-6;
    double p1 = phi + e, p0 = phi - e;
    t.gradient(&phi, &g);
    CHECK(g == doctest::Approx((t.value(&p1) - t.value(&p0)) / (2 * e)).epsilon(1e-8));
    CHECK(t.value(&phi) == doctest::Approx(4.0 * (-0.2 * std::exp(0.25 * phi) + 0.3 * std::exp(-0.25 * phi))));
    CHECK_THROWS_AS(BoundaryTerm(BoundarySpec::toda({1.0}), shg), std::invalid_argument);
    CHECK_THROWS_AS(BoundaryTerm(BoundarySpec::toda({1.0, 1.0}), kg), std::invalid_argument);
    // A_2 Toda boundaries must satisfy b_i^2 = 4
    const auto a2 = Model::affine_toda(build_root_system(Family::A, 2), 1, 1);
    CHECK_NOTHROW(BoundaryTerm(BoundarySpec::toda({2, -2, 2}), a2));
    CHECK_THROWS(BoundaryTerm(BoundarySpec::toda({1, 2, 2}), a2));
}

TEST_CASE("defect constraint identities") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3, 3);
    for (const auto& D : {DefectSpec::free_defect(0.7, 1.1), DefectSpec::sine_gordon(1.2, 1.0, 1.0),
                          DefectSpec::sine_gordon(0.4, 1.7, 0.6)}) {
        const Model bulk = D.bulk_model();
        for (int s = 0; s < 200; ++s) {
            const double phi = u(rng), psi = u(rng);
            double bpp = 0, bpq = 0, bqq = 0;
            D.hessian(phi, psi, bpp, bpq, bqq);
            CHECK(std::abs(bpp - bqq) <= 1e-12);
            const double bp = D.dB_dphi(phi, psi), bq = D.dB_dpsi(phi, psi);
            const double lhs = 0.5 * (bp * bp - bq * bq), rhs = bulk.potential(phi) - bulk.potential(psi);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
            // analytic first derivatives against central differences of B
            const double e = 1e-5;
            CHECK(bp == doctest::Approx((D.B(phi + e, psi) - D.B(phi - e, psi)) / (2 * e)).epsilon(1e-7));
            CHECK(bq == doctest::Approx((D.B(phi, psi + e) - D.B(phi, psi - e)) / (2 * e)).epsilon(1e-7));
            CHECK(D.U(phi, psi) == doctest::Approx(D.f(phi + psi) - D.g(phi - psi)));
        }
    }
    CHECK_THROWS_AS(DefectSpec::free_defect(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("vacuum stays at rest") {
    for (auto k : {GeometryKind::Periodic, GeometryKind::Line, GeometryKind::HalfLine, GeometryKind::Interval,
                   GeometryKind::Defect}) {
        Geometry g = geometry(k);
        if (k == GeometryKind::Defect) g.defect = DefectSpec::free_defect(0.5, 1.0);
        g.right = BoundarySpec::robin(0.3);
        const Simulation sim(Model::klein_gordon(1), Grid1D::make(-4, 4, 64), g);
        auto s = sim.sample([](double, std::size_t) { return 0.0; }, [](double, std::size_t) { return 0.0; });
        for (int i = 0; i < 100; ++i) sim.step(s);
        CHECK(max_abs(s.phi.phi) == 0.0);
        CHECK(max_abs(s.psi.phi) == 0.0);
        const auto d = sim.diagnostics(s);
        CHECK(d.E == 0.0);
        CHECK(d.P == 0.0);
    }
}

TEST_CASE("plane-wave dispersion on a periodic line") {
    const double L = 2 * pi * 4, k = 4 * 2 * pi / L, m = 1;
    const double w = std::sqrt(k * k + m * m);
    double prev = 0;
    for (std::size_t n : {128, 256, 512}) {
        const Simulation sim(Model::klein_gordon(m), Grid1D::make(0, L, n), geometry(GeometryKind::Periodic));
        auto s = sim.sample([&](double x, std::size_t) { return 1e-3 * std::cos(k * x); },
                            [&](double x, std::size_t) { return 1e-3 * w * std::sin(k * x); });
        // phase of the e^{ikx} Fourier coefficient, unwrapped over the run
        auto phase = [&]() {
            std::complex<double> c = 0;
            for (std::size_t i = 0; i < s.phi.nodes(); ++i) c += s.phi.phi[i] * std::polar(1.0, -k * sim.phi_x(i));
            return std::arg(c);
        };
        double total = 0, last = phase();
        const int steps = static_cast<int>(50 / sim.grid().dt);
        for (int i = 0; i < steps; ++i) {
            sim.step(s);
            const double p = phase();
            total += std::remainder(last - p, 2 * pi);
            last = p;
        }
        const double measured = total / s.t;
        const double err = std::abs(measured - w) / w;
        CHECK(err < 5e-3);
        if (prev > 0) CHECK(err < 0.5 * prev);
        prev = err;
        // leapfrog on the three-point Laplacian: (2/dt) sin(w dt/2) = sqrt(m^2 + (2/h)^2 sin^2(kh/2))
        const double h = sim.grid().h, dt = sim.grid().dt;
        const double rhs = std::sqrt(m * m + std::pow(2 / h * std::sin(k * h / 2), 2));
        CHECK(measured == doctest::Approx(2 / dt * std::asin(rhs * dt / 2)).epsilon(2e-5));
    }
}

TEST_CASE("bulk energy drift is second order in dt") {
    const double L = 40;
    double drift[2] = {0, 0};
    int j = 0;
    for (double c : {0.4, 0.2}) {
        const Simulation sim(Model::sine_gordon(1, 1), Grid1D::make(0, L, 400, c), geometry(GeometryKind::Periodic));
        auto s = sim.sample([&](double x, std::size_t) { return 1.5 * std::cos(2 * pi * x / L); },
                            [&](double x, std::size_t) { return 0.5 * std::sin(4 * pi * x / L); });
        const double E0 = sim.diagnostics(s).E;
        const int steps = static_cast<int>(std::lround(20 / sim.grid().dt));
        for (int i = 0; i < steps; ++i) {
            sim.step(s);
            drift[j] = std::max(drift[j], std::abs(sim.diagnostics(s).E - E0));
        }
        ++j;
    }
    CHECK(drift[0] / drift[1] == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("wavepacket") {
    const Simulation sim(Model::klein_gordon(1), Grid1D::make(-50, 50, 2000), geometry(GeometryKind::Line));
    const auto zero = init_wavepacket(sim, 1.5, 4, 0, 0.0);
    CHECK(max_abs(zero.phi.phi) == 0.0);
    CHECK(max_abs(zero.phi.pi) == 0.0);
    CHECK_THROWS_AS(init_wavepacket(sim, 1.5, 4, 30, 1.0), std::invalid_argument);  // runs into the sponge

    auto s = init_wavepacket(sim, 1.5, 4, -10, 1e-2);
    // carrier from a spatial transform, within one bin
    const double bin = 2 * pi / (sim.grid().h * static_cast<double>(s.phi.phi.size() - 1));
    CHECK(std::abs(measure_frequency(s.phi.phi, sim.grid().h) - 1.5) < bin);

    const double E0 = sim.diagnostics(s).E;
    double x_prev = -10;
    const int steps = static_cast<int>(10 / sim.grid().dt);
    for (int i = 0; i < steps; ++i) sim.step(s);
    CHECK(std::abs(sim.diagnostics(s).E - E0) < 1e-4 * E0);
    // centre of energy density moves at the group velocity
    double num = 0, den = 0;
    for (std::size_t i = 0; i < s.phi.nodes(); ++i) {
        const double e = s.phi.pi[i] * s.phi.pi[i] + s.phi.phi[i] * s.phi.phi[i];
        num += sim.phi_x(i) * e;
        den += e;
    }
    const double vg = 1.5 / std::sqrt(1 + 1.5 * 1.5);
    CHECK((num / den - x_prev) / s.t == doctest::Approx(vg).epsilon(0.02));
}

TEST_CASE("sine-Gordon kink") {
    const Simulation sim(Model::sine_gordon(1, 1), Grid1D::make(-40, 40, 4000), geometry(GeometryKind::Line));
    CHECK_THROWS_AS(init_soliton(sim, 1.0, 0, 1), std::invalid_argument);
    const double E_static = sim.diagnostics(init_soliton(sim, 0.0, 0, 1)).E;
    CHECK(E_static == doctest::Approx(8.0).epsilon(1e-3));
    for (double v : {0.3, 0.6}) {
        auto s = init_soliton(sim, v, -5, 1);
        const auto d = sim.diagnostics(s);
        CHECK(d.Q_topological == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(d.E / E_static == doctest::Approx(1 / std::sqrt(1 - v * v)).epsilon(0.01));
    }
    CHECK(sim.diagnostics(init_soliton(sim, 0.2, 0, -1)).Q_topological == doctest::Approx(-1.0).epsilon(1e-9));

    // a static kink stays put over 10^3 steps
    auto s = init_soliton(sim, 0.0, 0.0, 1);
    for (int i = 0; i < 1000; ++i) sim.step(s);
    std::size_t c = 0;
    while (s.phi.phi[c] < pi) ++c;
    const double xc = sim.phi_x(c - 1) + sim.grid().h * (pi - s.phi.phi[c - 1]) / (s.phi.phi[c] - s.phi.phi[c - 1]);
    CHECK(std::abs(xc) < sim.grid().h);

    // kinks belong to sine-Gordon only
    CHECK_THROWS_AS(init_soliton(Simulation(Model::klein_gordon(1), sim.grid(), sim.geometry()), 0.1, 0, 1),
                    std::invalid_argument);
}

TEST_CASE("boundary bound state") {
    Geometry g = geometry(GeometryKind::HalfLine);
    g.right = BoundarySpec::robin(-0.6);
    const Simulation sim(Model::klein_gordon(1), Grid1D::make(-20, 0, 1000), g);
    CHECK_THROWS_AS(init_boundary_mode(sim, 0.2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(init_boundary_mode(sim, -1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(init_boundary_mode(sim, -0.5, 1.0), std::invalid_argument);  // end condition differs
    auto s = init_boundary_mode(sim, -0.6, 0.1);
    const auto& f = s.phi.phi;
    const std::size_t N = f.size() - 1;
    const double h = sim.grid().h;
    // phi_x = -lambda phi at the boundary, second-order one-sided difference
    CHECK((3 * f[N] - 4 * f[N - 1] + f[N - 2]) / (2 * h) == doctest::Approx(0.6 * f[N]).epsilon(1e-4));
    std::vector<double> probe;
    const int steps = static_cast<int>(80 / sim.grid().dt);
    for (int i = 0; i < steps; ++i) {
        sim.step(s);
        probe.push_back(s.phi.phi.back());
    }
    CHECK(measure_frequency(probe, sim.grid().dt) == doctest::Approx(0.8).epsilon(0.01));
}

TEST_CASE("frequency measurement") {
    const double dt = 0.05;
    std::vector<double> one, two, flat(4000, 0.3), short_series;
    for (int i = 0; i < 4000; ++i) {
        const double t = i * dt;
        one.push_back(std::cos(0.8 * t));
        two.push_back(std::cos(0.8 * t) + 0.7 * std::cos(2.3 * t));
    }
    for (int i = 0; i < 200; ++i) short_series.push_back(std::cos(0.8 * i * dt));
    const double bin = 2 * pi / (dt * 4000);
    CHECK(std::abs(measure_frequency(one, dt) - 0.8) < bin);
    CHECK(std::abs(measure_frequency(two, dt) - 0.8) < bin);
    FrequencyOptions single;
    single.require_single_tone = true;
    CHECK_NOTHROW(measure_frequency(one, dt, single));
    CHECK_THROWS_AS(measure_frequency(two, dt, single), std::invalid_argument);
    CHECK_THROWS_AS(measure_frequency(flat, dt), std::invalid_argument);
    CHECK_THROWS_AS(measure_frequency(short_series, dt), std::invalid_argument);
    const auto peaks = spectral_peaks(two, dt);
    REQUIRE(peaks.size() >= 2);
    CHECK(std::abs(peaks[1].omega - 2.3) < bin);
}

TEST_CASE("interval geometry") {
    // Robin ends: bulk plus boundary energy is conserved
    Geometry g = geometry(GeometryKind::Interval);
    g.left = BoundarySpec::robin(0.25);
    g.right = BoundarySpec::robin(0.5);
    const Simulation sim(Model::klein_gordon(1), Grid1D::make(-5, 5, 250), g);
    auto s = sim.sample([](double x, std::size_t) { return std::exp(-4 * (x - 1.3) * (x - 1.3)); },
                        [](double, std::size_t) { return 0.0; });
    const double E0 = sim.diagnostics(s).E;
    double drift = 0;
    for (int i = 0; i < 4000; ++i) {
        sim.step(s);
        drift = std::max(drift, std::abs(sim.diagnostics(s).E - E0));
    }
    CHECK(drift < 1e-3 * E0);
}

TEST_CASE("defect interface") {
    Geometry g = geometry(GeometryKind::Defect);
    g.defect = DefectSpec::sine_gordon(1.2, 1, 1);
    CHECK_THROWS_AS(Simulation(Model::klein_gordon(1), Grid1D::make(-20, 20, 800), g), std::invalid_argument);
    CHECK_THROWS_AS(Simulation(Model::sine_gordon(1, 1), Grid1D::make(-20.01, 20, 800), g), std::invalid_argument);

    const Simulation sim(Model::sine_gordon(1, 1), Grid1D::make(-30, 30, 2400), g);
    REQUIRE(sim.psi_x(0) == doctest::Approx(0.0).epsilon(1e-12));
    auto s = init_soliton(sim, 0.5, -8, 1);
    const auto d0 = sim.diagnostics(s);
    const double q0 = d0.Q_topological + d0.Q_defect;
    double worst_E = 0, worst_PU = 0, worst_q = 0, worst_newton = 0, worst_cond = 0;
    const int steps = static_cast<int>(34 / sim.grid().dt);
    for (int i = 0; i < steps; ++i) {
        sim.step(s);
        const auto d = sim.diagnostics(s);
        worst_E = std::max(worst_E, std::abs(d.E - d0.E) / d0.E);
        worst_PU = std::max(worst_PU, std::abs(d.P_plus_U - d0.P_plus_U) / std::abs(d0.P_plus_U));
        worst_q = std::max(worst_q, std::abs(d.Q_topological + d.Q_defect - q0));
        worst_newton = std::max(worst_newton, d.newton_residual);
        const auto [r1, r2] = sim.interface_conditions(s);
        worst_cond = std::max({worst_cond, std::abs(r1), std::abs(r2)});
    }
    CHECK(worst_E < 1e-3);
    CHECK(worst_PU < 1e-3);
    CHECK(worst_q < 1e-4);  // far-end values move only by absorbed radiation
    CHECK(worst_newton < 1e-12);
    // continuum interface conditions hold to discretisation accuracy
    CHECK(worst_cond < 0.05);
    // the total charge is the end-to-end jump of the field
    CHECK(std::abs(s.psi.phi.back() - s.phi.phi.front() - 2 * pi * q0) < 1e-3);

    // a corrupted interface momentum makes Newton fail with a state dump
    auto bad = s;
    bad.p_phi = std::nan("");
    try {
        sim.step(bad);
        FAIL("expected StepFailure");
    } catch (const StepFailure& e) {
        CHECK(std::string(e.what()).find("25 iterations") != std::string::npos);
        CHECK(e.dump().find("interface phi") != std::string::npos);
    }
}

TEST_CASE("free defect disappears as lambda -> 0") {
    const auto grid = Grid1D::make(-40, 40, 2000);
    const Simulation ref(Model::klein_gordon(1), grid, geometry(GeometryKind::Line));
    auto r = init_wavepacket(ref, 1.5, 3, -15, 0.1);
    const int steps = static_cast<int>(30 / grid.dt);
    for (int i = 0; i < steps; ++i) ref.step(r);
    const std::size_t M = 1000;
    double prev = 1e300;
    for (double ld : {0.4, 0.2, 0.1}) {
        Geometry g = geometry(GeometryKind::Defect);
        g.defect = DefectSpec::free_defect(ld, 1);
        const Simulation sim(Model::klein_gordon(1), grid, g);
        auto s = init_wavepacket(sim, 1.5, 3, -15, 0.1);
        const auto d0 = sim.diagnostics(s);
        double worst = 0;
        for (int i = 0; i < steps; ++i) {
            sim.step(s);
            worst = std::max(worst, std::abs(sim.diagnostics(s).P_plus_U - d0.P_plus_U));
        }
        CHECK(worst < 1e-3 * std::abs(d0.P));
        double err = 0;
        for (std::size_t j = 0; j < s.psi.nodes(); ++j) err += std::pow(s.psi.phi[j] - r.phi.phi[M + j], 2);
        CHECK(err < prev);
        prev = err;
    }
}
