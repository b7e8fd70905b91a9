#include "intfield/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "intfield/io.hpp"

namespace intfield {

Config simulate_schema() {
    Config s;
    s.set("model", "kind", "klein-gordon");  // klein-gordon | sine-gordon | sinh-gordon | toda
    s.set("model", "mass", "1");
    s.set("model", "beta", "1");
    s.set("model", "family", "A");
    s.set("model", "rank", "1");

    s.set("grid", "x_min", "-20");
    s.set("grid", "x_max", "20");
    s.set("grid", "n_cells", "800");
    s.set("grid", "courant", "0.5");
    s.set("grid", "t_end", "10");

    s.set("geometry", "kind", "line");
    for (const char* end : {"left", "right"}) {
        const std::string e = end;
        s.set("geometry", e, "neumann");  // neumann | robin | toda
        s.set("geometry", e + "_lambda", "0");
        s.set("geometry", e + "_offset", "0");
        s.set("geometry", e + "_b", "");
    }
    s.set("geometry", "defect", "none");  // none | free | sine-gordon
    s.set("geometry", "defect_lambda", "1");
    s.set("geometry", "sponge_fraction", "0.1");
    s.set("geometry", "sponge_strength", "2");

    s.set("initial", "kind", "vacuum");  // vacuum | wavepacket | soliton | boundary-mode | gaussian | fourier
    s.set("initial", "amplitude", "0.1");
    s.set("initial", "x0", "0");
    s.set("initial", "width", "1");
    s.set("initial", "k0", "1");
    s.set("initial", "direction", "1");
    s.set("initial", "velocity", "0");
    s.set("initial", "charge", "1");
    s.set("initial", "lambda_b", "-0.5");
    s.set("initial", "modes", "");
    s.set("initial", "velocity_modes", "");
    s.set("initial", "component", "0");
    s.set("initial", "noise", "0");
    s.set("initial", "seed", "0");

    s.set("output", "probes", "0");
    s.set("output", "sample_every", "1");
    s.set("output", "snapshot_every", "0");
    s.set("output", "snapshot_stride", "1");
    return s;
}

Model model_from_config(const Config& c) {
    const std::string& kind = c.get("model", "kind");
    const double m = c.get_double("model", "mass"), beta = c.get_double("model", "beta");
    if (kind == "klein-gordon") return Model::klein_gordon(m);
    if (kind == "sine-gordon") return Model::sine_gordon(m, beta);
    if (kind == "sinh-gordon") return Model::sinh_gordon(m, beta);
    if (kind == "toda") {
        const long rank = c.get_int("model", "rank");
        if (rank < 1 || rank > 64) throw ConfigError("[model] rank out of range");
        return Model::affine_toda(build_root_system(parse_family(c.get("model", "family")), static_cast<int>(rank)), m, beta);
    }
    throw ConfigError("[model] kind: unknown model '" + kind + "'");
}

Grid1D grid_from_config(const Config& c) {
    const long n = c.get_int("grid", "n_cells");
    if (n < 0) throw ConfigError("[grid] n_cells must be positive");
    return Grid1D::make(c.get_double("grid", "x_min"), c.get_double("grid", "x_max"), static_cast<std::size_t>(n),
                        c.get_double("grid", "courant"));
}

namespace {

BoundarySpec end_spec(const Config& c, const std::string& end) {
    const std::string& kind = c.get("geometry", end);
    if (kind == "neumann") return BoundarySpec::neumann();
    if (kind == "robin")
        return BoundarySpec::robin(c.get_double("geometry", end + "_lambda"), c.get_double("geometry", end + "_offset"));
    if (kind == "toda") return BoundarySpec::toda(c.get_list("geometry", end + "_b"));
    throw ConfigError("[geometry] " + end + ": unknown boundary '" + kind + "' (neumann, robin, toda)");
}

}  // namespace

Geometry geometry_from_config(const Config& c, const Model& model) {
    Geometry g;
    g.kind = parse_geometry(c.get("geometry", "kind"));
    g.left = end_spec(c, "left");
    g.right = end_spec(c, "right");
    g.sponge_fraction = c.get_double("geometry", "sponge_fraction");
    g.sponge_strength = c.get_double("geometry", "sponge_strength");
    const std::string& d = c.get("geometry", "defect");
    const double ld = c.get_double("geometry", "defect_lambda");
    if (d == "free") {
        g.defect = DefectSpec::free_defect(ld, model.mass());
    } else if (d == "sine-gordon") {
        g.defect = DefectSpec::sine_gordon(ld, model.mass(), model.beta());
    } else if (d != "none") {
        throw ConfigError("[geometry] defect: unknown defect '" + d + "' (none, free, sine-gordon)");
    }
    if (g.defect && g.kind != GeometryKind::Defect) throw ConfigError("[geometry] a defect needs kind = defect");
    return g;
}

Simulation simulation_from_config(const Config& c) {
    Model m = model_from_config(c);
    Geometry g = geometry_from_config(c, m);
    return Simulation(std::move(m), grid_from_config(c), std::move(g));
}

FieldState initial_state(const Simulation& sim, const Config& c) {
    const std::string& kind = c.get("initial", "kind");
    const double amp = c.get_double("initial", "amplitude"), x0 = c.get_double("initial", "x0");
    const double width = c.get_double("initial", "width");
    const long comp = c.get_int("initial", "component");
    const std::size_t ncomp = sim.model().components();
    if (comp < -1 || comp >= static_cast<long>(ncomp)) throw ConfigError("[initial] component out of range (-1 selects all)");
    auto selected = [comp](std::size_t a) { return comp < 0 || static_cast<long>(a) == comp; };
    auto zero = [](double, std::size_t) { return 0.0; };

    FieldState s;
    if (kind == "vacuum") {
        s = sim.sample(zero, zero);
    } else if (kind == "wavepacket") {
        const long dir = c.get_int("initial", "direction");
        s = init_wavepacket(sim, c.get_double("initial", "k0"), width, x0, amp, static_cast<int>(dir));
    } else if (kind == "soliton") {
        s = init_soliton(sim, c.get_double("initial", "velocity"), x0, static_cast<int>(c.get_int("initial", "charge")));
    } else if (kind == "boundary-mode") {
        s = init_boundary_mode(sim, c.get_double("initial", "lambda_b"), amp);
    } else if (kind == "gaussian") {
        if (!(width > 0)) throw ConfigError("[initial] width must be positive");
        s = sim.sample(
            [=](double x, std::size_t a) { return selected(a) ? amp * std::exp(-0.5 * (x - x0) * (x - x0) / (width * width)) : 0.0; },
            zero);
    } else if (kind == "fourier") {
        // phi = sum_j a_j cos(2 pi j (x - x_min) / L), phi_t = sum_j b_j sin(2 pi j (x - x_min) / L)
        const auto a = c.get_list("initial", "modes"), b = c.get_list("initial", "velocity_modes");
        const double xm = sim.grid().x_min, L = sim.grid().x_max - sim.grid().x_min;
        auto series = [=](const std::vector<double>& coef, bool cosine) {
            return [=](double x, std::size_t comp_a) {
                if (!selected(comp_a)) return 0.0;
                double v = 0;
                for (std::size_t j = 0; j < coef.size(); ++j) {
                    const double arg = 2 * std::numbers::pi * static_cast<double>(j + 1) * (x - xm) / L;
                    v += coef[j] * (cosine ? std::cos(arg) : std::sin(arg));
                }
                return v;
            };
        };
        s = sim.sample(series(a, true), series(b, false));
    } else {
        throw ConfigError("[initial] kind: unknown initial state '" + kind + "'");
    }

    const double noise = c.get_double("initial", "noise");
    if (noise != 0.0) {
        const long seed = c.get_int("initial", "seed");
        std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
        auto perturb = [&](std::vector<double>& v) {
            for (double& x : v) x += noise * (2.0 * std::generate_canonical<double, 53>(rng) - 1.0);
        };
        perturb(s.phi.phi);
        perturb(s.psi.phi);
        if (sim.has_defect()) {
            // keep the interface momenta consistent with the perturbed positions
            const double mu = 0.5 * sim.grid().h;
            s.p_phi = mu * s.phi.pi.back() - 0.5 * s.psi.phi.front();
            s.p_psi = mu * s.psi.pi.front() + 0.5 * s.phi.phi.back();
        }
    }
    return s;
}

namespace {

struct ProbePoint {
    bool psi = false;
    std::size_t node = 0;
    double x = 0;
};

ProbePoint locate(const Simulation& sim, double x) {
    const auto& g = sim.grid();
    if (!(x >= g.x_min && x <= g.x_max)) throw ConfigError("[output] probe " + format_double(x) + " lies outside the grid");
    if (sim.has_defect() && x > 0) {
        const auto j = static_cast<std::size_t>(std::lround(x / g.h));
        return {true, std::min(j, sim.psi_nodes() - 1), sim.psi_x(std::min(j, sim.psi_nodes() - 1))};
    }
    auto i = static_cast<std::size_t>(std::lround((x - g.x_min) / g.h));
    i = std::min(i, sim.phi_nodes() - 1);
    return {false, i, sim.phi_x(i)};
}

}  // namespace

ExperimentResult run_experiment(const Config& config) {
    const Config c = config.resolved_against(simulate_schema());
    const Simulation sim = simulation_from_config(c);
    FieldState s = initial_state(sim, c);

    const double t_end = c.get_double("grid", "t_end");
    if (!(t_end >= 0)) throw ConfigError("[grid] t_end must be non-negative");
    const long sample_every = c.get_int("output", "sample_every");
    const long snap_every = c.get_int("output", "snapshot_every");
    const long stride = c.get_int("output", "snapshot_stride");
    if (sample_every < 1 || snap_every < 0 || stride < 1)
        throw ConfigError("[output] sample_every and snapshot_stride must be >= 1, snapshot_every >= 0");
    std::vector<ProbePoint> probes;
    for (double x : c.get_list("output", "probes")) probes.push_back(locate(sim, x));
    const std::size_t probe_comp = 0;
    const long steps = std::lround(t_end / sim.grid().dt);

    ExperimentResult r;
    r.series.header = {"t", "E", "P", "U", "P_plus_U", "Q_topological"};
    if (sim.has_defect()) r.series.header.push_back("Q_defect");
    for (std::size_t k = 0; k < probes.size(); ++k) {
        r.series.header.push_back("probe_" + std::to_string(k + 1));
        r.probe_x.push_back(probes[k].x);
    }
    auto snap_header = [&](bool psi, std::size_t nodes) {
        std::vector<std::string> h{"t"};
        for (std::size_t i = 0; i < nodes; i += static_cast<std::size_t>(stride))
            h.push_back(format_double(psi ? sim.psi_x(i) : sim.phi_x(i)));
        return h;
    };
    if (snap_every > 0) {
        r.snapshots_phi.header = snap_header(false, sim.phi_nodes());
        if (sim.has_defect()) r.snapshots_psi.header = snap_header(true, sim.psi_nodes());
    }

    const std::size_t nc = sim.model().components();
    auto record = [&](long step) {
        if (step % sample_every == 0 || step == steps) {
            const Diagnostics d = sim.diagnostics(s);
            r.history.push_back(d);
            std::vector<double> row{d.t, d.E, d.P, d.U, d.P_plus_U, d.Q_topological};
            if (sim.has_defect()) row.push_back(d.Q_defect);
            for (const auto& p : probes) row.push_back((p.psi ? s.psi : s.phi).field(p.node, probe_comp));
            r.series.rows.push_back(std::move(row));
        }
        if (snap_every > 0 && (step % snap_every == 0 || step == steps)) {
            auto snap = [&](const FieldSlice& f, Matrix& m) {
                std::vector<double> row{s.t};
                for (std::size_t i = 0; i < f.nodes(); i += static_cast<std::size_t>(stride))
                    row.push_back(f.phi[i * nc + probe_comp]);
                m.rows.push_back(std::move(row));
            };
            snap(s.phi, r.snapshots_phi);
            if (sim.has_defect()) snap(s.psi, r.snapshots_psi);
        }
    };

    record(0);
    for (long n = 1; n <= steps; ++n) {
        sim.step(s);
        for (double v : s.phi.phi)
            if (!std::isfinite(v))
                throw StepFailure("field became non-finite at t = " + format_double(s.t), "");
        record(n);
    }
    r.final_state = std::move(s);
    return r;
}

void write_experiment(const std::string& dir, const Config& resolved, const ExperimentResult& r) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path d(dir);
    write_atomic((d / "timeseries.csv").string(), to_csv(r.series.header, r.series.rows));
    if (!r.snapshots_phi.header.empty())
        write_atomic((d / "snapshots_phi.csv").string(), to_csv(r.snapshots_phi.header, r.snapshots_phi.rows));
    if (!r.snapshots_psi.header.empty())
        write_atomic((d / "snapshots_psi.csv").string(), to_csv(r.snapshots_psi.header, r.snapshots_psi.rows));
    write_atomic((d / "run.manifest").string(), "# intfield simulate\n" + resolved.to_ini());
}

}  // namespace intfield
