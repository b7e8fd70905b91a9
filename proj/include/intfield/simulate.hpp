#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "intfield/field.hpp"
#include "intfield/model.hpp"

namespace intfield {

struct Grid1D {
    double x_min = 0;
    double x_max = 1;
    std::size_t n_cells = 16;
    double h = 0;
    double dt = 0;
    double courant = 0.5;

    /// Throws std::invalid_argument unless x_max > x_min, n_cells >= 16 and 0 < courant <= 0.9.
    static Grid1D make(double x_min, double x_max, std::size_t n_cells, double courant = 0.5);
    [[nodiscard]] double x(std::size_t i) const { return x_min + static_cast<double>(i) * h; }
};

enum class GeometryKind { Periodic, Line, HalfLine, Interval, Defect };

GeometryKind parse_geometry(const std::string& s);
std::string geometry_name(GeometryKind g);

/// Domain layout and end conditions.
///  Periodic  x_max identified with x_min; nodes 0..n_cells-1.
///  Line      both ends absorbing.
///  HalfLine  physical boundary at x_max (condition `right`), absorbing left end.
///  Interval  boundaries at both ends, no absorption.
///  Defect    defect at x = 0 (must be a grid node), absorbing outer ends.
struct Geometry {
    GeometryKind kind = GeometryKind::Line;
    BoundarySpec left;
    BoundarySpec right;
    std::optional<DefectSpec> defect;
    double sponge_fraction = 0.1;
    double sponge_strength = 2.0;  ///< peak damping rate at the outer edge of a sponge
};

/// phi is the whole field, or the x <= 0 side for a defect; psi holds the x >= 0 side.
/// For a defect the interface nodes (last phi node, first psi node) are advanced through
/// their canonical momenta p_phi = mu phi_t - psi/2, p_psi = mu psi_t + phi/2, mu = h/2.
struct FieldState {
    FieldSlice phi;
    FieldSlice psi;
    double p_phi = 0;
    double p_psi = 0;
    double t = 0;
};

struct Diagnostics {
    double t = 0;
    double E = 0;
    double P = 0;
    double U = 0;
    double P_plus_U = 0;
    double Q_topological = 0;  ///< field charge (beta / 2 pi) [phi(end) - phi(start)], sine-Gordon only
    double Q_defect = 0;       ///< charge held by the defect, (beta / 2 pi)(psi(0) - phi(0))
    double newton_residual = 0;
    int newton_iterations = 0;
};

/// Raised when the interface Newton solve fails; carries a textual state dump.
class StepFailure : public std::runtime_error {
public:
    StepFailure(const std::string& what, std::string dump) : std::runtime_error(what), dump_(std::move(dump)) {}
    [[nodiscard]] const std::string& dump() const { return dump_; }

private:
    std::string dump_;
};

using Profile = std::function<double(double x, std::size_t component)>;

class Simulation {
public:
    Simulation(Model model, Grid1D grid, Geometry geometry);

    [[nodiscard]] const Model& model() const { return model_; }
    [[nodiscard]] const Grid1D& grid() const { return grid_; }
    [[nodiscard]] const Geometry& geometry() const { return geom_; }
    [[nodiscard]] bool has_defect() const { return geom_.kind == GeometryKind::Defect; }

    /// Node counts of the phi and psi slices.
    [[nodiscard]] std::size_t phi_nodes() const { return n_phi_; }
    [[nodiscard]] std::size_t psi_nodes() const { return n_psi_; }
    [[nodiscard]] double phi_x(std::size_t i) const { return grid_.x(i); }
    [[nodiscard]] double psi_x(std::size_t j) const { return grid_.x(n_phi_ - 1 + j); }

    /// State sampled from profiles for the field and its time derivative (both sides of a defect).
    [[nodiscard]] FieldState sample(const Profile& field, const Profile& velocity) const;

    /// One second-order step. The bulk is velocity Verlet; a defect interface is advanced
    /// with a variational midpoint rule solved by damped Newton (25 iterations at most).
    void step(FieldState& s) const;
    [[nodiscard]] Diagnostics diagnostics(const FieldState& s) const;

    /// Time derivative at the interface nodes, recovered from the canonical momenta.
    [[nodiscard]] double interface_phi_t(const FieldState& s) const;
    [[nodiscard]] double interface_psi_t(const FieldState& s) const;

    /// Residuals of the continuum interface conditions phi_x = psi_t - B_phi and
    /// psi_x = phi_t + B_psi evaluated with one-sided second-order differences.
    [[nodiscard]] std::pair<double, double> interface_conditions(const FieldState& s) const;

private:
    Model model_;
    Grid1D grid_;
    Geometry geom_;
    BoundaryTerm left_, right_;
    std::size_t n_phi_ = 0, n_psi_ = 0;
    std::vector<double> w_phi_, w_psi_;          // quadrature weights
    std::vector<double> damp_phi_, damp_psi_;    // sponge rates gamma(x)
    mutable double last_residual_ = 0;
    mutable int last_iterations_ = 0;

    void forces(const FieldSlice& f, const std::vector<double>& w, bool left_end_boundary, bool right_end_boundary,
                bool periodic, std::vector<double>& out) const;
    void half_kick(FieldSlice& f, const std::vector<double>& force, const std::vector<double>& damp,
                   std::size_t skip) const;
    [[nodiscard]] std::string dump(const FieldState& s) const;
    [[nodiscard]] std::size_t comps() const { return model_.components(); }
};

/// Near-monochromatic packet A exp(-(x-x0)^2 / 2 sigma^2) cos(k0 (x - x0)), moving with
/// group velocity direction*k0/omega. Rejects a packet closer than 3 sigma to either
/// end or to the absorbing layer.
FieldState init_wavepacket(const Simulation& sim, double k0, double sigma, double x0, double amp, int direction = 1);

/// Sine-Gordon kink (charge +1) or antikink (charge -1) at x0 moving with velocity v.
FieldState init_soliton(const Simulation& sim, double v, double x0, int charge);

/// Boundary bound state A exp(-lambda_b (x - x_max)) of a Robin half-line, -m < lambda_b < 0.
FieldState init_boundary_mode(const Simulation& sim, double lambda_b, double amp);

}  // namespace intfield
