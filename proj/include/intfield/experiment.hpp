#pragma once

#include <string>
#include <vector>

#include "intfield/config.hpp"
#include "intfield/simulate.hpp"

namespace intfield {

/// All accepted simulate keys with their defaults.
Config simulate_schema();

/// Parsed physics objects of a resolved simulate config.
Model model_from_config(const Config& c);
Grid1D grid_from_config(const Config& c);
Geometry geometry_from_config(const Config& c, const Model& model);
Simulation simulation_from_config(const Config& c);
FieldState initial_state(const Simulation& sim, const Config& c);

struct Matrix {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

struct ExperimentResult {
    Matrix series;  ///< t, E, P, U, P_plus_U, Q_topological, [Q_defect], probe_1..n
    Matrix snapshots_phi;
    Matrix snapshots_psi;  ///< defect geometry only
    std::vector<Diagnostics> history;
    std::vector<double> probe_x;  ///< node positions actually sampled
    FieldState final_state;
};

/// Resolves `config` against the schema (unknown keys are rejected), builds every
/// component and only then starts time stepping.
ExperimentResult run_experiment(const Config& config);

/// Writes timeseries.csv, snapshot CSVs and run.manifest under `dir`; every file atomically.
void write_experiment(const std::string& dir, const Config& resolved, const ExperimentResult& r);

}  // namespace intfield
