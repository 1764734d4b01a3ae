#pragma once

#include <optional>
#include <string>
#include <vector>

#include "duowalk/chain.hpp"
#include "duowalk/propagator.hpp"
#include "duowalk/state.hpp"

namespace duowalk {

// Parameter grids for U-sweeps and the theta x U maximum-purity map.
// chain.interaction and ic.theta act as templates overridden per grid point.
struct SweepSpec {
    ChainSpec chain;
    InitialCondition ic;
    std::vector<double> u_grid;
    std::vector<double> theta_grid;
    PropagatorConfig propagation;
    double t_final = 0.0;
    double late_window_fraction = 0.2;

    void validate(bool need_theta_grid) const;
};

// One cell of a U-sweep. gamma_max is the maximum of gamma_a over the
// sample grid; gamma_late_avg the mean over the trailing
// late_window_fraction of the trace. A failed cell keeps its error message
// and NaN metrics instead of being dropped.
struct USweepCell {
    double u = 0.0;
    double gamma_max = 0.0;
    double t_at_max = 0.0;
    double gamma_late_avg = 0.0;
    std::optional<double> gamma_at_slice;
    bool failed = false;
    std::string error;
};

struct MapCell {
    double theta = 0.0;
    double u = 0.0;
    double gamma_max = 0.0;
    double t_at_max = 0.0;
    double gamma_late_avg = 0.0;
    bool failed = false;
    std::string error;
};

// Fig.-5-style grid, cells stored row-major over (theta, u).
struct MapResult {
    std::vector<double> theta_grid;
    std::vector<double> u_grid;
    std::vector<MapCell> cells;

    const MapCell& cell(std::size_t theta_index, std::size_t u_index) const {
        return cells[theta_index * u_grid.size() + u_index];
    }
};

// Full sampled trajectory for one (chain, initial condition) pair.
EvolutionTrace run_timeseries(const ChainSpec& chain, const InitialCondition& ic,
                              const PropagatorConfig& cfg, double t_final);

// One trajectory per u_grid value. fixed_theta, when set, replaces the
// template's phase; leave it empty to sweep sweep.ic as given (including
// the theta-less product input). slice_time additionally records gamma_a at
// the sample nearest that time. Cells are independent and run on `workers`
// threads; results do not depend on the worker count.
std::vector<USweepCell> run_u_sweep(const SweepSpec& sweep,
                                    std::optional<double> fixed_theta = std::nullopt,
                                    int workers = 1,
                                    std::optional<double> slice_time = std::nullopt);

// theta_grid x u_grid map of maximum purity. Reports the total cell count
// to progress() (if any) before execution and one tick per finished cell.
MapResult run_max_purity_map(const SweepSpec& sweep, int workers = 1,
                             const std::function<void(std::size_t done, std::size_t total)>&
                                 progress = nullptr);

struct PhasePoint {
    double gamma_diag = 0.0;
    double gamma_a = 0.0;
    double t = 0.0;
};

// (gamma_diag, gamma_a) trajectory parametrized by time; the phase-diagram
// view of a trace.
std::vector<PhasePoint> phase_trajectory(const EvolutionTrace& trace);

// Mean of gamma_a over the trailing `fraction` of the sampled trace.
double late_window_average(const EvolutionTrace& trace, double fraction);

}  // namespace duowalk
