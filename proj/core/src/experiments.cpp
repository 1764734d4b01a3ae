#include "duowalk/experiments.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "duowalk/errors.hpp"

namespace duowalk {

namespace {

void check_grid(const std::vector<double>& grid, const std::string& key) {
    if (grid.empty()) throw InputError(key + ": grid must be non-empty");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw InputError(key + ": grid must be strictly increasing");
}

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct CellMetrics {
    double gamma_max = kNan;
    double t_at_max = kNan;
    double gamma_late_avg = kNan;
    double gamma_at_slice = kNan;
};

CellMetrics metrics_from_trace(const EvolutionTrace& trace, double late_fraction,
                               std::optional<double> slice_time) {
    CellMetrics m;
    m.gamma_max = -1.0;
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        if (trace.records[i].gamma_a > m.gamma_max) {
            m.gamma_max = trace.records[i].gamma_a;
            m.t_at_max = trace.times[i];
        }
    }
    m.gamma_late_avg = late_window_average(trace, late_fraction);
    if (slice_time) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < trace.times.size(); ++i)
            if (std::abs(trace.times[i] - *slice_time) < std::abs(trace.times[best] - *slice_time))
                best = i;
        m.gamma_at_slice = trace.records[best].gamma_a;
    }
    return m;
}

// Runs `total` independent cells on `workers` threads. Each cell writes only
// its own slot, so the outcome is identical for any worker count.
void run_cell_pool(std::size_t total, int workers,
                   const std::function<void(std::size_t)>& run_one) {
    const int pool = std::max(1, workers);
    if (pool == 1 || total <= 1) {
        for (std::size_t i = 0; i < total; ++i) run_one(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    const int spawned = static_cast<int>(std::min<std::size_t>(pool, total));
    threads.reserve(spawned);
    for (int w = 0; w < spawned; ++w)
        threads.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) run_one(i);
        });
    for (auto& t : threads) t.join();
}

}  // namespace

void SweepSpec::validate(bool need_theta_grid) const {
    chain.validate();
    propagation.validate();
    check_grid(u_grid, "u_grid");
    if (need_theta_grid) check_grid(theta_grid, "theta_grid");
    if (!(t_final > 0.0)) throw InputError("t_final: must be > 0");
    if (!(late_window_fraction > 0.0) || late_window_fraction > 1.0)
        throw InputError("late_window_fraction: must lie in (0, 1], got " +
                         std::to_string(late_window_fraction));
}

EvolutionTrace run_timeseries(const ChainSpec& chain, const InitialCondition& ic,
                              const PropagatorConfig& cfg, double t_final) {
    const TwoParticleState psi0 = build_initial_state(chain, ic);
    return evolve(chain, psi0, cfg, t_final);
}

double late_window_average(const EvolutionTrace& trace, double fraction) {
    if (trace.records.empty()) throw InputError("late_window_average: empty trace");
    const double t_start = trace.final_time * (1.0 - fraction);
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        if (trace.times[i] >= t_start - 1e-12) {
            sum += trace.records[i].gamma_a;
            ++count;
        }
    }
    if (count == 0) {  // window narrower than the sample spacing
        sum = trace.records.back().gamma_a;
        count = 1;
    }
    return sum / static_cast<double>(count);
}

std::vector<USweepCell> run_u_sweep(const SweepSpec& sweep, std::optional<double> fixed_theta,
                                    int workers, std::optional<double> slice_time) {
    sweep.validate(false);
    InitialCondition ic = sweep.ic;
    if (fixed_theta) ic.theta = *fixed_theta;
    std::vector<USweepCell> cells(sweep.u_grid.size());

    run_cell_pool(cells.size(), workers, [&](std::size_t i) {
        USweepCell& cell = cells[i];
        cell.u = sweep.u_grid[i];
        ChainSpec chain = sweep.chain;
        chain.interaction = cell.u;
        try {
            const EvolutionTrace trace =
                run_timeseries(chain, ic, sweep.propagation, sweep.t_final);
            const CellMetrics m =
                metrics_from_trace(trace, sweep.late_window_fraction, slice_time);
            cell.gamma_max = m.gamma_max;
            cell.t_at_max = m.t_at_max;
            cell.gamma_late_avg = m.gamma_late_avg;
            if (slice_time) cell.gamma_at_slice = m.gamma_at_slice;
        } catch (const std::exception& e) {
            cell.failed = true;
            cell.error = e.what();
            cell.gamma_max = cell.t_at_max = cell.gamma_late_avg = kNan;
            if (slice_time) cell.gamma_at_slice = kNan;
        }
    });
    return cells;
}

MapResult run_max_purity_map(const SweepSpec& sweep, int workers,
                             const std::function<void(std::size_t, std::size_t)>& progress) {
    sweep.validate(true);

    MapResult result;
    result.theta_grid = sweep.theta_grid;
    result.u_grid = sweep.u_grid;
    const std::size_t total = result.theta_grid.size() * result.u_grid.size();
    result.cells.resize(total);

    std::mutex progress_mutex;
    std::atomic<std::size_t> done{0};
    if (progress) progress(0, total);

    run_cell_pool(total, workers, [&](std::size_t i) {
        MapCell& cell = result.cells[i];
        cell.theta = result.theta_grid[i / result.u_grid.size()];
        cell.u = result.u_grid[i % result.u_grid.size()];

        ChainSpec chain = sweep.chain;
        chain.interaction = cell.u;
        InitialCondition ic = sweep.ic;
        ic.theta = cell.theta;
        try {
            const EvolutionTrace trace =
                run_timeseries(chain, ic, sweep.propagation, sweep.t_final);
            const CellMetrics m =
                metrics_from_trace(trace, sweep.late_window_fraction, std::nullopt);
            cell.gamma_max = m.gamma_max;
            cell.t_at_max = m.t_at_max;
            cell.gamma_late_avg = m.gamma_late_avg;
        } catch (const std::exception& e) {
            cell.failed = true;
            cell.error = e.what();
            cell.gamma_max = cell.t_at_max = cell.gamma_late_avg = kNan;
        }
        if (progress) {
            const std::size_t finished = done.fetch_add(1) + 1;
            std::lock_guard<std::mutex> lock(progress_mutex);
            progress(finished, total);
        }
    });
    return result;
}

std::vector<PhasePoint> phase_trajectory(const EvolutionTrace& trace) {
    if (trace.records.empty()) throw InputError("phase_trajectory: empty trace");
    std::vector<PhasePoint> points;
    points.reserve(trace.records.size());
    for (std::size_t i = 0; i < trace.records.size(); ++i)
        points.push_back({trace.records[i].gamma_diag, trace.records[i].gamma_a, trace.times[i]});
    return points;
}

}  // namespace duowalk
