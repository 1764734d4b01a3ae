// Command-line front end: binds run configuration (presets, config file,
// DUOWALK_* environment overrides, flags; later sources win) to the
// simulation library and emits plot-ready CSV files.
//
// Exit status: 0 success, 1 invalid input (message names the offending key),
// 2 numerical failure (norm-drift abort or tolerance miss in `verify`).

#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "duowalk/config.hpp"
#include "duowalk/csv.hpp"
#include "duowalk/errors.hpp"
#include "duowalk/experiments.hpp"
#include "duowalk/hamiltonian.hpp"
#include "duowalk/observables.hpp"
#include "duowalk/oracle.hpp"
#include "duowalk/propagator.hpp"

namespace {

using namespace duowalk;

struct CliOptions {
    RunConfig flags;
    std::string config_path;
    std::string preset;
    std::optional<double> theta_pi_units;
    std::optional<double> slice_time;
    int workers = 0;  // 0 -> machine parallelism
};

RunConfig preset_config(const std::string& name) {
    RunConfig cfg;
    if (name.empty()) return cfg;
    if (name == "paper") {
        cfg.n_sites = 300;
        cfg.m0 = 150;
        cfg.n0 = 151;
        cfg.t_final = 70.0;
        cfg.u_grid = parse_grid("0:20:41", "u_grid");
        cfg.theta_grid = parse_grid("0:" + std::to_string(M_PI) + ":33", "theta_grid");
    } else if (name == "desk") {
        cfg.n_sites = 201;
        cfg.m0 = 101;
        cfg.n0 = 102;
        cfg.t_final = 40.0;
        cfg.u_grid = parse_grid("0:20:21", "u_grid");
        cfg.theta_grid = parse_grid("0:" + std::to_string(M_PI) + ":17", "theta_grid");
    } else {
        throw InputError("preset: unknown preset '" + name + "' (use paper or desk)");
    }
    cfg.dt = 0.01;
    cfg.order = 20;
    cfg.sample_stride = 50;
    return cfg;
}

RunConfig assemble(const CliOptions& opts) {
    RunConfig merged = preset_config(opts.preset);
    if (!opts.config_path.empty()) merged.merge_from(load_config_file(opts.config_path));
    merged.merge_from(env_overrides());

    RunConfig flags = opts.flags;
    if (opts.theta_pi_units) {
        if (flags.theta) throw InputError("theta: give either --theta or --theta-pi-units");
        flags.theta = *opts.theta_pi_units * M_PI;
        flags.product_input = false;
    }
    merged.merge_from(flags);
    return merged;
}

template <typename T>
T require(const std::optional<T>& value, const char* key) {
    if (!value) throw InputError(std::string(key) + ": required (flag or config file)");
    return *value;
}

ChainSpec chain_from(const RunConfig& cfg) {
    ChainSpec chain;
    chain.n_sites = require(cfg.n_sites, "n_sites");
    chain.hopping = cfg.j.value_or(1.0);
    chain.interaction = require(cfg.u, "u");
    chain.validate();
    return chain;
}

// theta or an explicit product request must be present; there is no default
// exchange phase.
InitialCondition ic_from(const RunConfig& cfg) {
    InitialCondition ic;
    ic.m0 = require(cfg.m0, "m0");
    ic.n0 = require(cfg.n0, "n0");
    if (cfg.product_input) {
        ic.theta.reset();
    } else if (cfg.theta) {
        ic.theta = *cfg.theta;
    } else {
        throw InputError("theta: required (--theta, --theta-pi-units or --product)");
    }
    return ic;
}

PropagatorConfig propagation_from(const RunConfig& cfg) {
    PropagatorConfig p;
    if (cfg.dt) p.dt = *cfg.dt;
    if (cfg.order) p.order = *cfg.order;
    if (cfg.sample_stride) p.sample_stride = *cfg.sample_stride;
    if (!(p.dt > 0.0)) throw InputError("dt: must be > 0, got " + std::to_string(p.dt));
    p.validate();
    return p;
}

std::string out_path(const RunConfig& cfg) { return require(cfg.out_path, "out"); }

int effective_workers(int workers) {
    if (workers > 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

SweepSpec sweep_from(const RunConfig& cfg, bool need_theta_grid) {
    SweepSpec sweep;
    sweep.chain.n_sites = require(cfg.n_sites, "n_sites");
    sweep.chain.hopping = cfg.j.value_or(1.0);
    sweep.chain.interaction = 0.0;  // template only; the grid value is used per cell
    sweep.ic.m0 = require(cfg.m0, "m0");
    sweep.ic.n0 = require(cfg.n0, "n0");
    if (cfg.product_input)
        sweep.ic.theta.reset();
    else if (cfg.theta)
        sweep.ic.theta = *cfg.theta;
    sweep.u_grid = cfg.u_grid;
    sweep.theta_grid = cfg.theta_grid;
    sweep.propagation = propagation_from(cfg);
    sweep.t_final = require(cfg.t_final, "t_final");
    sweep.late_window_fraction = cfg.late_window_fraction.value_or(0.2);
    sweep.validate(need_theta_grid);
    return sweep;
}

int run_evolve(const CliOptions& opts) {
    const RunConfig cfg = assemble(opts);
    const ChainSpec chain = chain_from(cfg);
    const InitialCondition ic = ic_from(cfg);
    const PropagatorConfig prop = propagation_from(cfg);
    const double t_final = require(cfg.t_final, "t_final");
    const std::string out = out_path(cfg);

    const EvolutionTrace trace = run_timeseries(chain, ic, prop, t_final);
    write_timeseries_csv(trace, out);
    std::fprintf(stderr, "evolve: %zu samples to tJ = %g, max norm error %.3e -> %s\n",
                 trace.records.size(), trace.final_time, trace.max_norm_error, out.c_str());
    return 0;
}

int run_sweep_u(const CliOptions& opts) {
    const RunConfig cfg = assemble(opts);
    SweepSpec sweep = sweep_from(cfg, false);
    if (!sweep.ic.theta && !cfg.product_input)
        throw InputError("theta: required (--theta, --theta-pi-units or --product)");
    const std::string out = out_path(cfg);
    const int workers = effective_workers(opts.workers);

    std::fprintf(stderr, "sweep-u: %zu cells on %d workers\n", sweep.u_grid.size(), workers);
    const std::vector<USweepCell> cells = run_u_sweep(sweep, workers, opts.slice_time);
    write_u_sweep_csv(cells, out);

    int failures = 0;
    for (const USweepCell& c : cells)
        if (c.failed) {
            ++failures;
            std::fprintf(stderr, "cell u=%g failed: %s\n", c.u, c.error.c_str());
        }
    std::fprintf(stderr, "sweep-u: wrote %s\n", out.c_str());
    return failures == 0 ? 0 : 2;
}

int run_map(const CliOptions& opts) {
    const RunConfig cfg = assemble(opts);
    SweepSpec sweep = sweep_from(cfg, true);
    const std::string out = out_path(cfg);
    const int workers = effective_workers(opts.workers);

    std::size_t last_percent = 0;
    auto progress = [&](std::size_t done, std::size_t total) {
        if (done == 0) {
            std::fprintf(stderr, "map: %zu cells (%zu theta x %zu u) on %d workers\n", total,
                         sweep.theta_grid.size(), sweep.u_grid.size(), workers);
            return;
        }
        const std::size_t percent = done * 100 / total;
        if (percent >= last_percent + 5 || done == total) {
            last_percent = percent;
            std::fprintf(stderr, "map: %zu/%zu cells (%zu%%)\n", done, total, percent);
        }
    };

    const MapResult map = run_max_purity_map(sweep, workers, progress);
    write_map_csv(map, out);

    int failures = 0;
    for (const MapCell& c : map.cells)
        if (c.failed) {
            ++failures;
            std::fprintf(stderr, "cell theta=%g u=%g failed: %s\n", c.theta, c.u,
                         c.error.c_str());
        }
    std::fprintf(stderr, "map: wrote %s\n", out.c_str());
    return failures == 0 ? 0 : 2;
}

int run_correlation(const CliOptions& opts) {
    const RunConfig cfg = assemble(opts);
    const ChainSpec chain = chain_from(cfg);
    const InitialCondition ic = ic_from(cfg);
    const PropagatorConfig prop = propagation_from(cfg);
    const double t_final = require(cfg.t_final, "t_final");
    const std::string out = out_path(cfg);

    // Snapshot only; skip the per-sample reduction work.
    const Observer bare = [](double t, const TwoParticleState&) {
        ObservableRecord rec;
        rec.t = t;
        return rec;
    };
    const TwoParticleState psi0 = build_initial_state(chain, ic);
    const EvolutionTrace trace = evolve(chain, psi0, prop, t_final, bare);
    write_correlation_csv(correlation_map(trace.final_state), chain.n_sites, out);
    std::fprintf(stderr, "correlation: |f|^2 snapshot at tJ = %g -> %s\n", trace.final_time,
                 out.c_str());
    return 0;
}

int run_verify(const CliOptions& opts) {
    const RunConfig cfg = assemble(opts);
    ChainSpec chain = chain_from(cfg);
    const PropagatorConfig prop = propagation_from(cfg);
    const double t_final = require(cfg.t_final, "t_final");

    // Default input: the neighbor product state used throughout the study.
    InitialCondition ic;
    ic.m0 = cfg.m0.value_or((chain.n_sites + 1) / 2);
    ic.n0 = cfg.n0.value_or(ic.m0 < chain.n_sites ? ic.m0 + 1 : std::max(1, ic.m0 - 1));
    if (cfg.product_input)
        ic.theta.reset();
    else if (cfg.theta)
        ic.theta = *cfg.theta;

    const TwoParticleState psi0 = build_initial_state(chain, ic);
    const Observer bare = [](double t, const TwoParticleState&) {
        ObservableRecord rec;
        rec.t = t;
        return rec;
    };
    const EvolutionTrace trace = evolve(chain, psi0, prop, t_final, bare);

    const oracle::DenseHamiltonian dense = oracle::build_dense(chain);
    const TwoParticleState reference = oracle::spectral_evolve(dense, psi0, trace.final_time);

    double state_dev = 0.0;
    for (std::size_t k = 0; k < reference.amplitudes.size(); ++k)
        state_dev = std::max(state_dev,
                             std::abs(trace.final_state.amplitudes[k] - reference.amplitudes[k]));

    const ReducedDensityMatrix rho_fast = reduce_to_particle_a(trace.final_state);
    const ReducedDensityMatrix rho_oracle = oracle::dense_partial_trace(reference);
    double rho_dev = 0.0;
    for (std::size_t k = 0; k < rho_fast.entries.size(); ++k)
        rho_dev = std::max(rho_dev, std::abs(rho_fast.entries[k] - rho_oracle.entries[k]));

    constexpr double kStateTol = 1e-10;
    constexpr double kRhoTol = 1e-12;
    std::printf("verify: n=%d u=%g t=%g\n", chain.n_sites, chain.interaction,
                trace.final_time);
    std::printf("  state max deviation (taylor vs spectral): %.3e (tol %.0e)\n", state_dev,
                kStateTol);
    std::printf("  rho_a max deviation (gram vs contraction): %.3e (tol %.0e)\n", rho_dev,
                kRhoTol);
    const bool ok = state_dev <= kStateTol && rho_dev <= kRhoTol;
    std::printf("verify: %s\n", ok ? "PASS" : "FAIL");
    return ok ? 0 : 2;
}

void add_common_flags(CLI::App* cmd, CliOptions& opts, bool with_theta, bool with_grids) {
    cmd->add_option("--config", opts.config_path, "key=value config file");
    cmd->add_option("--preset", opts.preset, "parameter preset: paper or desk");
    cmd->add_option("-n,--n,--n-sites", opts.flags.n_sites, "chain length N");
    cmd->add_option("--j", opts.flags.j, "hopping J (> 0, energy unit)");
    cmd->add_option("--m0", opts.flags.m0, "input site of particle a (1-based)");
    cmd->add_option("--n0", opts.flags.n0, "input site of particle b (1-based)");
    cmd->add_option("--dt", opts.flags.dt, "time step (default 0.01)");
    cmd->add_option("--order", opts.flags.order, "Taylor truncation order (default 20)");
    cmd->add_option("--sample-stride", opts.flags.sample_stride,
                    "steps between observable samples (default 50)");
    cmd->add_option("--t-final", opts.flags.t_final, "evolution time in 1/J");
    cmd->add_option("-o,--out", opts.flags.out_path, "output CSV path");
    if (with_theta) {
        auto* theta = cmd->add_option("--theta", opts.flags.theta, "exchange phase in radians");
        auto* pi_units =
            cmd->add_option("--theta-pi-units", opts.theta_pi_units, "exchange phase / pi");
        auto* product = cmd->add_flag("--product", opts.flags.product_input,
                                      "plain product input |m0,n0> (no phase superposition)");
        theta->excludes(pi_units)->excludes(product);
        pi_units->excludes(product);
    }
    if (with_grids) {
        cmd->add_option_function<std::string>(
            "--u-grid",
            [&opts](const std::string& text) { opts.flags.u_grid = parse_grid(text, "u_grid"); },
            "U grid: comma list or lo:hi:count");
        cmd->add_option("--late-window-fraction", opts.flags.late_window_fraction,
                        "trailing fraction of the trace averaged for gamma_late_avg");
        cmd->add_option("-w,--workers", opts.workers,
                        "worker threads (default: machine parallelism)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"duowalk: two interacting distinguishable particles on a finite chain, with "
                 "a tunable exchange phase in the initial state"};
    app.require_subcommand(1);

    CliOptions evolve_opts, sweep_opts, map_opts, corr_opts, verify_opts;

    CLI::App* evolve_cmd =
        app.add_subcommand("evolve", "time series of purity/coherence observables");
    add_common_flags(evolve_cmd, evolve_opts, true, false);
    evolve_cmd->add_option("-u,--u", evolve_opts.flags.u, "interaction strength U/J");

    CLI::App* sweep_cmd = app.add_subcommand("sweep-u", "max/late purity vs interaction U");
    add_common_flags(sweep_cmd, sweep_opts, true, true);
    sweep_cmd->add_option("--slice-time", sweep_opts.slice_time,
                          "also record gamma_a at the sample nearest this time");

    CLI::App* map_cmd = app.add_subcommand("map", "maximum-purity map over (theta, U)");
    add_common_flags(map_cmd, map_opts, false, true);
    map_cmd->add_option_function<std::string>(
        "--theta-grid",
        [&map_opts](const std::string& text) {
            map_opts.flags.theta_grid = parse_grid(text, "theta_grid");
        },
        "theta grid in radians: comma list or lo:hi:count");

    CLI::App* corr_cmd =
        app.add_subcommand("correlation", "|f_{m,n}|^2 snapshot at a given time");
    add_common_flags(corr_cmd, corr_opts, true, false);
    corr_cmd->add_option("-u,--u", corr_opts.flags.u, "interaction strength U/J");

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "certify the matrix-free path against the dense oracle (small N)");
    add_common_flags(verify_cmd, verify_opts, true, false);
    verify_cmd->add_option("-u,--u", verify_opts.flags.u, "interaction strength U/J");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (evolve_cmd->parsed()) return run_evolve(evolve_opts);
        if (sweep_cmd->parsed()) return run_sweep_u(sweep_opts);
        if (map_cmd->parsed()) return run_map(map_opts);
        if (corr_cmd->parsed()) return run_correlation(corr_opts);
        if (verify_cmd->parsed()) return run_verify(verify_opts);
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s (step %ld, drift %.3e)\n", e.what(), e.step,
                     e.drift);
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
