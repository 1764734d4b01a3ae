#pragma once

#include <functional>
#include <vector>

#include "duowalk/chain.hpp"
#include "duowalk/observables.hpp"
#include "duowalk/state.hpp"

namespace duowalk {

// Numerical-method knobs. The defaults (dt = 0.01, order 20) keep the norm
// conserved to 1e-14 over tJ = 70 for U up to 50; only weaken them knowingly.
struct PropagatorConfig {
    double dt = 0.01;
    int order = 20;
    double norm_abort_threshold = 1e-10;
    int sample_stride = 50;

    void validate() const;
};

// Sampled history of one trajectory. final_time is the actual evolved time
// (steps * dt), which can differ from the requested t_final when the latter
// is not on the step grid.
struct EvolutionTrace {
    std::vector<double> times;
    std::vector<ObservableRecord> records;
    TwoParticleState final_state;
    double max_norm_error = 0.0;
    double final_time = 0.0;
};

using Observer = std::function<ObservableRecord(double t, const TwoParticleState& state)>;

// One short-time step psi <- Gamma(dt) psi with the truncated-Taylor
// propagator, built by the recurrence
//   term_0 = psi,  term_l = (-i dt / l) H term_{l-1},  Gamma psi = sum_l term_l.
// No renormalization is applied; norm drift is the fidelity diagnostic.
// Throws NumericalError if the result is non-finite.
TwoParticleState taylor_step(const ChainSpec& chain, const TwoParticleState& state,
                             const PropagatorConfig& cfg);

// Evolves state0 to t_final (step count rounded to nearest), invoking the
// observer at t = 0, every sample_stride steps, and at the final step.
// Aborts with NumericalError (carrying step and drift) when |1 - norm^2|
// exceeds cfg.norm_abort_threshold.
EvolutionTrace evolve(const ChainSpec& chain, const TwoParticleState& state0,
                      const PropagatorConfig& cfg, double t_final, const Observer& observer);

// evolve with the standard full-record observer.
EvolutionTrace evolve(const ChainSpec& chain, const TwoParticleState& state0,
                      const PropagatorConfig& cfg, double t_final);

}  // namespace duowalk
