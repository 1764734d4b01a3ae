#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "duowalk/observables.hpp"
#include "duowalk/state.hpp"

namespace duowalk::testing {

// Deterministic random unit-norm state; seeds are fixed per test site so
// failures reproduce.
inline TwoParticleState random_state(int n_sites, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    TwoParticleState state = make_zero_state(n_sites);
    for (Complex& a : state.amplitudes) a = Complex(dist(rng), dist(rng));
    const double inv = 1.0 / std::sqrt(norm_squared(state));
    for (Complex& a : state.amplitudes) a *= inv;
    return state;
}

// Projection onto the antisymmetric sector, renormalized.
inline TwoParticleState antisymmetrized(const TwoParticleState& state) {
    TwoParticleState out = state;
    const TwoParticleState swapped = swap_apply(state);
    for (std::size_t k = 0; k < out.amplitudes.size(); ++k)
        out.amplitudes[k] = state.amplitudes[k] - swapped.amplitudes[k];
    const double inv = 1.0 / std::sqrt(norm_squared(out));
    for (Complex& a : out.amplitudes) a *= inv;
    return out;
}

inline double max_amplitude_deviation(const TwoParticleState& a, const TwoParticleState& b) {
    double dev = 0.0;
    for (std::size_t k = 0; k < a.amplitudes.size(); ++k)
        dev = std::max(dev, std::abs(a.amplitudes[k] - b.amplitudes[k]));
    return dev;
}

inline double max_entry_deviation(const ReducedDensityMatrix& a,
                                  const ReducedDensityMatrix& b) {
    double dev = 0.0;
    for (std::size_t k = 0; k < a.entries.size(); ++k)
        dev = std::max(dev, std::abs(a.entries[k] - b.entries[k]));
    return dev;
}

// Structural invariants every sampled record has to satisfy. Returns a
// description of the first violation, or empty if clean.
inline std::string check_record_invariants(const ObservableRecord& rec, int n_sites,
                                           double tol = 1e-10) {
    const double n = static_cast<double>(n_sites);
    if (!(rec.gamma_a >= 1.0 / n - tol && rec.gamma_a <= 1.0 + tol))
        return "gamma_a out of [1/N, 1]: " + std::to_string(rec.gamma_a);
    if (!(rec.c_l1 >= -tol && rec.c_l1 <= n - 1.0 + tol))
        return "c_l1 out of [0, N-1]: " + std::to_string(rec.c_l1);
    if (std::abs(rec.gamma_a - rec.gamma_diag - rec.gamma_offdiag) > tol)
        return "purity decomposition identity violated";
    if (std::abs(rec.w_sym + rec.w_antisym - 1.0) > tol)
        return "projector weights do not sum to 1";
    if (rec.gamma_diag < -tol || rec.gamma_offdiag < -tol)
        return "negative purity component";
    return "";
}

}  // namespace duowalk::testing
