#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "duowalk/chain.hpp"

namespace duowalk {

using Complex = std::complex<double>;

// Flat index of the basis state |m,n> (particle a at site m, particle b at
// site n), 0-based internal convention: idx = m*N + n.
std::size_t flat_index(int m, int n, int n_sites);

// Inverse of flat_index.
std::pair<int, int> site_pair(std::size_t index, int n_sites);

// Two-particle wavefunction on the N^2 site-pair basis. amplitudes[m*N + n]
// holds f_{m,n}. Plain value type; states produced by build_initial_state
// have unit norm, but intermediate vectors (e.g. H|psi>) need not.
struct TwoParticleState {
    int n_sites = 0;
    std::vector<Complex> amplitudes;

    Complex& at(int m, int n) { return amplitudes[flat_index(m, n, n_sites)]; }
    const Complex& at(int m, int n) const { return amplitudes[flat_index(m, n, n_sites)]; }
};

// Zero-filled state for N sites.
TwoParticleState make_zero_state(int n_sites);

// Initial condition of the run. Sites are 1-based here, matching the paper's
// i = 1..N labels; they are converted internally. When theta is set, the
// state is the phased two-term superposition (|m0,n0> + e^{i theta}|n0,m0>)/sqrt(2);
// when absent, the plain product state |m0,n0>.
struct InitialCondition {
    int m0 = 0;
    int n0 = 0;
    std::optional<double> theta;

    static InitialCondition phased(int m0, int n0, double theta) { return {m0, n0, theta}; }
    static InitialCondition product(int m0, int n0) { return {m0, n0, std::nullopt}; }
};

// Builds the normalized initial state. For m0 == n0 the two terms coincide
// and the vector (1 + e^{i theta})/sqrt(2) |m0,m0> is renormalized; it
// throws DegenerateInputError when |1 + e^{i theta}| <= 1e-9 (null state).
// Out-of-range sites throw InputError.
TwoParticleState build_initial_state(const ChainSpec& chain, const InitialCondition& ic);

// Particle exchange, g_{m,n} = f_{n,m}. Involutive.
TwoParticleState swap_apply(const TwoParticleState& state);

struct ProjectorWeights {
    double symmetric = 0.0;
    double antisymmetric = 0.0;
};

// Populations of the exchange-symmetric and antisymmetric subspaces,
//   w_+ = sum_{m<n} |(f_{m,n}+f_{n,m})/sqrt(2)|^2 + sum_m |f_{m,m}|^2,
//   w_- = sum_{m<n} |(f_{m,n}-f_{n,m})/sqrt(2)|^2.
// For unit-norm states w_+ + w_- = 1.
ProjectorWeights projector_weights(const TwoParticleState& state);

// sum |f|^2 with compensated accumulation; the norm-conservation diagnostic
// 1 - norm_squared must resolve deviations at the 1e-14 level.
double norm_squared(const TwoParticleState& state);

// <lhs|rhs> (conjugate-linear in lhs).
Complex inner_product(const TwoParticleState& lhs, const TwoParticleState& rhs);

}  // namespace duowalk
