#pragma once

#include <Eigen/Dense>

#include "duowalk/chain.hpp"
#include "duowalk/observables.hpp"
#include "duowalk/state.hpp"

// Brute-force validation backend. Everything here materializes the N^2 x N^2
// operators the production path deliberately avoids; it exists to certify
// the fast path on small chains (N <= 40) and is reached through tests and
// the `verify` CLI command.

namespace duowalk::oracle {

inline constexpr int kMaxSites = 40;  // N^4 dense entries beyond this get unwieldy

struct DenseHamiltonian {
    Eigen::MatrixXcd matrix;  // N^2 x N^2, Hermitian
    ChainSpec spec;
};

// Dense matrix whose action equals apply_hamiltonian. Throws InputError
// above the size guard.
DenseHamiltonian build_dense(const ChainSpec& chain);

// exp(-i H t)|psi0> via full Hermitian eigendecomposition,
// V exp(-i diag(E) t) V^dagger |psi0>.
TwoParticleState spectral_evolve(const DenseHamiltonian& h, const TwoParticleState& state0,
                                 double t);

// Partial trace over particle b done the slow way: build |psi><psi| and
// contract the b indices. Cross-checks the Gram-form reduction.
ReducedDensityMatrix dense_partial_trace(const TwoParticleState& state);

}  // namespace duowalk::oracle
