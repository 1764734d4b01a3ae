#pragma once

#include <vector>

#include "duowalk/state.hpp"

namespace duowalk {

// Single-particle reduced density matrix rho_a, stored dense row-major
// (N x N). Hermitian with unit trace for unit-norm input states.
struct ReducedDensityMatrix {
    int n_sites = 0;
    std::vector<Complex> entries;

    Complex& at(int i, int k) { return entries[static_cast<std::size_t>(i) * n_sites + k]; }
    const Complex& at(int i, int k) const {
        return entries[static_cast<std::size_t>(i) * n_sites + k];
    }
};

// rho_a[m][m'] = sum_n f_{m,n} conj(f_{m',n}), i.e. the Gram matrix of the
// rows of the amplitude array. Only the upper triangle is computed; the
// lower is mirrored, so Hermiticity holds exactly.
ReducedDensityMatrix reduce_to_particle_a(const TwoParticleState& state);

// Tr(rho^2) = sum_{i,k} |rho_{ik}|^2. No diagonalization involved.
double purity(const ReducedDensityMatrix& rho);

struct PurityDecomposition {
    double diagonal = 0.0;     // sum_i |rho_ii|^2
    double offdiagonal = 0.0;  // 2 sum_{i<k} |rho_ik|^2
};

// Splits the purity into site-basis diagonal and off-diagonal contributions;
// diagonal + offdiagonal == purity(rho) up to roundoff.
PurityDecomposition purity_decomposition(const ReducedDensityMatrix& rho);

// L1-norm of coherence, sum_{i != j} |rho_ij| in the site basis.
double l1_coherence(const ReducedDensityMatrix& rho);

// Joint occupation probabilities |f_{m,n}|^2 as an N x N row-major real
// matrix; entries sum to the state norm. Bunching shows up on the diagonal.
std::vector<double> correlation_map(const TwoParticleState& state);

// One sampled time point of a trajectory: every scalar tracked in the study.
struct ObservableRecord {
    double t = 0.0;
    double gamma_a = 0.0;
    double gamma_diag = 0.0;
    double gamma_offdiag = 0.0;
    double c_l1 = 0.0;
    double norm_error = 0.0;  // |1 - sum |f|^2|
    double w_sym = 0.0;
    double w_antisym = 0.0;
};

// Computes the full record (reduction + all scalars) for one state.
ObservableRecord make_record(double t, const TwoParticleState& state);

}  // namespace duowalk
