#include "duowalk/observables.hpp"

#include <cmath>
#include <string>

#include "duowalk/errors.hpp"

namespace duowalk {

namespace {

struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double value) {
        const double y = value - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

void check_rho(const ReducedDensityMatrix& rho) {
    const auto n = static_cast<std::size_t>(rho.n_sites);
    if (rho.n_sites < 1 || rho.entries.size() != n * n)
        throw InputError("reduced density matrix has inconsistent dimensions");
}

}  // namespace

ReducedDensityMatrix reduce_to_particle_a(const TwoParticleState& state) {
    const int n = state.n_sites;
    if (n < 1 || state.amplitudes.size() != static_cast<std::size_t>(n) * n)
        throw InputError("reduce_to_particle_a: state has inconsistent dimensions");

    ReducedDensityMatrix rho;
    rho.n_sites = n;
    rho.entries.assign(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));

    // rho[m][m'] = <row_m', row_m> over the b index; upper triangle only,
    // mirrored conjugate below so Hermiticity is exact. Component form keeps
    // the hot loop vectorizable.
    const double* f = reinterpret_cast<const double*>(state.amplitudes.data());
    for (int m = 0; m < n; ++m) {
        const double* rm = f + 2 * static_cast<std::size_t>(m) * n;
        for (int k = m; k < n; ++k) {
            const double* rk = f + 2 * static_cast<std::size_t>(k) * n;
            double re = 0.0, im = 0.0;
            for (int b = 0; b < n; ++b) {
                const double ar = rm[2 * b], ai = rm[2 * b + 1];
                const double br = rk[2 * b], bi = rk[2 * b + 1];
                re += ar * br + ai * bi;  // f_{m,b} conj(f_{k,b})
                im += ai * br - ar * bi;
            }
            if (k == m) {
                rho.at(m, m) = Complex(re, 0.0);  // Gram diagonal is real
            } else {
                rho.at(m, k) = Complex(re, im);
                rho.at(k, m) = Complex(re, -im);
            }
        }
    }
    return rho;
}

double purity(const ReducedDensityMatrix& rho) {
    check_rho(rho);
    CompensatedSum acc;
    for (const Complex& e : rho.entries) acc.add(std::norm(e));
    return acc.sum;
}

PurityDecomposition purity_decomposition(const ReducedDensityMatrix& rho) {
    check_rho(rho);
    const int n = rho.n_sites;
    CompensatedSum diag;
    CompensatedSum off;
    for (int i = 0; i < n; ++i) {
        diag.add(std::norm(rho.at(i, i)));
        for (int k = i + 1; k < n; ++k) off.add(std::norm(rho.at(i, k)));
    }
    return {diag.sum, 2.0 * off.sum};
}

double l1_coherence(const ReducedDensityMatrix& rho) {
    check_rho(rho);
    const int n = rho.n_sites;
    CompensatedSum acc;
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) acc.add(std::abs(rho.at(i, k)));
    return 2.0 * acc.sum;
}

std::vector<double> correlation_map(const TwoParticleState& state) {
    const int n = state.n_sites;
    if (n < 1 || state.amplitudes.size() != static_cast<std::size_t>(n) * n)
        throw InputError("correlation_map: state has inconsistent dimensions");
    std::vector<double> prob(state.amplitudes.size());
    for (std::size_t k = 0; k < prob.size(); ++k) prob[k] = std::norm(state.amplitudes[k]);
    return prob;
}

ObservableRecord make_record(double t, const TwoParticleState& state) {
    const ReducedDensityMatrix rho = reduce_to_particle_a(state);
    const PurityDecomposition parts = purity_decomposition(rho);
    const ProjectorWeights weights = projector_weights(state);

    ObservableRecord rec;
    rec.t = t;
    rec.gamma_a = purity(rho);
    rec.gamma_diag = parts.diagonal;
    rec.gamma_offdiag = parts.offdiagonal;
    rec.c_l1 = l1_coherence(rho);
    rec.norm_error = std::abs(1.0 - norm_squared(state));
    rec.w_sym = weights.symmetric;
    rec.w_antisym = weights.antisymmetric;
    return rec;
}

}  // namespace duowalk
