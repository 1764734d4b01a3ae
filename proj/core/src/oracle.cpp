#include "duowalk/oracle.hpp"

#include <string>

#include "duowalk/errors.hpp"

namespace duowalk::oracle {

namespace {

void check_size_guard(int n_sites, const char* where) {
    if (n_sites > kMaxSites)
        throw InputError(std::string(where) + ": n_sites=" + std::to_string(n_sites) +
                         " exceeds the dense oracle guard (" + std::to_string(kMaxSites) + ")");
}

}  // namespace

DenseHamiltonian build_dense(const ChainSpec& chain) {
    chain.validate();
    check_size_guard(chain.n_sites, "build_dense");

    const int n = chain.n_sites;
    const auto dim = static_cast<Eigen::Index>(chain.dimension());
    DenseHamiltonian h;
    h.spec = chain;
    h.matrix = Eigen::MatrixXcd::Zero(dim, dim);

    auto idx = [n](int m, int b) { return static_cast<Eigen::Index>(m) * n + b; };
    for (int m = 0; m < n; ++m) {
        for (int b = 0; b < n; ++b) {
            const Eigen::Index row = idx(m, b);
            if (m + 1 < n) h.matrix(row, idx(m + 1, b)) = chain.hopping;
            if (m - 1 >= 0) h.matrix(row, idx(m - 1, b)) = chain.hopping;
            if (b + 1 < n) h.matrix(row, idx(m, b + 1)) = chain.hopping;
            if (b - 1 >= 0) h.matrix(row, idx(m, b - 1)) = chain.hopping;
            if (m == b) h.matrix(row, row) = chain.interaction;
        }
    }
    return h;
}

TwoParticleState spectral_evolve(const DenseHamiltonian& h, const TwoParticleState& state0,
                                 double t) {
    const auto dim = static_cast<Eigen::Index>(h.spec.dimension());
    if (state0.n_sites != h.spec.n_sites ||
        static_cast<Eigen::Index>(state0.amplitudes.size()) != dim)
        throw InputError("spectral_evolve: state dimension does not match the Hamiltonian");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix);
    if (solver.info() != Eigen::Success)
        throw NumericalError("spectral_evolve: eigendecomposition failed", 0, 0.0);

    const Eigen::Map<const Eigen::VectorXcd> psi0(state0.amplitudes.data(), dim);
    Eigen::VectorXcd coeffs = solver.eigenvectors().adjoint() * psi0;
    for (Eigen::Index k = 0; k < dim; ++k)
        coeffs(k) *= std::polar(1.0, -solver.eigenvalues()(k) * t);
    const Eigen::VectorXcd evolved = solver.eigenvectors() * coeffs;

    TwoParticleState out = make_zero_state(h.spec.n_sites);
    Eigen::Map<Eigen::VectorXcd>(out.amplitudes.data(), dim) = evolved;
    return out;
}

ReducedDensityMatrix dense_partial_trace(const TwoParticleState& state) {
    const int n = state.n_sites;
    if (n < 1 || state.amplitudes.size() != static_cast<std::size_t>(n) * n)
        throw InputError("dense_partial_trace: state has inconsistent dimensions");
    check_size_guard(n, "dense_partial_trace");

    const auto dim = static_cast<Eigen::Index>(state.amplitudes.size());
    const Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes.data(), dim);
    const Eigen::MatrixXcd projector = psi * psi.adjoint();

    ReducedDensityMatrix rho;
    rho.n_sites = n;
    rho.entries.assign(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
    for (int m = 0; m < n; ++m)
        for (int mp = 0; mp < n; ++mp) {
            Complex sum(0.0, 0.0);
            for (int b = 0; b < n; ++b)
                sum += projector(static_cast<Eigen::Index>(m) * n + b,
                                 static_cast<Eigen::Index>(mp) * n + b);
            rho.at(m, mp) = sum;
        }
    return rho;
}

}  // namespace duowalk::oracle
