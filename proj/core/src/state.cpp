#include "duowalk/state.hpp"

#include <cmath>
#include <string>

#include "duowalk/errors.hpp"

namespace duowalk {

void ChainSpec::validate() const {
    if (n_sites < 1)
        throw InputError("n_sites: must be >= 1, got " + std::to_string(n_sites));
    if (!(hopping > 0.0))
        throw InputError("j: hopping must be > 0, got " + std::to_string(hopping));
    if (!(interaction >= 0.0))
        throw InputError("u: interaction must be >= 0, got " + std::to_string(interaction));
}

std::size_t flat_index(int m, int n, int n_sites) {
    if (m < 0 || m >= n_sites || n < 0 || n >= n_sites)
        throw InputError("site index out of range: (m,n)=(" + std::to_string(m) + "," +
                         std::to_string(n) + ") with n_sites=" + std::to_string(n_sites));
    return static_cast<std::size_t>(m) * static_cast<std::size_t>(n_sites) +
           static_cast<std::size_t>(n);
}

std::pair<int, int> site_pair(std::size_t index, int n_sites) {
    const auto n = static_cast<std::size_t>(n_sites);
    if (n_sites < 1 || index >= n * n)
        throw InputError("flat index out of range: " + std::to_string(index));
    return {static_cast<int>(index / n), static_cast<int>(index % n)};
}

TwoParticleState make_zero_state(int n_sites) {
    TwoParticleState state;
    state.n_sites = n_sites;
    state.amplitudes.assign(static_cast<std::size_t>(n_sites) * n_sites, Complex(0.0, 0.0));
    return state;
}

TwoParticleState build_initial_state(const ChainSpec& chain, const InitialCondition& ic) {
    chain.validate();
    const int n = chain.n_sites;
    if (ic.m0 < 1 || ic.m0 > n)
        throw InputError("m0: site must lie in [1, " + std::to_string(n) + "], got " +
                         std::to_string(ic.m0));
    if (ic.n0 < 1 || ic.n0 > n)
        throw InputError("n0: site must lie in [1, " + std::to_string(n) + "], got " +
                         std::to_string(ic.n0));

    const int m = ic.m0 - 1;  // to 0-based
    const int nn = ic.n0 - 1;
    TwoParticleState state = make_zero_state(n);

    if (!ic.theta) {
        state.at(m, nn) = Complex(1.0, 0.0);
        return state;
    }

    const Complex phase = std::polar(1.0, *ic.theta);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    if (m == nn) {
        // Both terms land on |m0,m0>; renormalize (1 + e^{i theta})/sqrt(2).
        const Complex coeff = (Complex(1.0, 0.0) + phase) * inv_sqrt2;
        const double mag = std::abs(coeff);
        if (mag <= 1e-9)
            throw DegenerateInputError(
                "theta: initial state |m0,m0> with theta at the antisymmetric point is the "
                "null vector (|1 + e^{i theta}| <= 1e-9)");
        state.at(m, m) = coeff / mag;
        return state;
    }

    state.at(m, nn) = Complex(inv_sqrt2, 0.0);
    state.at(nn, m) = phase * inv_sqrt2;
    return state;
}

TwoParticleState swap_apply(const TwoParticleState& state) {
    const int n = state.n_sites;
    TwoParticleState out = make_zero_state(n);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k)
            out.amplitudes[static_cast<std::size_t>(m) * n + k] =
                state.amplitudes[static_cast<std::size_t>(k) * n + m];
    return out;
}

namespace {

// Kahan-compensated accumulator; plain summation over 9e4 terms already
// loses ~1e-13, too coarse next to the 1e-14 norm-drift bound.
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

}  // namespace

double norm_squared(const TwoParticleState& state) {
    CompensatedSum acc;
    for (const Complex& a : state.amplitudes) acc.add(std::norm(a));
    return acc.sum;
}

Complex inner_product(const TwoParticleState& lhs, const TwoParticleState& rhs) {
    if (lhs.n_sites != rhs.n_sites)
        throw InputError("inner_product: dimension mismatch");
    CompensatedSum re;
    CompensatedSum im;
    const std::size_t dim = lhs.amplitudes.size();
    for (std::size_t k = 0; k < dim; ++k) {
        const Complex term = std::conj(lhs.amplitudes[k]) * rhs.amplitudes[k];
        re.add(term.real());
        im.add(term.imag());
    }
    return {re.sum, im.sum};
}

ProjectorWeights projector_weights(const TwoParticleState& state) {
    const int n = state.n_sites;
    CompensatedSum sym;
    CompensatedSum antisym;
    for (int m = 0; m < n; ++m) {
        sym.add(std::norm(state.at(m, m)));
        for (int k = m + 1; k < n; ++k) {
            const Complex f_mk = state.at(m, k);
            const Complex f_km = state.at(k, m);
            sym.add(0.5 * std::norm(f_mk + f_km));
            antisym.add(0.5 * std::norm(f_mk - f_km));
        }
    }
    return {sym.sum, antisym.sum};
}

}  // namespace duowalk
