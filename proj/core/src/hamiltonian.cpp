#include "duowalk/hamiltonian.hpp"

#include <string>

#include "duowalk/errors.hpp"

namespace duowalk {

void apply_hamiltonian(const ChainSpec& chain, std::span<const Complex> in,
                       std::span<Complex> out) {
    const int n = chain.n_sites;
    const std::size_t dim = chain.dimension();
    if (in.size() != dim || out.size() != dim)
        throw InputError("apply_hamiltonian: state has " + std::to_string(in.size()) +
                         " amplitudes, chain requires " + std::to_string(dim));
    const double j = chain.hopping;
    const double u = chain.interaction;

    if (n == 1) {  // no bonds; only the on-site term survives
        out[0] = u * in[0];
        return;
    }

    for (int m = 0; m < n; ++m) {
        const Complex* row = in.data() + static_cast<std::size_t>(m) * n;
        const Complex* up = (m > 0) ? row - n : nullptr;
        const Complex* dn = (m < n - 1) ? row + n : nullptr;
        Complex* dst = out.data() + static_cast<std::size_t>(m) * n;

        // hop sums; the b-particle neighbors are row[col +- 1], the
        // a-particle neighbors live in the adjacent rows
        if (up && dn) {
            dst[0] = j * (row[1] + up[0] + dn[0]);
            for (int col = 1; col < n - 1; ++col)
                dst[col] = j * (row[col - 1] + row[col + 1] + up[col] + dn[col]);
            dst[n - 1] = j * (row[n - 2] + up[n - 1] + dn[n - 1]);
        } else {
            const Complex* nb = up ? up : dn;
            dst[0] = j * (row[1] + nb[0]);
            for (int col = 1; col < n - 1; ++col)
                dst[col] = j * (row[col - 1] + row[col + 1] + nb[col]);
            dst[n - 1] = j * (row[n - 2] + nb[n - 1]);
        }
        dst[m] += u * row[m];  // interaction only on doubly occupied |m,m>
    }
}

TwoParticleState apply_hamiltonian(const ChainSpec& chain, const TwoParticleState& state) {
    if (state.n_sites != chain.n_sites)
        throw InputError("apply_hamiltonian: state built for n_sites=" +
                         std::to_string(state.n_sites) + ", chain has " +
                         std::to_string(chain.n_sites));
    TwoParticleState out = make_zero_state(chain.n_sites);
    apply_hamiltonian(chain, state.amplitudes, out.amplitudes);
    return out;
}

}  // namespace duowalk
