#pragma once

#include <cstddef>

namespace duowalk {

// Finite chain of N sites hosting the two particles. J > 0 is the
// nearest-neighbor hopping (the energy unit, default 1) and U >= 0 the
// on-site interaction felt when both particles occupy the same site.
// Boundaries are open: the hopping sums stop at the last bond.
struct ChainSpec {
    int n_sites = 0;
    double hopping = 1.0;
    double interaction = 0.0;

    // Dimension of the two-particle site-pair basis, N^2.
    std::size_t dimension() const {
        return static_cast<std::size_t>(n_sites) * static_cast<std::size_t>(n_sites);
    }

    // Throws InputError naming the violated field.
    void validate() const;
};

}  // namespace duowalk
