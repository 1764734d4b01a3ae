#pragma once

#include <span>

#include "duowalk/chain.hpp"
#include "duowalk/state.hpp"

namespace duowalk {

// out = H in, matrix-free stencil form of the two-particle Hamiltonian:
//   (H f)_{m,n} = J (f_{m-1,n} + f_{m+1,n} + f_{m,n-1} + f_{m,n+1})
//               + U delta_{m,n} f_{m,n}
// with out-of-range neighbors dropped (open boundaries). in and out must
// not alias and both must have length N^2.
void apply_hamiltonian(const ChainSpec& chain, std::span<const Complex> in,
                       std::span<Complex> out);

// Value-returning convenience wrapper; checks the dimension.
TwoParticleState apply_hamiltonian(const ChainSpec& chain, const TwoParticleState& state);

}  // namespace duowalk
