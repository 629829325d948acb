#pragma once

#include <vector>

#include "radpair/radical_pair.hpp"
#include "radpair/spin_algebra.hpp"

namespace radpair {

// Two-electron states in the |a b⟩ basis, index 2*a + b with 0 = up.
ComplexVector singlet_state();
ComplexVector triplet_plus_state();
ComplexVector triplet_zero_state();
ComplexVector triplet_minus_state();

// |S⟩⟨S| ⊗ 1_M in the spec's site ordering. Trace M.
ComplexMatrix singlet_projector(const RadicalPairSpec& spec);
// Σ |T_i⟩⟨T_i| ⊗ 1_M. Trace 3M.
ComplexMatrix triplet_projector(const RadicalPairSpec& spec);

// Basis index per nucleus (spec order); 0 is m = +I.
using NuclearConfig = std::vector<int>;

// Projector onto the nuclear product state `config`, identity on electrons.
ComplexMatrix nuclear_config_projector(const RadicalPairSpec& spec, const NuclearConfig& config);

// All nuclei in their m = +I state.
NuclearConfig nuclei_up(const RadicalPairSpec& spec);

}  // namespace radpair
