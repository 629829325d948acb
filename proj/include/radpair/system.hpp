#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "radpair/projectors.hpp"
#include "radpair/radical_pair.hpp"
#include "radpair/spin_algebra.hpp"

namespace radpair {

struct PhysicalConstants {
  double gamma_e = 1.76e11;  // s^-1 T^-1

  friend bool operator==(const PhysicalConstants&, const PhysicalConstants&) = default;
};

enum class BornState { Singlet, Triplet };

// Angular frequency (rad/s) for a field given in µT.
inline double to_angular(double field_uT, const PhysicalConstants& c) {
  return c.gamma_e * field_uT * 1e-6;
}
inline double to_field_uT(double omega, const PhysicalConstants& c) {
  return omega / c.gamma_e * 1e6;
}

// H = γ_e B (S_Az + S_Bz) + Σ γ_e a_i S·I_i in rad/s, field along z. The sign
// puts |↑↑⟩ at +γ_e B.
ComplexMatrix build_hamiltonian(const RadicalPairSpec& spec, double field_uT,
                                const PhysicalConstants& constants = {},
                                std::size_t max_hilbert_dim = kDefaultMaxHilbertDim);

// S_Az + S_Bz and Σ I_iz on the full space.
ComplexMatrix electron_zeeman_operator(const RadicalPairSpec& spec);
ComplexMatrix nuclear_iz_operator(const RadicalPairSpec& spec);

// P^S/M or P^T/(3M).
ComplexMatrix initial_density(const RadicalPairSpec& spec, BornState born);

// |S⟩⟨S| ⊗ |config⟩⟨config|, unit trace.
ComplexMatrix singlet_density_with_nuclei(const RadicalPairSpec& spec, const NuclearConfig& config);

// --- one-proton printed-matrix comparison -------------------------------

// The 8x8 matrix as printed for S_A ⊗ I_A ⊗ S_B, in field units (µT).
using PrintedMatrix = std::array<std::array<double, 8>, 8>;
PrintedMatrix printed_one_proton_matrix(double a_uT, double field_uT);

struct MatrixMismatch {
  int row = 0;  // 1-based, as printed
  int col = 0;
  double built_uT = 0.0;
  double printed_uT = 0.0;
};

struct PrintedMatrixReport {
  ComplexMatrix built_uT;  // A ⊗ N ⊗ B ordering
  PrintedMatrix printed{};
  std::vector<MatrixMismatch> mismatches;
};

PrintedMatrixReport printed_matrix_diagnostic(double a_uT, double field_uT);

}  // namespace radpair
