#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "radpair/projectors.hpp"
#include "radpair/radical_pair.hpp"
#include "radpair/spin_algebra.hpp"
#include "radpair/system.hpp"

namespace radpair {

// Ascending eigenvalues; column j of `vectors` pairs with values[j].
struct EigenSystem {
  std::vector<double> values;
  ComplexMatrix vectors;
};

// Full decomposition of a Hermitian matrix. Each eigenvector is scaled so its
// largest-magnitude component (lowest index on ties) is real and positive.
// Throws NumericalError for non-Hermitian input or solver failure.
EigenSystem eigendecompose(const ComplexMatrix& h);

// Number of eigendecompose calls in this process, for hoisting checks.
std::uint64_t decomposition_count();
void reset_decomposition_count();

// Index groups of eigenvalues within rel_threshold * max|value| of their
// neighbour.
std::vector<std::vector<std::size_t>> degenerate_clusters(std::span<const double> values,
                                                          double rel_threshold);

// Rotates the eigenvectors inside each degenerate cluster so that they
// diagonalize perturbations[0]; clusters still degenerate under it are split
// by perturbations[1], and so on.
void resolve_degeneracies(EigenSystem& system, std::span<const ComplexMatrix> perturbations,
                          double rel_threshold);

// ‖HV − VΛ‖_F / ‖H‖_F (absolute when H = 0) and ‖V†V − I‖_max.
double eigen_residual(const ComplexMatrix& h, const EigenSystem& system);
double orthonormality_error(const EigenSystem& system);

struct LevelOverlap {
  std::size_t level_index = 0;  // position in the ascending spectrum
  double energy_uT = 0.0;
  double weight = 0.0;          // ⟨level|ρ(0)|level⟩
};

// Overlap of each eigenlevel with the singlet-born initial state. With
// `nuclei`, the initial state is |S⟩ ⊗ |nuclei⟩; otherwise P^S/M. Degenerate
// levels take the B → 0+ limit basis. Levels at or below the overlap floor are
// dropped unless include_zero_weight.
std::vector<LevelOverlap> singlet_overlap_levels(const RadicalPairSpec& spec, double field_uT,
                                                 const std::optional<NuclearConfig>& nuclei,
                                                 const PhysicalConstants& constants = {},
                                                 bool include_zero_weight = false);

// Symbols of the printed closed-form eigenstates, in µT.
struct AnalyticCoefficients {
  double alpha = 0.0;  // B − a/4
  double xi = 0.0;     // sqrt(|α|² + a²/4)
  double delta = 0.0;  // sqrt(α² + 4a²)
  double eta = 0.0;    // 4B − 3a

  static AnalyticCoefficients from(double a_uT, double field_uT);
};

struct AnalyticResidual {
  int state = 0;               // 1..8
  double norm = 0.0;
  double rayleigh_uT = 0.0;    // ⟨ψ|H|ψ⟩/⟨ψ|ψ⟩
  double residual_uT = 0.0;    // ‖Hψ − λψ‖ for ψ as written
  // Squared norm of the normalized ψ projected on the numerically exact
  // eigenspace nearest λ; 1 for a true eigenvector.
  double exact_subspace_weight = 0.0;
};

// Evaluates the printed closed-form one-proton eigenstates against H.
std::vector<AnalyticResidual> analytic_eigvec_residuals(double a_uT, double field_uT);

}  // namespace radpair
