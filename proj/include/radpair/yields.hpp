#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "radpair/eigensystem.hpp"
#include "radpair/radical_pair.hpp"
#include "radpair/system.hpp"

namespace radpair {

enum class Channel { Singlet, Triplet };

// One shared reaction rate k = k_S = k_T.
struct KineticParams {
  double k_per_s = 1e6;
  double r_per_s = 0.0;
  double B_uT = 0.0;
};

std::vector<std::string> validation_problems(const KineticParams& params);
void validate(const KineticParams& params);

struct YieldResult {
  double phi = 0.0;
  BornState born = BornState::Singlet;
  Channel channel = Channel::Singlet;
};

// |⟨m|P^S|n⟩|² against |ω_m − ω_n|, for one (spec, B). Built once and reused
// across any number of (k, r) cells.
class SingletSpectrum {
 public:
  SingletSpectrum(const EigenSystem& system, const ComplexMatrix& singlet_projector,
                  std::size_t multiplicity);

  // (1/M) Σ_{m,n} |P_mn|² k(k+r) / ((k+r)² + (ω_m − ω_n)²)
  double lorentzian_sum(double k, double r) const;
  // (1/M) Σ |P_mn|²; equals 1.
  double sum_rule() const;

  std::size_t multiplicity() const { return multiplicity_; }
  std::span<const double> gaps() const { return gaps_; }
  std::span<const double> weights() const { return weights_; }

 private:
  std::vector<double> gaps_;     // |ω_m − ω_n|, m <= n
  std::vector<double> weights_;  // multiplicity-counted |P_mn|²
  std::size_t multiplicity_ = 1;
};

SingletSpectrum singlet_spectrum(const RadicalPairSpec& spec, double field_uT,
                                 const PhysicalConstants& constants = {});

// Singlet-channel yields for singlet-born and triplet-born pairs.
double singlet_born_singlet_yield(const SingletSpectrum& spectrum, double k, double r);
double triplet_born_singlet_yield(const SingletSpectrum& spectrum, double k, double r);

// Dispatch plus channel complement; phi is clipped into [0, 1].
YieldResult yield_any(const SingletSpectrum& spectrum, double k, double r, BornState born,
                      Channel channel);

YieldResult singlet_yield_singlet_born(const RadicalPairSpec& spec, const KineticParams& params,
                                       const PhysicalConstants& constants = {});
YieldResult singlet_yield_triplet_born(const RadicalPairSpec& spec, const KineticParams& params,
                                       const PhysicalConstants& constants = {});
YieldResult yield_any(const RadicalPairSpec& spec, const KineticParams& params, BornState born,
                      Channel channel, const PhysicalConstants& constants = {});

// Singlet yield for an arbitrary initial density, from the same relaxation
// model: k ∫ [1/4 − (1/4 − Tr P^S ρ(t)) e^{−rt}] e^{−kt} dt in closed form.
double singlet_yield_from_density(const EigenSystem& system, const ComplexMatrix& singlet_projector,
                                  const ComplexMatrix& rho0, double k, double r);

struct HmfContrast {
  double B_hmf_uT = 1.0;
  double B_gmf_uT = 50.0;

  friend bool operator==(const HmfContrast&, const HmfContrast&) = default;
};

// |(Φ_HMF − Φ_GMF) / Φ_HMF| · 100. Throws NumericalError when |Φ_HMF| is
// below the contrast floor.
double hmf_effect(const SingletSpectrum& hmf, const SingletSpectrum& gmf, double k, double r,
                  BornState born, Channel channel);
double hmf_effect(const RadicalPairSpec& spec, double k, double r, BornState born, Channel channel,
                  const HmfContrast& contrast = {}, const PhysicalConstants& constants = {});

struct HyperfineCoupling {
  double a_uT = 0.0;
  SpinQuantumNumber spin;
};

// sqrt((4/3) Σ a_i² I_i(I_i+1))
double effective_hyperfine(std::span<const HyperfineCoupling> couplings);

// --- quadrature oracle ---------------------------------------------------

struct QuadratureOptions {
  // e^{−k T*} below this.
  double horizon_tail = 1e-10;
  // Step no larger than 1/(steps_per_period · f_max).
  double steps_per_period = 50.0;
  // Bound on the leading trapezoid error k(k+r)h²/12.
  double trapezoid_error = 1e-10;
  // Literal sampling up to this many steps; closed-form step sums beyond.
  std::size_t max_sampled_steps = 2'000'000;
  // Hard budget for either route.
  double max_steps = 1e16;
};

struct QuadratureResult {
  double phi = 0.0;
  double step_s = 0.0;
  double horizon_s = 0.0;
  double steps = 0.0;
  bool sampled = false;
};

// Composite-trapezoid evaluation of k ∫₀^T* ⟨P^S⟩(t) e^{−kt} dt with
// relaxation, where ⟨P^S⟩(t) comes from coherent evolution of the born-state
// density (not from the Lorentzian closed forms). Throws NumericalError when
// the step budget is exceeded.
QuadratureResult yield_quadrature_oracle(const RadicalPairSpec& spec, const KineticParams& params,
                                         BornState born, const PhysicalConstants& constants = {},
                                         const QuadratureOptions& options = {});

}  // namespace radpair
