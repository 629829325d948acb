#include "radpair/yields.hpp"

#include "radpair/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "radpair/errors.hpp"
#include "radpair/tolerances.hpp"

namespace radpair {

std::vector<std::string> validation_problems(const KineticParams& params) {
  std::vector<std::string> problems;
  if (!std::isfinite(params.k_per_s) || !(params.k_per_s > 0.0))
    problems.push_back("k_per_s: must be > 0 (got " + std::to_string(params.k_per_s) + ")");
  if (!std::isfinite(params.r_per_s) || params.r_per_s < 0.0)
    problems.push_back("r_per_s: must be ≥ 0 (got " + std::to_string(params.r_per_s) + ")");
  if (!std::isfinite(params.B_uT) || params.B_uT < 0.0)
    problems.push_back("B_uT: must be ≥ 0 (got " + std::to_string(params.B_uT) + ")");
  return problems;
}

void validate(const KineticParams& params) {
  auto problems = validation_problems(params);
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

SingletSpectrum::SingletSpectrum(const EigenSystem& system, const ComplexMatrix& singlet_projector,
                                 std::size_t multiplicity)
    : multiplicity_(multiplicity) {
  const ComplexMatrix p = system.vectors.adjoint() * singlet_projector * system.vectors;
  const Eigen::Index n = p.rows();
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = m; k < n; ++k) {
      const double w = std::norm(p(m, k)) * (m == k ? 1.0 : 2.0);
      if (w == 0.0) continue;
      gaps_.push_back(std::abs(system.values[static_cast<std::size_t>(m)] - system.values[static_cast<std::size_t>(k)]));
      weights_.push_back(w);
    }
}

double SingletSpectrum::lorentzian_sum(double k, double r) const {
  const double kr = k + r;
  double sum = 0.0;
  for (std::size_t j = 0; j < gaps_.size(); ++j) sum += weights_[j] * k * kr / (kr * kr + gaps_[j] * gaps_[j]);
  return sum / static_cast<double>(multiplicity_);
}

double SingletSpectrum::sum_rule() const {
  double sum = 0.0;
  for (double w : weights_) sum += w;
  return sum / static_cast<double>(multiplicity_);
}

SingletSpectrum singlet_spectrum(const RadicalPairSpec& spec, double field_uT, const PhysicalConstants& constants) {
  const EigenSystem system = eigendecompose(build_hamiltonian(spec, field_uT, constants));
  return SingletSpectrum(system, singlet_projector(spec), multiplicity(spec));
}

double singlet_born_singlet_yield(const SingletSpectrum& spectrum, double k, double r) {
  return 0.25 - k / (4.0 * (k + r)) + spectrum.lorentzian_sum(k, r);
}

double triplet_born_singlet_yield(const SingletSpectrum& spectrum, double k, double r) {
  return 0.25 + k / (12.0 * (k + r)) - spectrum.lorentzian_sum(k, r) / 3.0;
}

namespace {

double checked_yield(double phi) {
  if (!std::isfinite(phi) || phi < -tol::kYieldBound || phi > 1.0 + tol::kYieldBound)
    throw NumericalError("yield " + std::to_string(phi) + " outside [0, 1]");
  return std::clamp(phi, 0.0, 1.0);
}

void validate_rates(double k, double r) { validate(KineticParams{k, r, 0.0}); }

}  // namespace

YieldResult yield_any(const SingletSpectrum& spectrum, double k, double r, BornState born, Channel channel) {
  validate_rates(k, r);
  const double singlet = checked_yield(born == BornState::Singlet ? singlet_born_singlet_yield(spectrum, k, r)
                                                                  : triplet_born_singlet_yield(spectrum, k, r));
  return {channel == Channel::Singlet ? singlet : 1.0 - singlet, born, channel};
}

YieldResult singlet_yield_singlet_born(const RadicalPairSpec& spec, const KineticParams& params,
                                       const PhysicalConstants& constants) {
  return yield_any(spec, params, BornState::Singlet, Channel::Singlet, constants);
}

YieldResult singlet_yield_triplet_born(const RadicalPairSpec& spec, const KineticParams& params,
                                       const PhysicalConstants& constants) {
  return yield_any(spec, params, BornState::Triplet, Channel::Singlet, constants);
}

YieldResult yield_any(const RadicalPairSpec& spec, const KineticParams& params, BornState born, Channel channel,
                      const PhysicalConstants& constants) {
  validate(params);
  return yield_any(singlet_spectrum(spec, params.B_uT, constants), params.k_per_s, params.r_per_s, born, channel);
}

double singlet_yield_from_density(const EigenSystem& system, const ComplexMatrix& singlet_projector,
                                  const ComplexMatrix& rho0, double k, double r) {
  validate_rates(k, r);
  const CoherentSpectrum spectrum = coherent_spectrum(system, singlet_projector, rho0);
  const double kr = k + r;
  double coherent = spectrum.constant / kr;
  for (std::size_t j = 0; j < spectrum.gaps.size(); ++j)
    coherent += (spectrum.coefficients[j] / Complex(kr, spectrum.gaps[j])).real();
  return 0.25 - k / (4.0 * kr) + k * coherent;
}

double hmf_effect(const SingletSpectrum& hmf, const SingletSpectrum& gmf, double k, double r, BornState born,
                  Channel channel) {
  const double phi_hmf = yield_any(hmf, k, r, born, channel).phi;
  const double phi_gmf = yield_any(gmf, k, r, born, channel).phi;
  if (std::abs(phi_hmf) < tol::kContrastDenominator)
    throw NumericalError("HMF effect undefined: hypomagnetic yield is zero");
  return std::abs((phi_hmf - phi_gmf) / phi_hmf) * 100.0;
}

double hmf_effect(const RadicalPairSpec& spec, double k, double r, BornState born, Channel channel,
                  const HmfContrast& contrast, const PhysicalConstants& constants) {
  validate_rates(k, r);
  return hmf_effect(singlet_spectrum(spec, contrast.B_hmf_uT, constants),
                    singlet_spectrum(spec, contrast.B_gmf_uT, constants), k, r, born, channel);
}

double effective_hyperfine(std::span<const HyperfineCoupling> couplings) {
  if (couplings.empty()) throw ValidationError("effective hyperfine needs at least one coupling");
  double sum = 0.0;
  for (const auto& c : couplings) sum += c.a_uT * c.a_uT * c.spin.casimir();
  return std::sqrt(4.0 / 3.0 * sum);
}

}  // namespace radpair
