#include <cmath>
#include <numbers>

#include "radpair/dynamics.hpp"
#include "radpair/errors.hpp"
#include "radpair/yields.hpp"

namespace radpair {

namespace {

// e^{x} − 1 for complex x without cancellation at small |x|.
Complex expm1(Complex x) {
  const double er = std::expm1(x.real());
  const double half_sin = std::sin(0.5 * x.imag());
  // cos θ − 1 = −2 sin²(θ/2)
  const double cos_m1 = -2.0 * half_sin * half_sin;
  return {er * std::cos(x.imag()) + cos_m1, (er + 1.0) * std::sin(x.imag())};
}

// h Σ_{n=0}^{N} w_n e^{−μ n h}, trapezoid weights (1/2 at both ends).
Complex trapezoid_exponential_sum(Complex mu, double h, double steps) {
  const Complex x = -mu * h;
  const Complex one_minus_z = -expm1(x);
  const Complex z_n = std::exp(x * steps);
  const Complex z_n1 = z_n * std::exp(x);
  return h * ((1.0 - z_n1) / one_minus_z - 0.5 * (1.0 + z_n));
}

}  // namespace

QuadratureResult yield_quadrature_oracle(const RadicalPairSpec& spec, const KineticParams& params, BornState born,
                                         const PhysicalConstants& constants, const QuadratureOptions& options) {
  validate(params);
  const double k = params.k_per_s;
  const double r = params.r_per_s;
  const RelaxationRate relaxation(r);

  const EigenSystem system = eigendecompose(build_hamiltonian(spec, params.B_uT, constants));
  const CoherentSpectrum coherent =
      coherent_spectrum(system, singlet_projector(spec), initial_density(spec, born));

  double max_gap = 0.0;
  for (double g : coherent.gaps) max_gap = std::max(max_gap, std::abs(g));
  const double f_max = max_gap / (2.0 * std::numbers::pi);

  QuadratureResult result;
  result.horizon_s = -std::log(options.horizon_tail) / k;
  double h = result.horizon_s / 1000.0;
  if (f_max > 0.0) h = std::min(h, 1.0 / (options.steps_per_period * f_max));
  h = std::min(h, std::sqrt(12.0 * options.trapezoid_error / (k * (k + r))));
  result.steps = std::ceil(result.horizon_s / h);
  if (!(result.steps <= options.max_steps))
    throw NumericalError("quadrature step budget exceeded (" + std::to_string(result.steps) + " steps)");
  result.step_s = result.horizon_s / result.steps;
  h = result.step_s;

  if (result.steps <= static_cast<double>(options.max_sampled_steps)) {
    const auto n = static_cast<std::size_t>(result.steps);
    auto integrand = [&](double t) {
      return k * std::exp(-k * t) * apply_relaxation(coherent.at(t), relaxation, t);
    };
    double sum = 0.5 * (integrand(0.0) + integrand(result.horizon_s));
    for (std::size_t i = 1; i < n; ++i) sum += integrand(static_cast<double>(i) * h);
    result.phi = sum * h;
    result.sampled = true;
    return result;
  }

  // Integrand as Re Σ A_j e^{−μ_j t}; each term's trapezoid sum in closed form.
  const double kr = k + r;
  Complex total = 0.25 * k * trapezoid_exponential_sum(Complex(k, 0.0), h, result.steps);
  total += k * (coherent.constant - 0.25) * trapezoid_exponential_sum(Complex(kr, 0.0), h, result.steps);
  for (std::size_t j = 0; j < coherent.gaps.size(); ++j)
    total += k * coherent.coefficients[j] * trapezoid_exponential_sum(Complex(kr, coherent.gaps[j]), h, result.steps);
  result.phi = total.real();
  return result;
}

}  // namespace radpair
