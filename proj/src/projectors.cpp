#include "radpair/projectors.hpp"

#include <cmath>

#include "radpair/errors.hpp"

namespace radpair {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

ComplexVector two_electron(double up_up, double up_down, double down_up, double down_down) {
  ComplexVector v(4);
  v << up_up, up_down, down_up, down_down;
  return v;
}

// Σ_{ij} ψ_i ψ_j* |e_i⟩⟨e_j| with the electron factors placed at their sites.
ComplexMatrix electron_dyad(const RadicalPairSpec& spec, const ComplexVector& psi) {
  const SiteLayout layout = site_layout(spec);
  const Eigen::Index n = static_cast<Eigen::Index>(hilbert_dim(spec));
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Complex c = psi(i) * std::conj(psi(j));
      if (c == Complex(0.0, 0.0)) continue;
      ComplexMatrix ea = ComplexMatrix::Zero(2, 2);
      ComplexMatrix eb = ComplexMatrix::Zero(2, 2);
      ea(i / 2, j / 2) = 1.0;
      eb(i % 2, j % 2) = 1.0;
      out += c * embed_site_operator(ea, layout.electron_a, layout.dims) *
             embed_site_operator(eb, layout.electron_b, layout.dims);
    }
  return out;
}

}  // namespace

ComplexVector singlet_state() { return two_electron(0.0, kInvSqrt2, -kInvSqrt2, 0.0); }
ComplexVector triplet_plus_state() { return two_electron(1.0, 0.0, 0.0, 0.0); }
ComplexVector triplet_zero_state() { return two_electron(0.0, kInvSqrt2, kInvSqrt2, 0.0); }
ComplexVector triplet_minus_state() { return two_electron(0.0, 0.0, 0.0, 1.0); }

ComplexMatrix singlet_projector(const RadicalPairSpec& spec) {
  return electron_dyad(spec, singlet_state());
}

ComplexMatrix triplet_projector(const RadicalPairSpec& spec) {
  return electron_dyad(spec, triplet_plus_state()) + electron_dyad(spec, triplet_zero_state()) +
         electron_dyad(spec, triplet_minus_state());
}

ComplexMatrix nuclear_config_projector(const RadicalPairSpec& spec, const NuclearConfig& config) {
  if (config.size() != spec.nuclei.size())
    throw ValidationError("nuclear config needs one basis index per nucleus");
  const SiteLayout layout = site_layout(spec);
  const Eigen::Index n = static_cast<Eigen::Index>(hilbert_dim(spec));
  ComplexMatrix out = ComplexMatrix::Identity(n, n);
  for (std::size_t i = 0; i < config.size(); ++i) {
    const int dim = spec.nuclei[i].spin.multiplicity();
    if (config[i] < 0 || config[i] >= dim)
      throw ValidationError("nuclear basis index out of range for nucleus " + std::to_string(i));
    ComplexMatrix p = ComplexMatrix::Zero(dim, dim);
    p(config[i], config[i]) = 1.0;
    out = out * embed_site_operator(p, layout.nucleus_site[i], layout.dims);
  }
  return out;
}

NuclearConfig nuclei_up(const RadicalPairSpec& spec) { return NuclearConfig(spec.nuclei.size(), 0); }

}  // namespace radpair
