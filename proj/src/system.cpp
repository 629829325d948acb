#include "radpair/system.hpp"

#include <cmath>

#include "radpair/errors.hpp"

namespace radpair {

ComplexMatrix electron_zeeman_operator(const RadicalPairSpec& spec) {
  const SiteLayout layout = site_layout(spec);
  const OperatorTriple s = spin_operators(kSpinHalf);
  return embed_site_operator(s.z, layout.electron_a, layout.dims) +
         embed_site_operator(s.z, layout.electron_b, layout.dims);
}

ComplexMatrix nuclear_iz_operator(const RadicalPairSpec& spec) {
  const SiteLayout layout = site_layout(spec);
  const Eigen::Index n = static_cast<Eigen::Index>(hilbert_dim(spec));
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < spec.nuclei.size(); ++i)
    out += embed_site_operator(spin_operators(spec.nuclei[i].spin).z, layout.nucleus_site[i], layout.dims);
  return out;
}

ComplexMatrix build_hamiltonian(const RadicalPairSpec& spec, double field_uT,
                                const PhysicalConstants& constants, std::size_t max_hilbert_dim) {
  validate(spec, max_hilbert_dim);
  if (!std::isfinite(field_uT) || field_uT < 0.0) throw ValidationError("B_uT must be ≥ 0");
  if (!(constants.gamma_e > 0.0) || !std::isfinite(constants.gamma_e))
    throw ValidationError("gamma_e must be > 0");

  const SiteLayout layout = site_layout(spec);
  const OperatorTriple s = spin_operators(kSpinHalf);
  ComplexMatrix h = to_angular(field_uT, constants) * electron_zeeman_operator(spec);

  for (std::size_t i = 0; i < spec.nuclei.size(); ++i) {
    const auto& nucleus = spec.nuclei[i];
    if (nucleus.a_iso_uT == 0.0) continue;
    const std::size_t electron_site =
        nucleus.attached_to == Electron::A ? layout.electron_a : layout.electron_b;
    const OperatorTriple nuc = spin_operators(nucleus.spin);
    const double coupling = to_angular(nucleus.a_iso_uT, constants);
    const ComplexMatrix* es[] = {&s.x, &s.y, &s.z};
    const ComplexMatrix* ns[] = {&nuc.x, &nuc.y, &nuc.z};
    for (int c = 0; c < 3; ++c)
      h += coupling * embed_site_operator(*es[c], electron_site, layout.dims) *
           embed_site_operator(*ns[c], layout.nucleus_site[i], layout.dims);
  }
  return h;
}

ComplexMatrix initial_density(const RadicalPairSpec& spec, BornState born) {
  const double m = static_cast<double>(multiplicity(spec));
  if (born == BornState::Singlet) return singlet_projector(spec) / m;
  return triplet_projector(spec) / (3.0 * m);
}

ComplexMatrix singlet_density_with_nuclei(const RadicalPairSpec& spec, const NuclearConfig& config) {
  return singlet_projector(spec) * nuclear_config_projector(spec, config);
}

PrintedMatrix printed_one_proton_matrix(double a, double b) {
  PrintedMatrix m{};
  m[0][0] = a / 4 + b;
  m[1][1] = a / 4;
  m[2][2] = -a / 4 + b;
  m[2][4] = a / 2;
  m[3][3] = a / 4 - b;
  m[3][5] = a / 2;
  m[4][2] = a / 2;
  m[4][4] = -a / 4;
  m[5][3] = a / 2;
  m[5][5] = -a / 4 - b;
  m[6][6] = a / 4;
  m[7][7] = a / 4 - b;
  return m;
}

PrintedMatrixReport printed_matrix_diagnostic(double a_uT, double field_uT) {
  const RadicalPairSpec spec = spin_half_nuclei_on_a({a_uT});
  // γ_e = 10^6 makes γ_e·x·10^-6 = x, so H comes out in µT.
  const PhysicalConstants field_units{1e6};
  const SiteLayout layout = site_layout(spec);
  const std::vector<std::size_t> order = {layout.electron_a, layout.nucleus_site[0], layout.electron_b};

  PrintedMatrixReport report;
  report.built_uT = permute_sites(build_hamiltonian(spec, field_uT, field_units), layout.dims, order);
  report.printed = printed_one_proton_matrix(a_uT, field_uT);

  const double scale = std::max({1.0, std::abs(a_uT), std::abs(field_uT)});
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const Complex built = report.built_uT(i, j);
      const double printed = report.printed[i][j];
      if (std::abs(built - Complex(printed, 0.0)) > 1e-9 * scale)
        report.mismatches.push_back({i + 1, j + 1, built.real(), printed});
    }
  return report;
}

}  // namespace radpair
