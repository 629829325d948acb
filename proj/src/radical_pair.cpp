#include "radpair/radical_pair.hpp"

#include <cmath>

#include "radpair/errors.hpp"

namespace radpair {

RadicalPairSpec spin_half_nuclei_on_a(const std::vector<double>& a_iso_uT) {
  RadicalPairSpec spec;
  for (double a : a_iso_uT) spec.nuclei.push_back({kSpinHalf, a, Electron::A});
  return spec;
}

std::size_t multiplicity(const RadicalPairSpec& spec) {
  std::size_t m = 1;
  for (const auto& n : spec.nuclei) m *= static_cast<std::size_t>(n.spin.multiplicity());
  return m;
}

std::size_t hilbert_dim(const RadicalPairSpec& spec) { return 4 * multiplicity(spec); }

SiteLayout site_layout(const RadicalPairSpec& spec) {
  SiteLayout layout;
  layout.nucleus_site.resize(spec.nuclei.size());
  for (Electron e : {Electron::A, Electron::B}) {
    const std::size_t electron_site = layout.dims.size();
    (e == Electron::A ? layout.electron_a : layout.electron_b) = electron_site;
    layout.dims.push_back(2);
    for (std::size_t i = 0; i < spec.nuclei.size(); ++i) {
      if (spec.nuclei[i].attached_to != e) continue;
      layout.nucleus_site[i] = layout.dims.size();
      layout.dims.push_back(spec.nuclei[i].spin.multiplicity());
    }
  }
  return layout;
}

std::vector<std::string> validation_problems(const RadicalPairSpec& spec, std::size_t max_hilbert_dim) {
  std::vector<std::string> problems;
  double dim = 4.0;
  for (std::size_t i = 0; i < spec.nuclei.size(); ++i) {
    const auto& n = spec.nuclei[i];
    const std::string path = "nuclei[" + std::to_string(i) + "]";
    if (n.spin.twice() < 1) problems.push_back(path + ".spin: spin must be ≥ 1/2");
    if (!std::isfinite(n.a_iso_uT) || std::abs(n.a_iso_uT) >= kMaxHyperfineMagnitude_uT)
      problems.push_back(path + ".a_iso_uT: |a_iso| must be below 1e7 µT");
    dim *= n.spin.multiplicity();
  }
  if (dim > static_cast<double>(max_hilbert_dim))
    problems.push_back("nuclei: Hilbert dimension " + std::to_string(static_cast<long long>(dim)) +
                       " exceeds cap " + std::to_string(max_hilbert_dim));
  return problems;
}

void validate(const RadicalPairSpec& spec, std::size_t max_hilbert_dim) {
  auto problems = validation_problems(spec, max_hilbert_dim);
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

}  // namespace radpair
