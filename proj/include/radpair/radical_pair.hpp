#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "radpair/spin_algebra.hpp"

namespace radpair {

enum class Electron { A, B };

struct NucleusSpec {
  SpinQuantumNumber spin;
  double a_iso_uT = 0.0;  // signed isotropic hyperfine constant
  Electron attached_to = Electron::A;

  friend bool operator==(const NucleusSpec&, const NucleusSpec&) = default;
};

inline constexpr double kMaxHyperfineMagnitude_uT = 1e7;
inline constexpr std::size_t kDefaultMaxHilbertDim = 1024;

struct RadicalPairSpec {
  std::vector<NucleusSpec> nuclei;

  friend bool operator==(const RadicalPairSpec&, const RadicalPairSpec&) = default;
};

// Convenience: every coupling spin-1/2 on electron A.
RadicalPairSpec spin_half_nuclei_on_a(const std::vector<double>& a_iso_uT);

// M = ∏(2I+1).
std::size_t multiplicity(const RadicalPairSpec& spec);
std::size_t hilbert_dim(const RadicalPairSpec& spec);

// Sites are [A, A-nuclei..., B, B-nuclei...]; nuclei keep spec order within
// each electron.
struct SiteLayout {
  std::vector<int> dims;
  std::size_t electron_a = 0;
  std::size_t electron_b = 0;
  std::vector<std::size_t> nucleus_site;  // indexed like spec.nuclei
};

SiteLayout site_layout(const RadicalPairSpec& spec);

// Lists every problem; empty when valid.
std::vector<std::string> validation_problems(const RadicalPairSpec& spec,
                                             std::size_t max_hilbert_dim = kDefaultMaxHilbertDim);
// Throws ValidationError with all problems.
void validate(const RadicalPairSpec& spec, std::size_t max_hilbert_dim = kDefaultMaxHilbertDim);

}  // namespace radpair
