#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "radpair/eigensystem.hpp"
#include "radpair/projectors.hpp"
#include "radpair/radical_pair.hpp"
#include "radpair/system.hpp"

namespace radpair {

class RelaxationRate {
 public:
  RelaxationRate() = default;
  // Throws ValidationError for negative or non-finite rates.
  explicit RelaxationRate(double per_s);
  double per_s() const { return per_s_; }

 private:
  double per_s_ = 0.0;
};

struct TimeTrace {
  std::vector<double> times;          // s
  std::vector<double> probabilities;  // ⟨P^S⟩(t)
};

// Tr[P^S ρ(t)] without relaxation, as
//   constant + Σ_j Re(coefficient_j · exp(−i gap_j t)),
// one term per eigenpair m < n with gap = ω_m − ω_n.
struct CoherentSpectrum {
  double constant = 0.0;
  std::vector<double> gaps;  // rad/s
  std::vector<Complex> coefficients;

  double at(double t) const;
};

CoherentSpectrum coherent_spectrum(const EigenSystem& system, const ComplexMatrix& observable,
                                   const ComplexMatrix& rho0);

// 1/4 − [1/4 − p] e^{−rt}
double apply_relaxation(double coherent, RelaxationRate r, double t);

struct TraceOptions {
  PhysicalConstants constants{};
  // Restrict the singlet-born initial state to one nuclear product state.
  std::optional<NuclearConfig> nuclei;
};

// ⟨P^S⟩(t) for a singlet-born pair with relaxation.
TimeTrace singlet_probability_trace(const RadicalPairSpec& spec, double field_uT, RelaxationRate r,
                                    std::span<const double> times, const TraceOptions& options = {});

// `samples` points on [0, t_max].
std::vector<double> uniform_times(double t_max_s, std::size_t samples);

inline constexpr double kDefaultTraceDuration_s = 10e-6;
inline constexpr std::size_t kDefaultTraceSamples = 4096;

struct SpectralPeak {
  double frequency_hz = 0.0;
  double amplitude = 0.0;  // a pure cosine of amplitude A reports ≈ A
};

inline constexpr std::size_t kMinSpectrumSamples = 1024;
inline constexpr int kDefaultZeroPadding = 8;

// Local maxima of the rectangular-window magnitude spectrum of
// (p − mean), zero-padded by `zero_padding`, each refined by quadratic
// interpolation. Sorted by descending amplitude.
std::vector<SpectralPeak> beat_spectrum(const TimeTrace& trace, int zero_padding = kDefaultZeroPadding);

// Same scaling as beat_spectrum, evaluated by a direct sum at one frequency.
double spectral_amplitude_at(const TimeTrace& trace, double frequency_hz);

}  // namespace radpair
