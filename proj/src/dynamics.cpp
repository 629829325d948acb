#include "radpair/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <unsupported/Eigen/FFT>

#include "radpair/errors.hpp"

namespace radpair {

RelaxationRate::RelaxationRate(double per_s) : per_s_(per_s) {
  if (!std::isfinite(per_s) || per_s < 0.0) throw ValidationError("relaxation rate r must be ≥ 0");
}

double CoherentSpectrum::at(double t) const {
  double p = constant;
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    const double phase = gaps[j] * t;
    p += coefficients[j].real() * std::cos(phase) + coefficients[j].imag() * std::sin(phase);
  }
  return p;
}

CoherentSpectrum coherent_spectrum(const EigenSystem& system, const ComplexMatrix& observable,
                                   const ComplexMatrix& rho0) {
  const ComplexMatrix& v = system.vectors;
  const ComplexMatrix o = v.adjoint() * observable * v;
  const ComplexMatrix rho = v.adjoint() * rho0 * v;
  CoherentSpectrum out;
  const Eigen::Index n = v.cols();
  for (Eigen::Index m = 0; m < n; ++m) {
    out.constant += (o(m, m) * rho(m, m)).real();
    for (Eigen::Index k = m + 1; k < n; ++k) {
      // The (k, m) partner is the complex conjugate term.
      const Complex c = 2.0 * o(k, m) * rho(m, k);
      if (c == Complex(0.0, 0.0)) continue;
      out.gaps.push_back(system.values[static_cast<std::size_t>(m)] - system.values[static_cast<std::size_t>(k)]);
      out.coefficients.push_back(c);
    }
  }
  return out;
}

double apply_relaxation(double coherent, RelaxationRate r, double t) {
  return 0.25 - (0.25 - coherent) * std::exp(-r.per_s() * t);
}

TimeTrace singlet_probability_trace(const RadicalPairSpec& spec, double field_uT, RelaxationRate r,
                                    std::span<const double> times, const TraceOptions& options) {
  if (times.empty()) throw ValidationError("time grid is empty");
  if (!(times.front() >= 0.0)) throw ValidationError("times must start at t ≥ 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw ValidationError("times must be strictly increasing");

  const EigenSystem system = eigendecompose(build_hamiltonian(spec, field_uT, options.constants));
  const ComplexMatrix projector = singlet_projector(spec);
  const ComplexMatrix rho0 = options.nuclei ? singlet_density_with_nuclei(spec, *options.nuclei)
                                            : initial_density(spec, BornState::Singlet);
  const CoherentSpectrum spectrum = coherent_spectrum(system, projector, rho0);

  TimeTrace trace;
  trace.times.assign(times.begin(), times.end());
  trace.probabilities.reserve(times.size());
  for (double t : times) trace.probabilities.push_back(std::clamp(apply_relaxation(spectrum.at(t), r, t), 0.0, 1.0));
  return trace;
}

std::vector<double> uniform_times(double t_max_s, std::size_t samples) {
  if (samples < 2 || !(t_max_s > 0.0)) throw ValidationError("uniform time grid needs t_max > 0 and ≥ 2 samples");
  std::vector<double> t(samples);
  for (std::size_t i = 0; i < samples; ++i) t[i] = t_max_s * static_cast<double>(i) / static_cast<double>(samples - 1);
  return t;
}

namespace {

double uniform_step(const TimeTrace& trace) {
  const auto& t = trace.times;
  if (t.size() != trace.probabilities.size()) throw ValidationError("trace times and values differ in length");
  if (t.size() < kMinSpectrumSamples)
    throw ValidationError("beat spectrum needs at least " + std::to_string(kMinSpectrumSamples) + " samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(dt > 0.0)) throw ValidationError("time grid is not increasing");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * dt) throw ValidationError("beat spectrum needs a uniform time grid");
  return dt;
}

std::vector<double> centered(const TimeTrace& trace) {
  const auto& p = trace.probabilities;
  const double mean = std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
  std::vector<double> x(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) x[i] = p[i] - mean;
  return x;
}

}  // namespace

std::vector<SpectralPeak> beat_spectrum(const TimeTrace& trace, int zero_padding) {
  if (zero_padding < 1) throw ValidationError("zero padding factor must be ≥ 1");
  const double dt = uniform_step(trace);
  std::vector<double> x = centered(trace);
  const std::size_t n = x.size();
  const std::size_t padded = n * static_cast<std::size_t>(zero_padding);
  x.resize(padded, 0.0);

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, x);

  const std::size_t half = padded / 2;
  std::vector<double> amp(half + 1);
  for (std::size_t k = 0; k <= half; ++k) amp[k] = 2.0 * std::abs(spectrum[k]) / static_cast<double>(n);

  constexpr double kFloor = 1e-12;
  std::vector<SpectralPeak> peaks;
  for (std::size_t k = 1; k < half; ++k) {
    const double a = amp[k - 1], b = amp[k], c = amp[k + 1];
    if (!(b > a && b >= c && b > kFloor)) continue;
    const double denom = a - 2.0 * b + c;
    const double shift = denom != 0.0 ? 0.5 * (a - c) / denom : 0.0;
    peaks.push_back({(static_cast<double>(k) + shift) / (static_cast<double>(padded) * dt),
                     b - 0.25 * (a - c) * shift});
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const SpectralPeak& l, const SpectralPeak& r) { return l.amplitude > r.amplitude; });
  return peaks;
}

double spectral_amplitude_at(const TimeTrace& trace, double frequency_hz) {
  uniform_step(trace);
  const std::vector<double> x = centered(trace);
  const double t0 = trace.times.front();
  Complex sum(0.0, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double phase = -2.0 * std::numbers::pi * frequency_hz * (trace.times[i] - t0);
    sum += x[i] * Complex(std::cos(phase), std::sin(phase));
  }
  return 2.0 * std::abs(sum) / static_cast<double>(x.size());
}

}  // namespace radpair
