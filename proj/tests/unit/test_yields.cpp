#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "radpair/eigensystem.hpp"
#include "radpair/errors.hpp"
#include "radpair/projectors.hpp"
#include "radpair/system.hpp"
#include "radpair/yields.hpp"

using namespace radpair;

namespace {

const RadicalPairSpec kOneProton = spin_half_nuclei_on_a({1000.0});

double phi(const RadicalPairSpec& spec, double k, double r, double b, BornState born, Channel channel) {
  return yield_any(spec, KineticParams{k, r, b}, born, channel).phi;
}

// k ∫ e^{−kt} [1/4 − (1/4 − p(t)) e^{−rt}] dt with p(t) from stepping ρ by a
// fixed propagator, integrated by Simpson's rule.
double propagated_yield(const RadicalPairSpec& spec, double b, double k, double r, BornState born) {
  const oracle::Matrix h = build_hamiltonian(spec, b);
  const oracle::Matrix p = singlet_projector(spec);
  oracle::Matrix rho = initial_density(spec, born);
  const double horizon = -std::log(1e-13) / k;
  const double omega_max = 2.0 * h.cwiseAbs().rowwise().sum().maxCoeff();
  std::size_t intervals = static_cast<std::size_t>(horizon * omega_max / (2 * M_PI) * 200.0) + 2;
  intervals += intervals % 2;
  const double step = horizon / static_cast<double>(intervals);
  const oracle::Matrix u = (oracle::C(0, -step) * h).exp();
  double sum = 0.0;
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double t = step * static_cast<double>(i);
    const double coherent = (p * rho).trace().real();
    const double f = k * std::exp(-k * t) * (0.25 - (0.25 - coherent) * std::exp(-r * t));
    sum += (i == 0 || i == intervals ? 1.0 : (i % 2 ? 4.0 : 2.0)) * f;
    rho = u * rho * u.adjoint();
  }
  return sum * step / 3.0;
}

}  // namespace

TEST_CASE("kinetic parameter validation") {
  CHECK(validation_problems(KineticParams{-1.0, -2.0, -3.0}).size() == 3);
  CHECK(validation_problems(KineticParams{0.0, 0.0, 0.0}).size() == 1);
  CHECK_THROWS_AS(yield_any(kOneProton, KineticParams{1e6, -1.0, 0.0}, BornState::Singlet, Channel::Singlet),
                  ValidationError);
}

TEST_CASE("relaxation-dominated surrogate") {
  for (const auto& spec : {kOneProton, spin_half_nuclei_on_a({300.0, -800.0}), RadicalPairSpec{}}) {
    CHECK(std::abs(phi(spec, 1e6, 1e18, 50.0, BornState::Singlet, Channel::Singlet) - 0.25) < 1e-6);
    CHECK(std::abs(phi(spec, 1e6, 1e18, 50.0, BornState::Triplet, Channel::Singlet) - 0.25) < 1e-6);
    CHECK(std::abs(phi(spec, 1e6, 1e18, 50.0, BornState::Triplet, Channel::Triplet) - 0.75) < 1e-6);
  }
  CHECK(std::abs(phi(spin_half_nuclei_on_a({0.0}), 1e6, 1e18, 50.0, BornState::Singlet, Channel::Singlet) - 0.25) < 1e-6);
}

TEST_CASE("fast-recombination surrogate") {
  CHECK(std::abs(phi(kOneProton, 1e15, 0.0, 0.0, BornState::Singlet, Channel::Singlet) - 1.0) < 1e-4);
  CHECK(std::abs(phi(kOneProton, 1e15, 0.0, 0.0, BornState::Triplet, Channel::Singlet)) < 1e-4);
  CHECK(std::abs(phi(kOneProton, 1e15, 0.0, 0.0, BornState::Singlet, Channel::Triplet)) < 1e-4);
  const auto q = yield_quadrature_oracle(kOneProton, KineticParams{1e15, 0.0, 0.0}, BornState::Singlet);
  CHECK(std::abs(q.phi - 1.0) < 1e-4);
}

TEST_CASE("channel complement and bounds") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const RadicalPairSpec spec = spin_half_nuclei_on_a({oracle::log_uniform(rng, 1.0, 1e4)});
    const KineticParams params{oracle::log_uniform(rng, 1e3, 1e9), oracle::log_uniform(rng, 1e3, 1e9),
                               oracle::log_uniform(rng, 0.1, 1e4)};
    for (BornState born : {BornState::Singlet, BornState::Triplet}) {
      const double s = yield_any(spec, params, born, Channel::Singlet).phi;
      const double t = yield_any(spec, params, born, Channel::Triplet).phi;
      CHECK(std::abs(s + t - 1.0) < 1e-15);
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
    }
  }
}

TEST_CASE("sum rule") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> a(-3000.0, 3000.0);
  for (int trial = 0; trial < 20; ++trial) {
    const RadicalPairSpec spec{{{kSpinHalf, a(rng), Electron::A}, {SpinQuantumNumber(2), a(rng), Electron::B}}};
    CHECK(std::abs(singlet_spectrum(spec, 10.0 * trial).sum_rule() - 1.0) < 1e-10);
  }
}

TEST_CASE("born-state mixture identity") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const RadicalPairSpec spec = spin_half_nuclei_on_a({oracle::log_uniform(rng, 10.0, 5000.0), -300.0});
    const double b = oracle::log_uniform(rng, 0.1, 1000.0);
    const double k = oracle::log_uniform(rng, 1e3, 1e9), r = oracle::log_uniform(rng, 1e3, 1e9);
    const SingletSpectrum s = singlet_spectrum(spec, b);
    const double mixture = 0.25 * singlet_born_singlet_yield(s, k, r) + 0.75 * triplet_born_singlet_yield(s, k, r);
    const EigenSystem sys = eigendecompose(build_hamiltonian(spec, b));
    const auto n = static_cast<Eigen::Index>(hilbert_dim(spec));
    const ComplexMatrix mixed = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
    CHECK(std::abs(mixture - singlet_yield_from_density(sys, singlet_projector(spec), mixed, k, r)) < 1e-9);
    CHECK(std::abs(mixture - 0.25) < 1e-9);
    const double from_rho =
        singlet_yield_from_density(sys, singlet_projector(spec), initial_density(spec, BornState::Singlet), k, r);
    CHECK(std::abs(from_rho - singlet_born_singlet_yield(s, k, r)) < 1e-12);
  }
}

TEST_CASE("closed forms match propagated Simpson integration") {
  struct Case {
    double b, k, r;
    BornState born;
  };
  for (const Case& c : {Case{0.0, 1e6, 1e5, BornState::Singlet}, Case{50.0, 1e6, 1e5, BornState::Triplet},
                        Case{50.0, 2e6, 0.0, BornState::Singlet}}) {
    const double expected = propagated_yield(kOneProton, c.b, c.k, c.r, c.born);
    const double closed = yield_any(kOneProton, KineticParams{c.k, c.r, c.b}, c.born, Channel::Singlet).phi;
    CHECK(std::abs(closed - expected) < 1e-6);
  }
}

TEST_CASE("closed forms match the quadrature oracle") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> field(0.0, 100.0), hyperfine(100.0, 5000.0);
  for (int trial = 0; trial < 6; ++trial) {
    const RadicalPairSpec spec = spin_half_nuclei_on_a({hyperfine(rng)});
    const KineticParams params{oracle::log_uniform(rng, 1e3, 1e8), oracle::log_uniform(rng, 1e3, 1e8), field(rng)};
    for (BornState born : {BornState::Singlet, BornState::Triplet}) {
      const double closed = yield_any(spec, params, born, Channel::Singlet).phi;
      CHECK(std::abs(closed - yield_quadrature_oracle(spec, params, born).phi) < 1e-6);
    }
  }
}

TEST_CASE("quadrature: sampled and closed step sums agree") {
  const KineticParams params{3e5, 2e4, 20.0};
  const auto sampled = yield_quadrature_oracle(kOneProton, params, BornState::Singlet);
  QuadratureOptions options;
  options.max_sampled_steps = 10;
  const auto summed = yield_quadrature_oracle(kOneProton, params, BornState::Singlet, {}, options);
  CHECK(sampled.sampled);
  CHECK_FALSE(summed.sampled);
  CHECK(sampled.steps == summed.steps);
  CHECK(std::abs(sampled.phi - summed.phi) < 1e-10);
  options.max_steps = 100;
  CHECK_THROWS_AS(yield_quadrature_oracle(kOneProton, params, BornState::Singlet, {}, options), NumericalError);
}

TEST_CASE("slow recombination approaches the time average") {
  // Long-time average of ⟨P^S⟩ from propagation over 20 µs.
  const oracle::Matrix h = build_hamiltonian(kOneProton, 0.0);
  const oracle::Matrix p = singlet_projector(kOneProton);
  oracle::Matrix rho = initial_density(kOneProton, BornState::Singlet);
  const double step = 1.37e-10;
  const std::size_t steps = 150000;
  const oracle::Matrix u = (oracle::C(0, -step) * h).exp();
  double sum = 0.0;
  for (std::size_t i = 0; i < steps; ++i) {
    sum += (p * rho).trace().real();
    rho = u * rho * u.adjoint();
  }
  const double average = sum / static_cast<double>(steps);
  const KineticParams params{1e2, 0.0, 0.0};
  CHECK(std::abs(singlet_yield_singlet_born(kOneProton, params).phi - average) < 1e-3);
  CHECK(std::abs(yield_quadrature_oracle(kOneProton, params, BornState::Singlet).phi - average) < 1e-3);
}

TEST_CASE("HMF effect") {
  CHECK(hmf_effect(kOneProton, 1e6, 1e4, BornState::Singlet, Channel::Singlet) > 10.0);
  CHECK(hmf_effect(spin_half_nuclei_on_a({0.0}), 1e6, 1e4, BornState::Singlet, Channel::Singlet) == 0.0);
  CHECK(hmf_effect(kOneProton, 1e6, 1e4, BornState::Singlet, Channel::Singlet, HmfContrast{7.0, 7.0}) == 0.0);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const double k = oracle::log_uniform(rng, 1e3, 1e9), r = oracle::log_uniform(rng, 1e3, 1e9);
    for (BornState born : {BornState::Singlet, BornState::Triplet})
      for (Channel channel : {Channel::Singlet, Channel::Triplet}) CHECK(hmf_effect(kOneProton, k, r, born, channel) >= 0.0);
  }
}

TEST_CASE("effective hyperfine constant") {
  const std::vector<HyperfineCoupling> one = {{830.0, kSpinHalf}};
  CHECK(effective_hyperfine(one) == doctest::Approx(830.0));
  const std::vector<HyperfineCoupling> pair = {{500.0, kSpinHalf}, {-500.0, kSpinHalf}};
  CHECK(effective_hyperfine(pair) == doctest::Approx(500.0 * std::sqrt(2.0)));
  CHECK(effective_hyperfine(pair) == doctest::Approx(707.1).epsilon(1e-4));
  const std::vector<HyperfineCoupling> spin1 = {{300.0, SpinQuantumNumber(2)}};
  CHECK(effective_hyperfine(spin1) == doctest::Approx(300.0 * std::sqrt(8.0 / 3.0)));
  CHECK_THROWS_AS(effective_hyperfine({}), ValidationError);
}
