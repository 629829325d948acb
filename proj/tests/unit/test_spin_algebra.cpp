#include <doctest.h>

#include <array>
#include <random>

#include "oracles.hpp"
#include "radpair/errors.hpp"
#include "radpair/projectors.hpp"
#include "radpair/spin_algebra.hpp"

using namespace radpair;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

const std::array<SpinQuantumNumber, 3> kSpins = {SpinQuantumNumber(1), SpinQuantumNumber(2), SpinQuantumNumber(3)};

}  // namespace

TEST_CASE("spin quantum number parsing and bounds") {
  CHECK(SpinQuantumNumber::parse("1/2").twice() == 1);
  CHECK(SpinQuantumNumber::parse("1").twice() == 2);
  CHECK(SpinQuantumNumber::parse("3/2").twice() == 3);
  CHECK(SpinQuantumNumber::parse("0.5").twice() == 1);
  CHECK(SpinQuantumNumber::parse("1.5").twice() == 3);
  CHECK(SpinQuantumNumber(3).to_string() == "3/2");
  CHECK(SpinQuantumNumber(2).to_string() == "1");
  CHECK(SpinQuantumNumber().casimir() == doctest::Approx(0.75));
  CHECK_THROWS_WITH_AS(SpinQuantumNumber::parse("0"), "spin must be ≥ 1/2", ValidationError);
  CHECK_THROWS_AS(SpinQuantumNumber(4), ValidationError);
  CHECK_THROWS_AS(SpinQuantumNumber::parse("2/3"), ValidationError);
  CHECK_THROWS_AS(SpinQuantumNumber::parse("abc"), ValidationError);
}

TEST_CASE("spin-1/2 operators are the halved Pauli matrices") {
  const auto s = spin_operators(kSpinHalf);
  CHECK(max_abs(s.x - oracle::pauli_x()) == 0.0);
  CHECK(max_abs(s.y - oracle::pauli_y()) == 0.0);
  CHECK(max_abs(s.z - oracle::pauli_z()) == 0.0);
}

TEST_CASE("spin-1 z operator") {
  const auto s = spin_operators(SpinQuantumNumber(2));
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected.diagonal() << 1.0, 0.0, -1.0;
  CHECK(max_abs(s.z - expected) == 0.0);
}

TEST_CASE("commutators and Casimir for every supported spin") {
  const Complex i(0, 1);
  for (auto spin : kSpins) {
    CAPTURE(spin.to_string());
    const auto s = spin_operators(spin);
    CHECK(max_abs(s.x * s.y - s.y * s.x - i * s.z) < 1e-12);
    CHECK(max_abs(s.y * s.z - s.z * s.y - i * s.x) < 1e-12);
    CHECK(max_abs(s.z * s.x - s.x * s.z - i * s.y) < 1e-12);
    const ComplexMatrix casimir = s.x * s.x + s.y * s.y + s.z * s.z;
    const auto n = spin.multiplicity();
    CHECK(max_abs(casimir - spin.casimir() * ComplexMatrix::Identity(n, n)) < 1e-12);
    CHECK(is_hermitian(s.x, 1e-12));
    CHECK(is_hermitian(s.y, 1e-12));
    CHECK(is_hermitian(s.z, 1e-12));
  }
}

TEST_CASE("kron examples") {
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(kron(id2, id2) - ComplexMatrix::Identity(4, 4)) == 0.0);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d.diagonal() << 1.0, 2.0;
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected.diagonal() << 1.0, 1.0, 2.0, 2.0;
  CHECK(max_abs(kron(d, id2) - expected) == 0.0);
  CHECK(kron(id2, ComplexMatrix::Identity(3, 3)).rows() == 6);
}

TEST_CASE("kron is associative") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  auto random = [&](int dim) {
    ComplexMatrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = Complex(n(rng), n(rng));
    return m;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = random(2 + trial % 2), b = random(3 - trial % 2), c = random(2 + (trial / 2) % 2);
    const ComplexMatrix left = kron(kron(a, b), c);
    const ComplexMatrix right = kron(a, kron(b, c));
    CHECK(max_abs(left - right) <= 1e-13 * max_abs(left));
  }
}

TEST_CASE("embedding places the operator at its site") {
  const auto s = spin_operators(kSpinHalf);
  const std::vector<int> dims = {2, 2};
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  CHECK(max_abs(embed_site_operator(s.z, 0, dims) - kron(s.z, id2)) == 0.0);
  CHECK(max_abs(embed_site_operator(s.z, 1, dims) - kron(id2, s.z)) == 0.0);
  const std::vector<int> mixed = {2, 3, 2};
  CHECK(max_abs(embed_site_operator(ComplexMatrix::Identity(3, 3), 1, mixed) - ComplexMatrix::Identity(12, 12)) == 0.0);
  CHECK_THROWS_AS(embed_site_operator(s.z, 1, mixed), ValidationError);
  CHECK_THROWS_AS(embed_site_operator(s.z, 3, mixed), ValidationError);
}

TEST_CASE("permute_sites reorders tensor factors") {
  const auto s2 = spin_operators(kSpinHalf);
  const auto s3 = spin_operators(SpinQuantumNumber(2));
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  const std::vector<int> dims = {2, 3, 2};
  const ComplexMatrix op = kron(kron(s2.x, s3.z), id2 + s2.y);
  const std::vector<std::size_t> order = {1, 2, 0};
  const ComplexMatrix expected = kron(kron(s3.z, id2 + s2.y), s2.x);
  CHECK(max_abs(permute_sites(op, dims, order) - expected) < 1e-15);
  const std::vector<std::size_t> bad = {0, 0, 1};
  CHECK_THROWS_AS(permute_sites(op, dims, bad), ValidationError);
}

TEST_CASE("singlet and triplet states") {
  const ComplexVector s = singlet_state();
  CHECK(s(1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(s(2).real() == doctest::Approx(-1.0 / std::sqrt(2.0)));
  ComplexMatrix basis(4, 4);
  basis << s, triplet_plus_state(), triplet_zero_state(), triplet_minus_state();
  CHECK(max_abs(basis.adjoint() * basis - ComplexMatrix::Identity(4, 4)) < 1e-15);
}

TEST_CASE("projector examples") {
  const RadicalPairSpec empty;
  const ComplexMatrix ps = singlet_projector(empty);
  CHECK(max_abs(ps - singlet_state() * singlet_state().adjoint()) < 1e-15);
  CHECK(ps.trace().real() == doctest::Approx(1.0));
  CHECK(triplet_projector(empty).trace().real() == doctest::Approx(3.0));
  const RadicalPairSpec one = spin_half_nuclei_on_a({1000.0});
  CHECK(singlet_projector(one).trace().real() == doctest::Approx(2.0));
  CHECK(triplet_projector(one).trace().real() == doctest::Approx(6.0));
  CHECK(max_abs(singlet_projector(one) - oracle::one_proton_singlet_projector()) < 1e-15);
}

TEST_CASE("projector algebra for specs with 0 to 3 nuclei") {
  std::vector<RadicalPairSpec> specs;
  specs.push_back({});
  const SpinQuantumNumber half(1), one(2);
  specs.push_back({{{half, 10.0, Electron::A}}});
  specs.push_back({{{one, 10.0, Electron::B}}});
  specs.push_back({{{half, 10.0, Electron::A}, {one, -5.0, Electron::B}}});
  specs.push_back({{{one, 1.0, Electron::A}, {half, 2.0, Electron::A}, {half, 3.0, Electron::B}}});
  specs.push_back({{{one, 1.0, Electron::B}, {one, 2.0, Electron::A}, {half, 3.0, Electron::B}}});
  for (const auto& spec : specs) {
    const ComplexMatrix ps = singlet_projector(spec);
    const ComplexMatrix pt = triplet_projector(spec);
    const auto n = ps.rows();
    const auto m = static_cast<double>(multiplicity(spec));
    CHECK(max_abs(ps * ps - ps) < 1e-12);
    CHECK(max_abs(pt * pt - pt) < 1e-12);
    CHECK(max_abs(ps - ps.adjoint()) < 1e-12);
    CHECK(max_abs(pt - pt.adjoint()) < 1e-12);
    CHECK(max_abs(ps + pt - ComplexMatrix::Identity(n, n)) < 1e-12);
    CHECK(max_abs(ps * pt) < 1e-12);
    CHECK(ps.trace().real() == doctest::Approx(m));
    CHECK(pt.trace().real() == doctest::Approx(3.0 * m));
  }
}

TEST_CASE("nuclear config projector") {
  const RadicalPairSpec spec{{{SpinQuantumNumber(1), 1.0, Electron::A}, {SpinQuantumNumber(2), 1.0, Electron::B}}};
  CHECK(nuclei_up(spec) == NuclearConfig{0, 0});
  const ComplexMatrix p = nuclear_config_projector(spec, {0, 2});
  CHECK(p.trace().real() == doctest::Approx(4.0));
  CHECK(max_abs(p * p - p) < 1e-15);
  ComplexMatrix total = ComplexMatrix::Zero(p.rows(), p.cols());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) total += nuclear_config_projector(spec, {i, j});
  CHECK(max_abs(total - ComplexMatrix::Identity(p.rows(), p.cols())) < 1e-15);
  CHECK_THROWS_AS(nuclear_config_projector(spec, {0}), ValidationError);
  CHECK_THROWS_AS(nuclear_config_projector(spec, {0, 3}), ValidationError);
}
