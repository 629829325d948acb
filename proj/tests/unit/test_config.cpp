#include <doctest.h>

#include <algorithm>
#include <random>

#include "radpair/config.hpp"

using namespace radpair;

namespace {

std::vector<std::string> errors_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& errors, const std::string& needle) {
  return std::any_of(errors.begin(), errors.end(), [&](const std::string& e) { return e.find(needle) != std::string::npos; });
}

RunConfig random_config(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 3), twice(1, 3), coin(0, 1), fmt(0, 2), small(2, 9);
  std::uniform_real_distribution<double> a(-1e4, 1e4), unit(0.0, 1.0);
  auto log_uniform = [&](double lo, double hi) { return lo * std::pow(hi / lo, unit(rng)); };
  RunConfig cfg;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) cfg.spec.nuclei.push_back({SpinQuantumNumber(twice(rng)), a(rng), coin(rng) ? Electron::B : Electron::A});
  cfg.constants.gamma_e = log_uniform(1.0, 1e12);
  cfg.max_hilbert_dim = 4096;
  cfg.field_uT = log_uniform(1e-3, 1e4);
  cfg.k_per_s = log_uniform(1e3, 1e9);
  cfg.r_per_s = coin(rng) ? 0.0 : log_uniform(1e3, 1e9);
  cfg.contrast = {unit(rng) * 5.0, log_uniform(10.0, 100.0)};
  cfg.born = coin(rng) ? BornState::Singlet : BornState::Triplet;
  cfg.channel = coin(rng) ? Channel::Singlet : Channel::Triplet;
  if (coin(rng)) cfg.grids.field = Grid1D::log("B_uT", log_uniform(0.01, 1.0), log_uniform(10.0, 1e4), small(rng));
  if (coin(rng)) cfg.grids.hyperfine = Grid1D::linear("a_uT", -unit(rng) * 100.0, log_uniform(10.0, 1e5), small(rng));
  if (coin(rng)) cfg.grids.k = Grid1D::log("k_per_s", log_uniform(1e2, 1e4), log_uniform(1e6, 1e9), small(rng));
  if (coin(rng)) cfg.grids.r = Grid1D("r_per_s", {0.0, log_uniform(1.0, 10.0), log_uniform(100.0, 1e9)}, Spacing::Explicit);
  cfg.trace = {log_uniform(1e-7, 1e-4), static_cast<std::size_t>(small(rng)) * 512, coin(rng) == 1, small(rng)};
  cfg.output = {coin(rng) ? "-" : "out/run_" + std::to_string(small(rng)) + ".csv", static_cast<OutputFormat>(fmt(rng))};
  cfg.workers = static_cast<unsigned>(count(rng));
  return cfg;
}

}  // namespace

TEST_CASE("minimal config") {
  const RunConfig cfg = parse_config(R"({"nuclei":[{"spin":"1/2","a_iso_uT":1000,"electron":"A"}]})");
  REQUIRE(cfg.spec.nuclei.size() == 1);
  CHECK(multiplicity(cfg.spec) == 2);
  CHECK(cfg.spec.nuclei[0].a_iso_uT == 1000.0);
  CHECK(cfg.contrast.B_hmf_uT == 1.0);
  CHECK(cfg.contrast.B_gmf_uT == 50.0);
  CHECK(cfg.constants.gamma_e == 1.76e11);
  CHECK(parse_config("{}") == RunConfig{});
}

TEST_CASE("spin zero is rejected") {
  const auto errors = errors_of(R"({"nuclei":[{"spin":"0","a_iso_uT":1000,"electron":"A"}]})");
  REQUIRE(errors.size() == 1);
  CHECK(errors[0] == "nuclei[0].spin: spin must be ≥ 1/2");
}

TEST_CASE("negative rate reports its field path") {
  const auto errors = errors_of(R"({"kinetics":{"k_per_s":-1}})");
  REQUIRE(errors.size() == 1);
  CHECK(errors[0].rfind("kinetics.k_per_s:", 0) == 0);
}

TEST_CASE("every problem is reported") {
  const auto errors = errors_of(R"({
    "nuclei":[{"spin":"0","a_iso_uT":1000},{"spin":"1/2","a_iso_mT":1,"electron":"C"}],
    "kinetics":{"k_per_s":-1,"r_per_s":-2},
    "born":"X",
    "colour":"red",
    "trace":{"samples":1}
  })");
  CHECK(any_contains(errors, "nuclei[0].spin"));
  CHECK(any_contains(errors, "nuclei[1].a_iso_mT: unit suffix mismatch, expected 'a_iso_uT'"));
  CHECK(any_contains(errors, "nuclei[1].electron"));
  CHECK(any_contains(errors, "kinetics.k_per_s"));
  CHECK(any_contains(errors, "kinetics.r_per_s"));
  CHECK(any_contains(errors, "born"));
  CHECK(any_contains(errors, "config.colour: unknown key"));
  CHECK(any_contains(errors, "trace.samples"));
}

TEST_CASE("unit suffixes are enforced") {
  CHECK(any_contains(errors_of(R"({"field_T":1e-6})"), "field_T: unit suffix mismatch, expected 'field_uT'"));
  CHECK(any_contains(errors_of(R"({"kinetics":{"k_per_ms":1}})"), "expected 'k_per_s'"));
  CHECK(any_contains(errors_of(R"({"contrast":{"B_hmf_nT":1}})"), "expected 'B_hmf_uT'"));
  CHECK(any_contains(errors_of(R"({"constants":{"gamma_e":1}})"), "expected 'gamma_e_per_s_per_T'"));
}

TEST_CASE("malformed and mistyped input") {
  CHECK(any_contains(errors_of("{"), "malformed JSON"));
  CHECK(any_contains(errors_of("[]"), "expected an object"));
  CHECK(any_contains(errors_of(R"({"field_uT":"fifty"})"), "field_uT: expected a number"));
  CHECK(any_contains(errors_of(R"({"workers":-2})"), "workers: expected a non-negative integer"));
  CHECK(any_contains(errors_of(R"({"nuclei":[{"a_iso_uT":1}]})"), "nuclei[0].spin: required"));
  CHECK(any_contains(errors_of(R"({"output":{"format":"xml"}})"), "output.format"));
}

TEST_CASE("grid forms") {
  const RunConfig cfg = parse_config(R"({"grids":{
    "B_uT":{"min":0.1,"max":1e4,"n":60,"include_zero":true},
    "k_per_s":{"min":1e3,"max":1e9,"n":61},
    "a_uT":{"min":0,"max":100,"n":5,"spacing":"linear"},
    "r_per_s":{"values":[0,10,1e4]}}})");
  CHECK(*cfg.grids.field == default_field_grid());
  CHECK(*cfg.grids.k == default_rate_grid("k_per_s"));
  CHECK(cfg.grids.hyperfine->values() == std::vector<double>{0, 25, 50, 75, 100});
  CHECK(cfg.grids.r->spacing() == Spacing::Explicit);
  CHECK(any_contains(errors_of(R"({"grids":{"k_per_s":{"values":[3,2]}}})"), "grids.k_per_s"));
  CHECK(any_contains(errors_of(R"({"grids":{"k_per_s":{"min":1,"max":2}}})"), "needs values or min, max and n"));
  CHECK(any_contains(errors_of(R"({"grids":{"B_uT":{"values":[-1,2]}}})"), "grids.B_uT"));
  CHECK(any_contains(errors_of(R"({"grids":{"B_T":{"values":[1]}}})"), "unit suffix mismatch"));
}

TEST_CASE("born and channel spellings") {
  CHECK(parse_config(R"({"born":"triplet","channel":"T"})").born == BornState::Triplet);
  CHECK(parse_config(R"({"born":"S","channel":"singlet"})").channel == Channel::Singlet);
}

TEST_CASE("serialize then parse round-trips 100 random configs") {
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 100; ++trial) {
    const RunConfig cfg = random_config(rng);
    REQUIRE(validation_problems(cfg).empty());
    const std::string text = serialize_config(cfg);
    CHECK(parse_config(text) == cfg);
    CHECK(serialize_config(parse_config(text)) == text);
  }
}
