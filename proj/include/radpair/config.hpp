#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "radpair/dynamics.hpp"
#include "radpair/errors.hpp"
#include "radpair/radical_pair.hpp"
#include "radpair/sweep.hpp"
#include "radpair/system.hpp"
#include "radpair/yields.hpp"

namespace radpair {

enum class OutputFormat { Csv, Json, JsonLines };

struct GridSet {
  std::optional<Grid1D> field;      // "B_uT"
  std::optional<Grid1D> hyperfine;  // "a_uT"
  std::optional<Grid1D> k;          // "k_per_s"
  std::optional<Grid1D> r;          // "r_per_s"

  friend bool operator==(const GridSet&, const GridSet&) = default;
};

struct TraceConfig {
  double duration_s = kDefaultTraceDuration_s;
  std::size_t samples = kDefaultTraceSamples;
  bool nuclei_up = false;
  int zero_padding = kDefaultZeroPadding;

  friend bool operator==(const TraceConfig&, const TraceConfig&) = default;
};

struct OutputConfig {
  std::string path = "-";  // "-" is standard output
  OutputFormat format = OutputFormat::Csv;

  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
  RadicalPairSpec spec;
  PhysicalConstants constants;
  std::size_t max_hilbert_dim = kDefaultMaxHilbertDim;
  double field_uT = 50.0;
  double k_per_s = 1e6;
  double r_per_s = 0.0;
  HmfContrast contrast;
  BornState born = BornState::Singlet;
  Channel channel = Channel::Singlet;
  GridSet grids;
  TraceConfig trace;
  OutputConfig output;
  unsigned workers = 0;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Thrown with every problem found, each prefixed by its field path.
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(std::vector<std::string> problems) : ValidationError(std::move(problems)) {}
};

// Parses the JSON config schema (see README). Unknown keys and wrong unit
// suffixes are errors.
RunConfig parse_config(std::string_view text);

// All bound checks across modules; empty when valid.
std::vector<std::string> validation_problems(const RunConfig& config);

std::string serialize_config(const RunConfig& config);

std::string to_string(BornState born);
std::string to_string(Channel channel);
std::string to_string(OutputFormat format);
std::string to_string(Electron electron);

}  // namespace radpair
