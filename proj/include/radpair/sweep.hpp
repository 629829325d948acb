#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "radpair/radical_pair.hpp"
#include "radpair/system.hpp"
#include "radpair/yields.hpp"

namespace radpair {

inline constexpr const char* kToolVersion = "radpair-1.0.0";

enum class Spacing { Linear, Log, Explicit };

// Named, strictly increasing axis. Log grids are strictly positive.
class Grid1D {
 public:
  Grid1D(std::string name, std::vector<double> values, Spacing spacing);

  static Grid1D linear(std::string name, double lo, double hi, std::size_t n);
  static Grid1D log(std::string name, double lo, double hi, std::size_t n);

  const std::string& name() const { return name_; }
  const std::vector<double>& values() const { return values_; }
  Spacing spacing() const { return spacing_; }
  std::size_t size() const { return values_.size(); }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  std::string name_;
  std::vector<double> values_;
  Spacing spacing_;
};

std::string to_string(Spacing spacing);
Spacing parse_spacing(const std::string& text);

// 0 plus 60 log points on [0.1, 1e4] µT.
Grid1D default_field_grid();
// 60 log points on [10, 1e6] µT.
Grid1D default_hyperfine_grid();
// 61 log points on [1e3, 1e9] s^-1, named k_per_s or r_per_s.
Grid1D default_rate_grid(std::string name);
// (k, r) sets used for the field and hyperfine sweeps.
std::vector<std::pair<double, double>> default_rate_pairs();

struct SweepRecord {
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> outputs;

  double input(const std::string& name) const;
  double output(const std::string& name) const;
};

struct SweepTable {
  std::vector<SweepRecord> records;  // lexicographic in grid indices
  // Constant text columns such as born state and channel.
  std::vector<std::pair<std::string, std::string>> labels;
  std::string spec_hash;
  std::string version = kToolVersion;

  // Header row then one row per record; floats as %.17g.
  void write_csv(std::ostream& out) const;
  // One JSON object per record.
  void write_jsonl(std::ostream& out) const;
};

// FNV-1a over a canonical text form of the spec, as 16 hex digits.
std::string spec_hash(const RadicalPairSpec& spec);

// Formats with 17 significant digits.
std::string format_double(double value);

struct SweepOptions {
  unsigned workers = 0;  // 0 = default_worker_count()
  PhysicalConstants constants{};
};

// Φ over the field grid; one decomposition per field point.
SweepTable sweep_field(const RadicalPairSpec& spec, double k, double r, BornState born,
                       Channel channel, const Grid1D& field_grid, const SweepOptions& options = {});

// ΔΘ^{S(S)} per (a, k, r) for a single-nucleus template; the template's a_iso
// is replaced by each grid value.
SweepTable sweep_hyperfine(const RadicalPairSpec& spec_template,
                           const std::vector<std::pair<double, double>>& rate_pairs,
                           const Grid1D& a_grid, const HmfContrast& contrast = {},
                           const SweepOptions& options = {});

// ΔΘ map over (k, r); exactly two decompositions.
SweepTable sweep_kr(const RadicalPairSpec& spec, const Grid1D& k_grid, const Grid1D& r_grid,
                    BornState born, Channel channel, const HmfContrast& contrast = {},
                    const SweepOptions& options = {});

}  // namespace radpair
