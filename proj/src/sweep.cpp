#include "radpair/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "radpair/errors.hpp"
#include "radpair/parallel.hpp"

namespace radpair {

Grid1D::Grid1D(std::string name, std::vector<double> values, Spacing spacing)
    : name_(std::move(name)), values_(std::move(values)), spacing_(spacing) {
  std::vector<std::string> problems;
  if (name_.empty()) problems.push_back("grid name is empty");
  if (values_.empty()) problems.push_back("grid " + name_ + " has no values");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) problems.push_back("grid " + name_ + " has a non-finite value");
    if (i > 0 && !(values_[i] > values_[i - 1])) {
      problems.push_back("grid " + name_ + " must be strictly increasing");
      break;
    }
  }
  if (spacing_ == Spacing::Log && !values_.empty() && !(values_.front() > 0.0))
    problems.push_back("log grid " + name_ + " must be strictly positive");
  if (!problems.empty()) throw ValidationError(std::move(problems));
}

Grid1D Grid1D::linear(std::string name, double lo, double hi, std::size_t n) {
  if (n == 0) throw ValidationError("grid " + name + " needs at least one point");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  if (n > 1) v.back() = hi;
  return Grid1D(std::move(name), std::move(v), Spacing::Linear);
}

Grid1D Grid1D::log(std::string name, double lo, double hi, std::size_t n) {
  if (n == 0) throw ValidationError("grid " + name + " needs at least one point");
  if (!(lo > 0.0) || !(hi > 0.0)) throw ValidationError("log grid " + name + " must be strictly positive");
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = n == 1 ? lo : std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  v.front() = lo;
  if (n > 1) v.back() = hi;
  return Grid1D(std::move(name), std::move(v), Spacing::Log);
}

std::string to_string(Spacing spacing) {
  switch (spacing) {
    case Spacing::Linear: return "linear";
    case Spacing::Log: return "log";
    case Spacing::Explicit: return "explicit";
  }
  return "explicit";
}

Spacing parse_spacing(const std::string& text) {
  if (text == "linear") return Spacing::Linear;
  if (text == "log") return Spacing::Log;
  if (text == "explicit") return Spacing::Explicit;
  throw ValidationError("spacing must be linear, log or explicit (got '" + text + "')");
}

Grid1D default_field_grid() {
  const Grid1D positive = Grid1D::log("B_uT", 0.1, 1e4, 60);
  std::vector<double> v = {0.0};
  v.insert(v.end(), positive.values().begin(), positive.values().end());
  return Grid1D("B_uT", std::move(v), Spacing::Explicit);
}

Grid1D default_hyperfine_grid() { return Grid1D::log("a_uT", 10.0, 1e6, 60); }

Grid1D default_rate_grid(std::string name) { return Grid1D::log(std::move(name), 1e3, 1e9, 61); }

std::vector<std::pair<double, double>> default_rate_pairs() {
  return {{1e6, 1e4}, {1e6, 1e5}, {1e5, 1e6}, {1e4, 1e6}};
}

namespace {

double lookup(const std::vector<std::pair<std::string, double>>& items, const std::string& name) {
  for (const auto& [key, value] : items)
    if (key == name) return value;
  throw std::out_of_range("no column " + name);
}

std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

std::string born_label(BornState b) { return b == BornState::Singlet ? "S" : "T"; }
std::string channel_label(Channel c) { return c == Channel::Singlet ? "S" : "T"; }

}  // namespace

double SweepRecord::input(const std::string& name) const { return lookup(inputs, name); }
double SweepRecord::output(const std::string& name) const { return lookup(outputs, name); }

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void SweepTable::write_csv(std::ostream& out) const {
  if (records.empty()) return;
  const SweepRecord& head = records.front();
  std::string line;
  for (const auto& [name, _] : head.inputs) line += name + ",";
  for (const auto& [name, _] : head.outputs) line += name + ",";
  for (const auto& [name, _] : labels) line += name + ",";
  out << line << "spec_hash,version\n";
  std::string suffix;
  for (const auto& [_, value] : labels) suffix += value + ",";
  suffix += spec_hash + "," + version + "\n";
  for (const auto& rec : records) {
    line.clear();
    for (const auto& [_, v] : rec.inputs) line += format_double(v) + ",";
    for (const auto& [_, v] : rec.outputs) line += format_double(v) + ",";
    out << line << suffix;
  }
}

void SweepTable::write_jsonl(std::ostream& out) const {
  std::string suffix;
  for (const auto& [name, value] : labels) suffix += ",\"" + name + "\":\"" + value + "\"";
  suffix += ",\"spec_hash\":\"" + spec_hash + "\",\"version\":\"" + version + "\"}\n";
  for (const auto& rec : records) {
    std::string line = "{";
    bool first = true;
    for (const auto* group : {&rec.inputs, &rec.outputs})
      for (const auto& [name, v] : *group) {
        if (!first) line += ",";
        first = false;
        line += "\"" + name + "\":" + json_number(v);
      }
    out << line << suffix;
  }
}

std::string spec_hash(const RadicalPairSpec& spec) {
  std::string canonical = "radical-pair-v1;";
  for (const auto& n : spec.nuclei)
    canonical += n.spin.to_string() + "|" + format_double(n.a_iso_uT) + "|" +
                 (n.attached_to == Electron::A ? "A" : "B") + ";";
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SweepTable sweep_field(const RadicalPairSpec& spec, double k, double r, BornState born, Channel channel,
                       const Grid1D& field_grid, const SweepOptions& options) {
  validate(spec);
  validate(KineticParams{k, r, 0.0});
  const auto& fields = field_grid.values();
  SweepTable table;
  table.spec_hash = spec_hash(spec);
  table.labels = {{"born", born_label(born)}, {"channel", channel_label(channel)}};
  table.records.resize(fields.size());
  parallel_for(fields.size(), options.workers, [&](std::size_t i) {
    const SingletSpectrum spectrum = singlet_spectrum(spec, fields[i], options.constants);
    const YieldResult y = yield_any(spectrum, k, r, born, channel);
    table.records[i] = {{{"B_uT", fields[i]}, {"k_per_s", k}, {"r_per_s", r}}, {{"phi", y.phi}}};
  });
  return table;
}

SweepTable sweep_hyperfine(const RadicalPairSpec& spec_template,
                           const std::vector<std::pair<double, double>>& rate_pairs, const Grid1D& a_grid,
                           const HmfContrast& contrast, const SweepOptions& options) {
  if (spec_template.nuclei.size() != 1) throw ValidationError("hyperfine sweep needs a single-nucleus template");
  if (rate_pairs.empty()) throw ValidationError("hyperfine sweep needs at least one (k, r) pair");
  for (const auto& [k, r] : rate_pairs) validate(KineticParams{k, r, 0.0});
  validate(spec_template);

  const auto& as = a_grid.values();
  SweepTable table;
  table.spec_hash = spec_hash(spec_template);
  table.labels = {{"born", "S"}, {"channel", "S"}};
  table.records.resize(as.size() * rate_pairs.size());
  parallel_for(as.size(), options.workers, [&](std::size_t i) {
    RadicalPairSpec spec = spec_template;
    spec.nuclei.front().a_iso_uT = as[i];
    validate(spec);
    const SingletSpectrum hmf = singlet_spectrum(spec, contrast.B_hmf_uT, options.constants);
    const SingletSpectrum gmf = singlet_spectrum(spec, contrast.B_gmf_uT, options.constants);
    for (std::size_t p = 0; p < rate_pairs.size(); ++p) {
      const auto [k, r] = rate_pairs[p];
      const double phi_hmf = yield_any(hmf, k, r, BornState::Singlet, Channel::Singlet).phi;
      const double phi_gmf = yield_any(gmf, k, r, BornState::Singlet, Channel::Singlet).phi;
      const double delta = hmf_effect(hmf, gmf, k, r, BornState::Singlet, Channel::Singlet);
      table.records[i * rate_pairs.size() + p] = {
          {{"a_uT", as[i]}, {"k_per_s", k}, {"r_per_s", r}},
          {{"delta_percent", delta}, {"phi_hmf", phi_hmf}, {"phi_gmf", phi_gmf}}};
    }
  });
  return table;
}

SweepTable sweep_kr(const RadicalPairSpec& spec, const Grid1D& k_grid, const Grid1D& r_grid, BornState born,
                    Channel channel, const HmfContrast& contrast, const SweepOptions& options) {
  validate(spec);
  for (double k : k_grid.values()) validate(KineticParams{k, 0.0, 0.0});
  for (double r : r_grid.values()) validate(KineticParams{1.0, r, 0.0});

  const SingletSpectrum hmf = singlet_spectrum(spec, contrast.B_hmf_uT, options.constants);
  const SingletSpectrum gmf = singlet_spectrum(spec, contrast.B_gmf_uT, options.constants);

  const auto& ks = k_grid.values();
  const auto& rs = r_grid.values();
  SweepTable table;
  table.spec_hash = spec_hash(spec);
  table.labels = {{"born", born_label(born)}, {"channel", channel_label(channel)}};
  table.records.resize(ks.size() * rs.size());
  parallel_for(table.records.size(), options.workers, [&](std::size_t cell) {
    const double k = ks[cell / rs.size()];
    const double r = rs[cell % rs.size()];
    const double phi_hmf = yield_any(hmf, k, r, born, channel).phi;
    const double phi_gmf = yield_any(gmf, k, r, born, channel).phi;
    table.records[cell] = {{{"k_per_s", k}, {"r_per_s", r}},
                           {{"delta_percent", hmf_effect(hmf, gmf, k, r, born, channel)},
                            {"phi_hmf", phi_hmf},
                            {"phi_gmf", phi_gmf}}};
  });
  return table;
}

}  // namespace radpair
