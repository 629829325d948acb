#include "radpair/config.hpp"

#include <cmath>
#include <optional>

#include <json.hpp>

namespace radpair {

using nlohmann::json;

std::string to_string(BornState born) { return born == BornState::Singlet ? "S" : "T"; }
std::string to_string(Channel channel) { return channel == Channel::Singlet ? "S" : "T"; }
std::string to_string(Electron electron) { return electron == Electron::A ? "A" : "B"; }
std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::JsonLines: return "jsonl";
  }
  return "csv";
}

namespace {

struct Key {
  std::string name;
  std::string stem;  // name without its unit suffix; empty when unitless
};

class Reader {
 public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& message) { errors.push_back(path + ": " + message); }

  // Reports unknown keys, flagging a wrong unit suffix on a known quantity.
  bool check_object(const json& j, const std::string& path, const std::vector<Key>& keys) {
    if (!j.is_object()) {
      fail(path, "expected an object");
      return false;
    }
    for (const auto& [name, _] : j.items()) {
      bool known = false;
      for (const auto& k : keys) known = known || k.name == name;
      if (known) continue;
      const Key* suffix_of = nullptr;
      for (const auto& k : keys)
        if (!k.stem.empty() && (name == k.stem || name.rfind(k.stem + "_", 0) == 0)) suffix_of = &k;
      if (suffix_of)
        fail(join(path, name), "unit suffix mismatch, expected '" + suffix_of->name + "'");
      else
        fail(join(path, name), "unknown key");
    }
    return true;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  std::optional<double> number(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) return std::nullopt;
    const json& v = j.at(key);
    if (!v.is_number()) {
      fail(join(path, key), "expected a number");
      return std::nullopt;
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
      fail(join(path, key), "must be finite");
      return std::nullopt;
    }
    return d;
  }

  std::optional<std::uint64_t> count(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) return std::nullopt;
    const json& v = j.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
      fail(join(path, key), "expected a non-negative integer");
      return std::nullopt;
    }
    return v.get<std::uint64_t>();
  }

  std::optional<std::string> text(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) return std::nullopt;
    const json& v = j.at(key);
    if (!v.is_string()) {
      fail(join(path, key), "expected a string");
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  std::optional<bool> flag(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) return std::nullopt;
    const json& v = j.at(key);
    if (!v.is_boolean()) {
      fail(join(path, key), "expected true or false");
      return std::nullopt;
    }
    return v.get<bool>();
  }

  std::optional<Grid1D> grid(const json& j, const std::string& axis, const std::string& path) {
    if (!check_object(j, path, {{"values", ""}, {"min", ""}, {"max", ""}, {"n", ""}, {"spacing", ""}, {"include_zero", ""}}))
      return std::nullopt;
    try {
      const auto spacing_text = text(j, "spacing", path);
      const bool include_zero = flag(j, "include_zero", path).value_or(false);
      std::optional<Grid1D> g;
      if (j.contains("values")) {
        if (j.contains("min") || j.contains("max") || j.contains("n")) {
          fail(path, "give either values or min/max/n, not both");
          return std::nullopt;
        }
        std::vector<double> values;
        if (!j.at("values").is_array()) {
          fail(join(path, "values"), "expected an array of numbers");
          return std::nullopt;
        }
        for (const auto& v : j.at("values")) {
          if (!v.is_number()) {
            fail(join(path, "values"), "expected an array of numbers");
            return std::nullopt;
          }
          values.push_back(v.get<double>());
        }
        g = Grid1D(axis, std::move(values), parse_spacing(spacing_text.value_or("explicit")));
      } else {
        const auto lo = number(j, "min", path);
        const auto hi = number(j, "max", path);
        const auto n = count(j, "n", path);
        if (!lo || !hi || !n) {
          fail(path, "needs values or min, max and n");
          return std::nullopt;
        }
        const Spacing spacing = parse_spacing(spacing_text.value_or("log"));
        if (spacing == Spacing::Explicit) {
          fail(join(path, "spacing"), "explicit spacing needs a values list");
          return std::nullopt;
        }
        g = spacing == Spacing::Log ? Grid1D::log(axis, *lo, *hi, *n) : Grid1D::linear(axis, *lo, *hi, *n);
      }
      if (include_zero) {
        std::vector<double> values = {0.0};
        values.insert(values.end(), g->values().begin(), g->values().end());
        g = Grid1D(axis, std::move(values), Spacing::Explicit);
      }
      return g;
    } catch (const ValidationError& e) {
      fail(path, e.what());
      return std::nullopt;
    }
  }
};

json grid_to_json(const Grid1D& g) { return {{"spacing", to_string(g.spacing())}, {"values", g.values()}}; }

std::optional<BornState> parse_born(const std::string& s) {
  if (s == "S" || s == "singlet") return BornState::Singlet;
  if (s == "T" || s == "triplet") return BornState::Triplet;
  return std::nullopt;
}

std::optional<Channel> parse_channel(const std::string& s) {
  if (s == "S" || s == "singlet") return Channel::Singlet;
  if (s == "T" || s == "triplet") return Channel::Triplet;
  return std::nullopt;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("config: malformed JSON: ") + e.what()});
  }

  Reader rd;
  RunConfig cfg;
  if (!rd.check_object(root, "config",
                       {{"nuclei", ""}, {"constants", ""}, {"max_hilbert_dim", ""}, {"field_uT", "field"},
                        {"kinetics", ""}, {"contrast", ""}, {"born", ""}, {"channel", ""}, {"grids", ""},
                        {"trace", ""}, {"output", ""}, {"workers", ""}}))
    throw ConfigError(rd.errors);

  if (root.contains("nuclei")) {
    const json& nuclei = root.at("nuclei");
    if (!nuclei.is_array()) {
      rd.fail("nuclei", "expected an array");
    } else {
      for (std::size_t i = 0; i < nuclei.size(); ++i) {
        const std::string path = "nuclei[" + std::to_string(i) + "]";
        const json& n = nuclei[i];
        if (!rd.check_object(n, path, {{"spin", ""}, {"a_iso_uT", "a_iso"}, {"electron", ""}})) continue;
        NucleusSpec nucleus;
        bool ok = true;
        if (!n.contains("spin")) {
          rd.fail(path + ".spin", "required");
          ok = false;
        } else {
          try {
            const json& s = n.at("spin");
            if (s.is_string())
              nucleus.spin = SpinQuantumNumber::parse(s.get<std::string>());
            else if (s.is_number())
              nucleus.spin = SpinQuantumNumber::parse(format_double(s.get<double>()));
            else
              throw ValidationError("expected a spin such as \"1/2\"");
          } catch (const ValidationError& e) {
            rd.fail(path + ".spin", e.what());
            ok = false;
          }
        }
        if (auto a = rd.number(n, "a_iso_uT", path)) nucleus.a_iso_uT = *a;
        else if (!n.contains("a_iso_uT")) {
          rd.fail(path + ".a_iso_uT", "required");
          ok = false;
        }
        if (auto e = rd.text(n, "electron", path)) {
          if (*e == "A") nucleus.attached_to = Electron::A;
          else if (*e == "B") nucleus.attached_to = Electron::B;
          else rd.fail(path + ".electron", "must be \"A\" or \"B\"");
        }
        if (ok) cfg.spec.nuclei.push_back(nucleus);
      }
    }
  }

  if (root.contains("constants") && rd.check_object(root.at("constants"), "constants", {{"gamma_e_per_s_per_T", "gamma_e"}}))
    if (auto g = rd.number(root.at("constants"), "gamma_e_per_s_per_T", "constants")) cfg.constants.gamma_e = *g;
  if (auto d = rd.count(root, "max_hilbert_dim", "")) cfg.max_hilbert_dim = *d;
  if (auto b = rd.number(root, "field_uT", "")) cfg.field_uT = *b;
  if (root.contains("kinetics") && rd.check_object(root.at("kinetics"), "kinetics", {{"k_per_s", "k"}, {"r_per_s", "r"}})) {
    if (auto k = rd.number(root.at("kinetics"), "k_per_s", "kinetics")) cfg.k_per_s = *k;
    if (auto r = rd.number(root.at("kinetics"), "r_per_s", "kinetics")) cfg.r_per_s = *r;
  }
  if (root.contains("contrast") &&
      rd.check_object(root.at("contrast"), "contrast", {{"B_hmf_uT", "B_hmf"}, {"B_gmf_uT", "B_gmf"}})) {
    if (auto b = rd.number(root.at("contrast"), "B_hmf_uT", "contrast")) cfg.contrast.B_hmf_uT = *b;
    if (auto b = rd.number(root.at("contrast"), "B_gmf_uT", "contrast")) cfg.contrast.B_gmf_uT = *b;
  }
  if (auto s = rd.text(root, "born", "")) {
    if (auto b = parse_born(*s)) cfg.born = *b;
    else rd.fail("born", "must be \"S\" or \"T\"");
  }
  if (auto s = rd.text(root, "channel", "")) {
    if (auto c = parse_channel(*s)) cfg.channel = *c;
    else rd.fail("channel", "must be \"S\" or \"T\"");
  }
  if (root.contains("grids") &&
      rd.check_object(root.at("grids"), "grids", {{"B_uT", "B"}, {"a_uT", "a"}, {"k_per_s", "k"}, {"r_per_s", "r"}})) {
    const json& g = root.at("grids");
    if (g.contains("B_uT")) cfg.grids.field = rd.grid(g.at("B_uT"), "B_uT", "grids.B_uT");
    if (g.contains("a_uT")) cfg.grids.hyperfine = rd.grid(g.at("a_uT"), "a_uT", "grids.a_uT");
    if (g.contains("k_per_s")) cfg.grids.k = rd.grid(g.at("k_per_s"), "k_per_s", "grids.k_per_s");
    if (g.contains("r_per_s")) cfg.grids.r = rd.grid(g.at("r_per_s"), "r_per_s", "grids.r_per_s");
  }
  if (root.contains("trace") &&
      rd.check_object(root.at("trace"), "trace",
                      {{"duration_s", "duration"}, {"samples", ""}, {"nuclei_up", ""}, {"zero_padding", ""}})) {
    const json& t = root.at("trace");
    if (auto d = rd.number(t, "duration_s", "trace")) cfg.trace.duration_s = *d;
    if (auto n = rd.count(t, "samples", "trace")) cfg.trace.samples = *n;
    if (auto u = rd.flag(t, "nuclei_up", "trace")) cfg.trace.nuclei_up = *u;
    if (auto z = rd.count(t, "zero_padding", "trace")) cfg.trace.zero_padding = static_cast<int>(*z);
  }
  if (root.contains("output") && rd.check_object(root.at("output"), "output", {{"path", ""}, {"format", ""}})) {
    const json& o = root.at("output");
    if (auto p = rd.text(o, "path", "output")) cfg.output.path = *p;
    if (auto f = rd.text(o, "format", "output")) {
      if (*f == "csv") cfg.output.format = OutputFormat::Csv;
      else if (*f == "json") cfg.output.format = OutputFormat::Json;
      else if (*f == "jsonl") cfg.output.format = OutputFormat::JsonLines;
      else rd.fail("output.format", "must be csv, json or jsonl");
    }
  }
  if (auto w = rd.count(root, "workers", "")) cfg.workers = static_cast<unsigned>(*w);

  for (auto& p : validation_problems(cfg)) rd.errors.push_back(std::move(p));
  if (!rd.errors.empty()) throw ConfigError(rd.errors);
  return cfg;
}

std::vector<std::string> validation_problems(const RunConfig& cfg) {
  std::vector<std::string> problems;
  if (cfg.max_hilbert_dim < 4) problems.push_back("max_hilbert_dim: must be ≥ 4");
  for (auto& p : validation_problems(cfg.spec, cfg.max_hilbert_dim)) problems.push_back(std::move(p));
  if (!(cfg.constants.gamma_e > 0.0)) problems.push_back("constants.gamma_e_per_s_per_T: must be > 0");
  if (!(cfg.field_uT >= 0.0)) problems.push_back("field_uT: must be ≥ 0");
  for (auto& p : validation_problems(KineticParams{cfg.k_per_s, cfg.r_per_s, 0.0}))
    problems.push_back("kinetics." + p);
  if (!(cfg.contrast.B_hmf_uT >= 0.0)) problems.push_back("contrast.B_hmf_uT: must be ≥ 0");
  if (!(cfg.contrast.B_gmf_uT >= 0.0)) problems.push_back("contrast.B_gmf_uT: must be ≥ 0");
  if (cfg.grids.field && cfg.grids.field->values().front() < 0.0) problems.push_back("grids.B_uT: fields must be ≥ 0");
  if (cfg.grids.k && !(cfg.grids.k->values().front() > 0.0)) problems.push_back("grids.k_per_s: rates must be > 0");
  if (cfg.grids.r && cfg.grids.r->values().front() < 0.0) problems.push_back("grids.r_per_s: rates must be ≥ 0");
  if (!(cfg.trace.duration_s > 0.0)) problems.push_back("trace.duration_s: must be > 0");
  if (cfg.trace.samples < 2) problems.push_back("trace.samples: must be ≥ 2");
  if (cfg.trace.zero_padding < 1) problems.push_back("trace.zero_padding: must be ≥ 1");
  if (cfg.output.path.empty()) problems.push_back("output.path: must not be empty");
  return problems;
}

std::string serialize_config(const RunConfig& cfg) {
  json nuclei = json::array();
  for (const auto& n : cfg.spec.nuclei)
    nuclei.push_back({{"spin", n.spin.to_string()}, {"a_iso_uT", n.a_iso_uT}, {"electron", to_string(n.attached_to)}});
  json grids = json::object();
  if (cfg.grids.field) grids["B_uT"] = grid_to_json(*cfg.grids.field);
  if (cfg.grids.hyperfine) grids["a_uT"] = grid_to_json(*cfg.grids.hyperfine);
  if (cfg.grids.k) grids["k_per_s"] = grid_to_json(*cfg.grids.k);
  if (cfg.grids.r) grids["r_per_s"] = grid_to_json(*cfg.grids.r);
  const json root = {
      {"nuclei", nuclei},
      {"constants", {{"gamma_e_per_s_per_T", cfg.constants.gamma_e}}},
      {"max_hilbert_dim", cfg.max_hilbert_dim},
      {"field_uT", cfg.field_uT},
      {"kinetics", {{"k_per_s", cfg.k_per_s}, {"r_per_s", cfg.r_per_s}}},
      {"contrast", {{"B_hmf_uT", cfg.contrast.B_hmf_uT}, {"B_gmf_uT", cfg.contrast.B_gmf_uT}}},
      {"born", to_string(cfg.born)},
      {"channel", to_string(cfg.channel)},
      {"grids", grids},
      {"trace",
       {{"duration_s", cfg.trace.duration_s},
        {"samples", cfg.trace.samples},
        {"nuclei_up", cfg.trace.nuclei_up},
        {"zero_padding", cfg.trace.zero_padding}}},
      {"output", {{"path", cfg.output.path}, {"format", to_string(cfg.output.format)}}},
      {"workers", cfg.workers},
  };
  return root.dump(2) + "\n";
}

}  // namespace radpair
