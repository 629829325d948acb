#include "radpair/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "radpair/config.hpp"
#include "radpair/dynamics.hpp"
#include "radpair/eigensystem.hpp"
#include "radpair/errors.hpp"
#include "radpair/sweep.hpp"
#include "radpair/system.hpp"
#include "radpair/yields.hpp"

namespace radpair::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kCommands = {"eigen", "trace", "beats", "yield", "hmf",
                                            "sweep-b", "sweep-a", "sweep-kr", "check"};

constexpr double kOracleTolerance = 1e-6;

std::string usage() {
  return "usage: radpair <command> [options]\n"
         "\n"
         "commands:\n"
         "  eigen     energy levels overlapping the singlet state (CSV)\n"
         "  trace     singlet probability against time (CSV)\n"
         "  beats     beat spectrum of the singlet trace (CSV)\n"
         "  yield     one reaction yield (JSON)\n"
         "  hmf       hypomagnetic field effect (JSON)\n"
         "  sweep-b   yield against field (CSV/JSONL)\n"
         "  sweep-a   HMF effect against hyperfine constant (CSV/JSONL)\n"
         "  sweep-kr  HMF effect map over k and r (CSV/JSONL)\n"
         "  check     printed-matrix, closed-form eigenstate and oracle diagnostics (JSON)\n"
         "\n"
         "run 'radpair <command> --help' for options\n";
}

struct Flags {
  std::string config_path;
  std::vector<double> a_on_a;
  std::vector<double> a_on_b;
  std::string spin = "1/2";
  std::optional<double> field, k, r, b_hmf, b_gmf, gamma_e, duration;
  std::optional<std::size_t> samples;
  std::optional<int> zero_padding;
  std::optional<std::string> born, channel, out, format;
  std::optional<std::string> b_grid, a_grid, k_grid, r_grid;
  std::optional<unsigned> workers;
  bool nuclei_up = false;
  bool all_levels = false;
  std::size_t max_peaks = 50;
};

// "min:max:n[:spacing]", spacing log by default.
Grid1D parse_grid_flag(const std::string& axis, const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4)
    throw ValidationError(axis + " grid: expected min:max:n[:spacing] (got '" + text + "')");
  try {
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const long n = std::stol(parts[2]);
    if (n < 1) throw ValidationError(axis + " grid: n must be ≥ 1");
    const Spacing spacing = parts.size() == 4 ? parse_spacing(parts[3]) : Spacing::Log;
    if (spacing == Spacing::Explicit) throw ValidationError(axis + " grid: spacing must be linear or log");
    return spacing == Spacing::Log ? Grid1D::log(axis, lo, hi, static_cast<std::size_t>(n))
                                   : Grid1D::linear(axis, lo, hi, static_cast<std::size_t>(n));
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError(axis + " grid: cannot parse '" + text + "'");
  }
}

RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw ValidationError("cannot read config file " + f.config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    cfg = parse_config(buf.str());
  }
  std::vector<std::string> problems;
  if (!f.a_on_a.empty() || !f.a_on_b.empty()) {
    cfg.spec.nuclei.clear();
    try {
      const SpinQuantumNumber spin = SpinQuantumNumber::parse(f.spin);
      for (double a : f.a_on_a) cfg.spec.nuclei.push_back({spin, a, Electron::A});
      for (double a : f.a_on_b) cfg.spec.nuclei.push_back({spin, a, Electron::B});
    } catch (const ValidationError& e) {
      problems.push_back(std::string("--spin: ") + e.what());
    }
  }
  if (f.field) cfg.field_uT = *f.field;
  if (f.k) cfg.k_per_s = *f.k;
  if (f.r) cfg.r_per_s = *f.r;
  if (f.b_hmf) cfg.contrast.B_hmf_uT = *f.b_hmf;
  if (f.b_gmf) cfg.contrast.B_gmf_uT = *f.b_gmf;
  if (f.gamma_e) cfg.constants.gamma_e = *f.gamma_e;
  if (f.duration) cfg.trace.duration_s = *f.duration;
  if (f.samples) cfg.trace.samples = *f.samples;
  if (f.zero_padding) cfg.trace.zero_padding = *f.zero_padding;
  if (f.nuclei_up) cfg.trace.nuclei_up = true;
  if (f.workers) cfg.workers = *f.workers;
  if (f.out) cfg.output.path = *f.out;
  if (f.born) {
    if (*f.born == "S") cfg.born = BornState::Singlet;
    else if (*f.born == "T") cfg.born = BornState::Triplet;
    else problems.push_back("--born: must be S or T");
  }
  if (f.channel) {
    if (*f.channel == "S") cfg.channel = Channel::Singlet;
    else if (*f.channel == "T") cfg.channel = Channel::Triplet;
    else problems.push_back("--channel: must be S or T");
  }
  if (f.format) {
    if (*f.format == "csv") cfg.output.format = OutputFormat::Csv;
    else if (*f.format == "json") cfg.output.format = OutputFormat::Json;
    else if (*f.format == "jsonl") cfg.output.format = OutputFormat::JsonLines;
    else problems.push_back("--format: must be csv, json or jsonl");
  }
  auto grid = [&](const std::optional<std::string>& text, const char* axis, std::optional<Grid1D>& slot) {
    if (!text) return;
    try {
      slot = parse_grid_flag(axis, *text);
    } catch (const ValidationError& e) {
      problems.push_back(e.what());
    }
  };
  grid(f.b_grid, "B_uT", cfg.grids.field);
  grid(f.a_grid, "a_uT", cfg.grids.hyperfine);
  grid(f.k_grid, "k_per_s", cfg.grids.k);
  grid(f.r_grid, "r_per_s", cfg.grids.r);

  for (auto& p : validation_problems(cfg)) problems.push_back(std::move(p));
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return cfg;
}

json params_json(const RunConfig& cfg) {
  json nuclei = json::array();
  for (const auto& n : cfg.spec.nuclei)
    nuclei.push_back({{"spin", n.spin.to_string()}, {"a_iso_uT", n.a_iso_uT}, {"electron", to_string(n.attached_to)}});
  return {{"nuclei", nuclei},
          {"B_uT", cfg.field_uT},
          {"k_per_s", cfg.k_per_s},
          {"r_per_s", cfg.r_per_s},
          {"gamma_e_per_s_per_T", cfg.constants.gamma_e}};
}

// Rows of doubles with a fixed header, emitted in the configured format.
struct Rows {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void write(std::ostream& out, OutputFormat format) const {
    if (format == OutputFormat::Csv) {
      for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
      out << "\n";
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << "\n";
      }
      return;
    }
    const bool lines = format == OutputFormat::JsonLines;
    if (!lines) out << "[\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out << "{";
      for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << "\"" << header[i] << "\":"
            << (std::isfinite(rows[r][i]) ? format_double(rows[r][i]) : "null");
      out << "}" << (lines ? "\n" : (r + 1 < rows.size() ? ",\n" : "\n"));
    }
    if (!lines) out << "]\n";
  }
};

void write_table(const SweepTable& table, std::ostream& out, OutputFormat format) {
  if (format == OutputFormat::Json) throw ValidationError("sweep output format must be csv or jsonl");
  if (format == OutputFormat::Csv) table.write_csv(out);
  else table.write_jsonl(out);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// Runs `emit` against stdout or the configured file; files get a provenance
// sidecar so the data file itself stays byte-stable.
template <class Emit>
void emit_output(const RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out, Emit&& emit) {
  if (cfg.output.path == "-") {
    emit(out);
    return;
  }
  {
    std::ofstream file(cfg.output.path, std::ios::binary);
    if (!file) throw ValidationError("cannot open output file " + cfg.output.path);
    emit(file);
  }
  std::ofstream side(cfg.output.path + ".provenance.json", std::ios::binary);
  side << json{{"tool", kToolVersion},
               {"spec_hash", spec_hash(cfg.spec)},
               {"created_utc", utc_timestamp()},
               {"args", args}}
              .dump(2)
       << "\n";
}

int cmd_eigen(const RunConfig& cfg, const Flags& f, const std::vector<std::string>& args, std::ostream& out) {
  const Grid1D fields = f.field ? Grid1D("B_uT", {cfg.field_uT}, Spacing::Explicit)
                                : cfg.grids.field.value_or(default_field_grid());
  std::optional<NuclearConfig> nuclei;
  if (cfg.trace.nuclei_up) nuclei = nuclei_up(cfg.spec);
  Rows rows{{"B_uT", "level_index", "energy_uT", "overlap_weight"}, {}};
  for (double b : fields.values())
    for (const auto& level : singlet_overlap_levels(cfg.spec, b, nuclei, cfg.constants, f.all_levels))
      rows.rows.push_back({b, static_cast<double>(level.level_index), level.energy_uT, level.weight});
  emit_output(cfg, args, out, [&](std::ostream& o) { rows.write(o, cfg.output.format); });
  return kExitOk;
}

TimeTrace make_trace(const RunConfig& cfg) {
  TraceOptions options;
  options.constants = cfg.constants;
  if (cfg.trace.nuclei_up) options.nuclei = nuclei_up(cfg.spec);
  const std::vector<double> times = uniform_times(cfg.trace.duration_s, cfg.trace.samples);
  return singlet_probability_trace(cfg.spec, cfg.field_uT, RelaxationRate(cfg.r_per_s), times, options);
}

int cmd_trace(const RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out) {
  const TimeTrace trace = make_trace(cfg);
  Rows rows{{"t_s", "p_singlet"}, {}};
  for (std::size_t i = 0; i < trace.times.size(); ++i) rows.rows.push_back({trace.times[i], trace.probabilities[i]});
  emit_output(cfg, args, out, [&](std::ostream& o) { rows.write(o, cfg.output.format); });
  return kExitOk;
}

int cmd_beats(const RunConfig& cfg, const Flags& f, const std::vector<std::string>& args, std::ostream& out) {
  const auto peaks = beat_spectrum(make_trace(cfg), cfg.trace.zero_padding);
  Rows rows{{"freq_hz", "amplitude"}, {}};
  for (std::size_t i = 0; i < std::min(peaks.size(), f.max_peaks); ++i)
    rows.rows.push_back({peaks[i].frequency_hz, peaks[i].amplitude});
  emit_output(cfg, args, out, [&](std::ostream& o) { rows.write(o, cfg.output.format); });
  return kExitOk;
}

int cmd_yield(const RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out) {
  const YieldResult y =
      yield_any(cfg.spec, KineticParams{cfg.k_per_s, cfg.r_per_s, cfg.field_uT}, cfg.born, cfg.channel, cfg.constants);
  const json doc = {{"phi", y.phi}, {"born", to_string(y.born)}, {"channel", to_string(y.channel)}, {"params", params_json(cfg)}};
  emit_output(cfg, args, out, [&](std::ostream& o) { o << doc.dump() << "\n"; });
  return kExitOk;
}

int cmd_hmf(const RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out) {
  const SingletSpectrum hmf = singlet_spectrum(cfg.spec, cfg.contrast.B_hmf_uT, cfg.constants);
  const SingletSpectrum gmf = singlet_spectrum(cfg.spec, cfg.contrast.B_gmf_uT, cfg.constants);
  const double delta = hmf_effect(hmf, gmf, cfg.k_per_s, cfg.r_per_s, cfg.born, cfg.channel);
  json params = params_json(cfg);
  params.erase("B_uT");
  params["B_hmf_uT"] = cfg.contrast.B_hmf_uT;
  params["B_gmf_uT"] = cfg.contrast.B_gmf_uT;
  const json doc = {{"delta_percent", delta},
                    {"phi_hmf", yield_any(hmf, cfg.k_per_s, cfg.r_per_s, cfg.born, cfg.channel).phi},
                    {"phi_gmf", yield_any(gmf, cfg.k_per_s, cfg.r_per_s, cfg.born, cfg.channel).phi},
                    {"born", to_string(cfg.born)},
                    {"channel", to_string(cfg.channel)},
                    {"params", params}};
  emit_output(cfg, args, out, [&](std::ostream& o) { o << doc.dump() << "\n"; });
  return kExitOk;
}

int cmd_sweep(const std::string& command, const RunConfig& cfg, const Flags& f, const std::vector<std::string>& args,
              std::ostream& out) {
  const SweepOptions options{cfg.workers, cfg.constants};
  SweepTable table;
  if (command == "sweep-b") {
    table = sweep_field(cfg.spec, cfg.k_per_s, cfg.r_per_s, cfg.born, cfg.channel,
                        cfg.grids.field.value_or(default_field_grid()), options);
  } else if (command == "sweep-a") {
    RadicalPairSpec tmpl = cfg.spec;
    if (tmpl.nuclei.empty()) tmpl = spin_half_nuclei_on_a({1000.0});
    const auto pairs = (f.k || f.r) ? std::vector<std::pair<double, double>>{{cfg.k_per_s, cfg.r_per_s}}
                                    : default_rate_pairs();
    table = sweep_hyperfine(tmpl, pairs, cfg.grids.hyperfine.value_or(default_hyperfine_grid()), cfg.contrast, options);
  } else {
    table = sweep_kr(cfg.spec, cfg.grids.k.value_or(default_rate_grid("k_per_s")),
                     cfg.grids.r.value_or(default_rate_grid("r_per_s")), cfg.born, cfg.channel, cfg.contrast, options);
  }
  if (cfg.output.format == OutputFormat::Json) throw ValidationError("sweep output format must be csv or jsonl");
  emit_output(cfg, args, out, [&](std::ostream& o) { write_table(table, o, cfg.output.format); });
  return kExitOk;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

int cmd_check(const RunConfig& cfg, const std::vector<std::string>& args, std::ostream& out) {
  json doc;
  const bool one_proton = cfg.spec.nuclei.size() == 1 && cfg.spec.nuclei[0].spin == kSpinHalf &&
                          cfg.spec.nuclei[0].attached_to == Electron::A;
  if (one_proton) {
    const double a = cfg.spec.nuclei[0].a_iso_uT;
    const auto report = printed_matrix_diagnostic(a, cfg.field_uT);
    json mismatches = json::array();
    for (const auto& m : report.mismatches)
      mismatches.push_back({{"row", m.row}, {"col", m.col}, {"built_uT", m.built_uT}, {"printed_uT", m.printed_uT}});
    doc["printed_matrix"] = {{"a_uT", a}, {"B_uT", cfg.field_uT}, {"mismatches", mismatches}};
    json states = json::array();
    for (const auto& r : analytic_eigvec_residuals(a, cfg.field_uT))
      states.push_back({{"state", r.state},
                        {"norm", finite_or_null(r.norm)},
                        {"rayleigh_uT", finite_or_null(r.rayleigh_uT)},
                        {"residual_uT", finite_or_null(r.residual_uT)},
                        {"exact_subspace_weight", finite_or_null(r.exact_subspace_weight)}});
    doc["analytic_eigenstates"] = states;
  } else {
    doc["printed_matrix"] = nullptr;
    doc["analytic_eigenstates"] = nullptr;
  }

  const KineticParams params{cfg.k_per_s, cfg.r_per_s, cfg.field_uT};
  const SingletSpectrum spectrum = singlet_spectrum(cfg.spec, cfg.field_uT, cfg.constants);
  bool ok = true;
  json oracle = json::array();
  for (BornState born : {BornState::Singlet, BornState::Triplet}) {
    const double closed = born == BornState::Singlet ? singlet_born_singlet_yield(spectrum, cfg.k_per_s, cfg.r_per_s)
                                                     : triplet_born_singlet_yield(spectrum, cfg.k_per_s, cfg.r_per_s);
    const QuadratureResult q = yield_quadrature_oracle(cfg.spec, params, born, cfg.constants);
    const double diff = std::abs(closed - q.phi);
    ok = ok && diff < kOracleTolerance;
    oracle.push_back({{"born", to_string(born)},
                      {"closed_form", closed},
                      {"quadrature", q.phi},
                      {"abs_diff", diff},
                      {"steps", q.steps},
                      {"sampled", q.sampled},
                      {"within_tolerance", diff < kOracleTolerance}});
  }
  doc["oracle"] = {{"tolerance", kOracleTolerance}, {"params", params_json(cfg)}, {"results", oracle}};
  doc["ok"] = ok;
  emit_output(cfg, args, out, [&](std::ostream& o) { o << doc.dump(2) << "\n"; });
  return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << usage();
    return kExitUsage;
  }
  const std::string command = args.front();
  if (command == "--help" || command == "-h" || command == "help") {
    out << usage();
    return kExitOk;
  }
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    err << "unknown command '" << command << "'\n" << usage();
    return kExitUsage;
  }

  Flags f;
  CLI::App app("radpair " + command, "radpair " + command);
  app.add_option("--config", f.config_path, "JSON config file");
  app.add_option("--a", f.a_on_a, "hyperfine constants (µT) of nuclei on electron A")->delimiter(',');
  app.add_option("--a-b", f.a_on_b, "hyperfine constants (µT) of nuclei on electron B")->delimiter(',');
  app.add_option("--spin", f.spin, "nuclear spin for --a/--a-b (1/2, 1, 3/2)");
  app.add_option("--B", f.field, "magnetic field (µT)");
  app.add_option("--k", f.k, "reaction rate (s^-1)");
  app.add_option("--r", f.r, "relaxation rate (s^-1)");
  app.add_option("--born", f.born, "initial state S or T");
  app.add_option("--channel", f.channel, "yield channel S or T");
  app.add_option("--b-hmf", f.b_hmf, "hypomagnetic field (µT)");
  app.add_option("--b-gmf", f.b_gmf, "geomagnetic field (µT)");
  app.add_option("--gamma-e", f.gamma_e, "electron magnetogyric ratio (s^-1 T^-1)");
  app.add_option("--duration", f.duration, "trace duration (s)");
  app.add_option("--samples", f.samples, "trace samples");
  app.add_option("--zero-padding", f.zero_padding, "FFT zero-padding factor");
  app.add_flag("--nuclei-up", f.nuclei_up, "start from the singlet with every nucleus in m = +I");
  app.add_flag("--all-levels", f.all_levels, "eigen: include levels with zero overlap");
  app.add_option("--max-peaks", f.max_peaks, "beats: number of peaks to print");
  app.add_option("--B-grid", f.b_grid, "field grid min:max:n[:spacing]");
  app.add_option("--a-grid", f.a_grid, "hyperfine grid min:max:n[:spacing]");
  app.add_option("--k-grid", f.k_grid, "k grid min:max:n[:spacing]");
  app.add_option("--r-grid", f.r_grid, "r grid min:max:n[:spacing]");
  app.add_option("--workers", f.workers, "worker threads (default RADPAIR_WORKERS or all cores)");
  app.add_option("--out", f.out, "output path, - for stdout");
  app.add_option("--format", f.format, "csv, json or jsonl");

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitValidation;
  }

  try {
    const RunConfig cfg = build_config(f);
    if (command == "eigen") return cmd_eigen(cfg, f, args, out);
    if (command == "trace") return cmd_trace(cfg, args, out);
    if (command == "beats") return cmd_beats(cfg, f, args, out);
    if (command == "yield") return cmd_yield(cfg, args, out);
    if (command == "hmf") return cmd_hmf(cfg, args, out);
    if (command == "check") return cmd_check(cfg, args, out);
    return cmd_sweep(command, cfg, f, args, out);
  } catch (const ValidationError& e) {
    if (e.problems().empty()) err << "error: " << e.what() << "\n";
    for (const auto& p : e.problems()) err << "error: " << p << "\n";
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace radpair::cli
