#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <variant>

#include "binbell/binning.hpp"
#include "binbell/bw.hpp"
#include "binbell/certify.hpp"
#include "binbell/cv.hpp"
#include "binbell/lr_polytope.hpp"
#include "binbell/phase_optimizer.hpp"

namespace binbell::cli {
namespace {

constexpr int kDefaultQuditGuard = 64;
constexpr double kCvAgreement = 1e-10;
constexpr double kRoundTrip = 1e-9;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { kAuto, kCsv, kJson };

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Render a single row as a JSON object instead of an array.
  bool single_object = false;
};

std::string render_cell(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) return format_double(v);
        else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
        else if constexpr (std::is_same_v<T, std::string>) return v;
        else return std::to_string(v);
      },
      cell);
}

nlohmann::ordered_json json_cell(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, cell);
}

std::string render(const Table& table, Format format) {
  std::ostringstream os;
  if (format == Format::kCsv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << render_cell(row[i]);
      os << '\n';
    }
    return os.str();
  }
  auto object = [&](const std::vector<Cell>& row) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
    return obj;
  };
  nlohmann::ordered_json doc;
  if (table.single_object && table.rows.size() == 1) {
    doc = object(table.rows.front());
  } else {
    doc = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) doc.push_back(object(row));
  }
  return doc.dump(2) + "\n";
}

Format parse_format(const std::string& name) {
  if (name == "auto") return Format::kAuto;
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw UsageError("unknown format '" + name + "' (expected csv or json)");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream is(text);
  while (std::getline(is, current, sep)) parts.push_back(current);
  return parts;
}

template <typename T>
T parse_number(const std::string& token) {
  T value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || token.empty()) {
    throw UsageError("cannot parse '" + token + "' as a number");
  }
  return value;
}

/// Comma-separated outcome list, a preset name, or "" / "none" for empty.
std::vector<int> parse_subset(const std::string& text, int d) {
  if (text.empty() || text == "none") return {};
  try {
    const Preset preset = parse_preset(text);
    return preset_binning(preset, d).subset(BinningSpec::kR1);
  } catch (const std::invalid_argument&) {
  }
  std::vector<int> out;
  for (const auto& token : split(text, ',')) {
    try {
      out.push_back(parse_number<int>(token));
    } catch (const UsageError&) {
      throw UsageError("subset token '" + token + "' is neither an outcome index nor a preset");
    }
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& token : split(text, ',')) out.push_back(parse_number<double>(token));
  if (out.empty()) throw UsageError("empty value list");
  return out;
}

struct GlobalOptions {
  std::string out_path;
  std::string format = "auto";
  std::uint64_t seed = 42;
  int guard_d = 0;
};

struct Emitter {
  const GlobalOptions& global;
  std::ostream& out;

  void emit(const Table& table, Format fallback) const {
    Format format = parse_format(global.format);
    if (format == Format::kAuto) format = fallback;
    const std::string text = render(table, format);
    if (global.out_path.empty() || global.out_path == "-") {
      out << text;
      out.flush();
      return;
    }
    std::ofstream file(global.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + global.out_path + "'");
    file << text;
    if (!file) throw UsageError("failed writing output file '" + global.out_path + "'");
  }
};

// --- scan-qudit -------------------------------------------------------------

struct ScanQuditArgs {
  std::string binning;
  int dmin = 2;
  int dmax = 16;
  int grid = PhaseOptimizerOptions{}.grid_points;
  int restarts = PhaseOptimizerOptions{}.random_restarts;
  double window = 0.0;
  std::string trace_path;
};

int cmd_scan_qudit(const ScanQuditArgs& args, const GlobalOptions& global, const Emitter& emitter,
                   std::ostream& err) {
  const Preset preset = parse_preset(args.binning);
  const int guard = global.guard_d > 0 ? global.guard_d : kDefaultQuditGuard;
  if (args.dmin < 2 || args.dmin > args.dmax || args.dmax > guard) {
    throw UsageError("need 2 <= dmin <= dmax <= guard (" + std::to_string(guard) + ")");
  }
  PhaseOptimizerOptions options;
  options.grid_points = args.grid;
  options.random_restarts = args.restarts;
  options.window = args.window;
  options.seed = global.seed;

  Table table{{"d", "binning", "value", "alpha1", "alpha2", "beta1", "beta2"}, {}};
  Table trace{{"d", "iteration", "alpha1", "alpha2", "beta1", "beta2", "value"}, {}};
  for (int d = args.dmin; d <= args.dmax; ++d) {
    std::optional<BinningSpec> spec;
    try {
      spec.emplace(preset_binning(preset, d));
    } catch (const std::invalid_argument& e) {
      err << "note: skipping d=" << d << ": " << e.what() << "\n";
      continue;
    }
    TraceSink sink;
    if (!args.trace_path.empty()) {
      sink = [&trace, d](const TraceRecord& rec) {
        trace.rows.push_back({std::int64_t{d}, std::int64_t{rec.iteration}, rec.phases.alpha1,
                              rec.phases.alpha2, rec.phases.beta1, rec.phases.beta2, rec.value});
      };
    }
    const auto result = optimize_phases(*spec, options, sink);
    table.rows.push_back({std::int64_t{d}, std::string(preset_name(preset)), result.value,
                          result.phases.alpha1, result.phases.alpha2, result.phases.beta1,
                          result.phases.beta2});
  }
  emitter.emit(table, Format::kCsv);
  if (!args.trace_path.empty()) {
    GlobalOptions trace_global = global;
    trace_global.out_path = args.trace_path;
    Emitter{trace_global, emitter.out}.emit(trace, Format::kCsv);
  }
  return kSuccess;
}

// --- tightness --------------------------------------------------------------

struct TightnessArgs {
  int d = 0;
  std::string preset;
  std::optional<std::string> r1, r2, s1, s2;
};

Table tightness_table(const TightnessReport& report) {
  Table table{{"lr_max", "m_counted", "m_formula", "threshold", "linear_rank", "affine_rank",
               "is_tight_by_count"}, {}};
  table.rows.push_back({report.lr_max, report.m_counted, report.m_formula, report.threshold,
                        report.linear_rank, report.affine_rank, report.is_tight_by_count});
  table.single_object = true;
  return table;
}

int cmd_tightness(const TightnessArgs& args, const GlobalOptions& global, const Emitter& emitter) {
  if (args.d < 2) throw UsageError("--d must be at least 2");
  std::optional<BinningSpec> spec;
  const bool any_subset = args.r1 || args.r2 || args.s1 || args.s2;
  if (!args.preset.empty()) {
    if (any_subset) throw UsageError("--preset cannot be combined with explicit subsets");
    spec.emplace(preset_binning(parse_preset(args.preset), args.d));
  } else {
    if (!(args.r1 && args.r2 && args.s1 && args.s2)) {
      throw UsageError("give --preset or all of --r1 --r2 --s1 --s2");
    }
    spec.emplace(args.d, parse_subset(*args.r1, args.d), parse_subset(*args.r2, args.d),
                 parse_subset(*args.s1, args.d), parse_subset(*args.s2, args.d));
  }
  EnumerationLimits limits;
  if (global.guard_d > 0) limits.max_d = global.guard_d;
  emitter.emit(tightness_table(tightness_certificate(*spec, limits)), Format::kJson);
  return kSuccess;
}

// --- scan-cv ----------------------------------------------------------------

struct ScanCvArgs {
  int s = 1;
  double rmin = 0.1;
  double rmax = 5.0;
  int steps = 50;
};

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out;
  if (steps == 1) return {lo};
  for (int i = 0; i < steps; ++i) out.push_back(lo + (hi - lo) * i / (steps - 1));
  return out;
}

int cmd_scan_cv(const ScanCvArgs& args, const Emitter& emitter, std::ostream& err) {
  if (args.s < 1 || args.s % 2 == 0) throw UsageError("--s must be a positive odd cutoff");
  if (!(args.rmin > 0.0) || args.rmax < args.rmin || args.steps < 1) {
    throw UsageError("need 0 < rmin <= rmax and steps >= 1");
  }
  if (auto warning = cv::angle_resolution_warning(args.s)) err << "warning: " << *warning << "\n";
  Table table{{"s", "r", "value", "contraction_value"}, {}};
  double worst = 0.0;
  for (double r : linspace(args.rmin, args.rmax, args.steps)) {
    const double closed = cv::closed_form_bell_value(args.s, r);
    const double contracted =
        cv::cv_bell_expectation(cv::CvScenario::with_reference_angles(args.s, r));
    worst = std::max(worst, std::abs(closed - contracted));
    table.rows.push_back({std::int64_t{args.s}, r, closed, contracted});
  }
  emitter.emit(table, Format::kCsv);
  if (worst > kCvAgreement) {
    err << "error: closed form and contraction differ by " << worst << "\n";
    return kCheckFailed;
  }
  return kSuccess;
}

// --- threshold --------------------------------------------------------------

struct ThresholdArgs {
  int smin = 1;
  int smax = 99;
  std::string deltas = "0.01,0.001,0.0001";
};

int cmd_threshold(const ThresholdArgs& args, const Emitter& emitter, std::ostream& err) {
  const auto deltas = parse_double_list(args.deltas);
  for (double delta : deltas) {
    if (!(delta > 0.0 && delta < cv::max_violation_deficit())) {
      throw UsageError("delta " + format_double(delta) + " outside (0, 2*sqrt(2)-2)");
    }
  }
  if (args.smin < 1 || args.smax < args.smin) throw UsageError("need 1 <= smin <= smax");
  const double bound = 2.0 * std::numbers::sqrt2;
  Table table{{"s", "curve", "delta", "f_value", "r_min", "value_at_r_min", "roundtrip_error"}, {}};
  double worst = 0.0;
  const int first = args.smin % 2 == 1 ? args.smin : args.smin + 1;
  for (int s = first; s <= args.smax; s += 2) {
    for (double delta : deltas) {
      const auto th = cv::squeezing_threshold(s, delta);
      const double value = cv::closed_form_bell_value(s, th.r_min);
      const double error = std::abs(value - (bound - delta));
      worst = std::max(worst, error);
      table.rows.push_back({std::int64_t{s}, std::string("delta"), delta, th.f_value, th.r_min,
                            value, error});
    }
    const double onset = cv::violation_onset(s);
    const double value = cv::closed_form_bell_value(s, onset);
    const double error = std::abs(value - 2.0);
    worst = std::max(worst, error);
    const double f = std::tanh(onset);
    table.rows.push_back({std::int64_t{s}, std::string("onset"), cv::max_violation_deficit(), f,
                          onset, value, error});
  }
  emitter.emit(table, Format::kCsv);
  if (worst > kRoundTrip) {
    err << "error: threshold round trip off by " << worst << "\n";
    return kCheckFailed;
  }
  return kSuccess;
}

// --- certify ----------------------------------------------------------------

struct CertifyArgs {
  int trials = 100;
  bool mutate_e22 = false;
};

int cmd_certify(const CertifyArgs& args, const GlobalOptions& global, const Emitter& emitter,
                std::ostream& err) {
  if (args.trials < 0) throw UsageError("--trials must be non-negative");
  if (args.trials == 0) err << "warning: --trials 0 runs no checks; passing vacuously\n";
  certify::CertifyOptions options;
  options.seed = global.seed;
  options.trials = args.trials;
  options.mutate_e22 = args.mutate_e22;
  const auto outcomes = certify::run_property_suites(options);

  Table table{{"property", "status", "trials", "failures", "worst", "counterexample"}, {}};
  bool all = true;
  for (const auto& o : outcomes) {
    all = all && o.passed();
    table.rows.push_back({o.name, std::string(o.passed() ? "pass" : "fail"),
                          std::int64_t{o.trials}, std::int64_t{o.failures}, o.worst,
                          o.counterexample});
    if (!o.passed()) err << "FAIL " << o.name << ": " << o.counterexample << "\n";
  }
  emitter.emit(table, Format::kCsv);
  return all ? kSuccess : kCheckFailed;
}

// --- scan-bw ----------------------------------------------------------------

struct ScanBwArgs {
  double rmin = 0.0;
  double rmax = 2.0;
  int steps = 9;
  bool complex = false;
};

int cmd_scan_bw(const ScanBwArgs& args, const GlobalOptions& global, const Emitter& emitter) {
  if (args.rmin < 0.0 || args.rmax < args.rmin || args.steps < 1) {
    throw UsageError("need 0 <= rmin <= rmax and steps >= 1");
  }
  bw::BwSearchOptions options;
  options.complex_displacements = args.complex;
  options.seed = global.seed;
  const auto scan = bw::bw_scan(linspace(args.rmin, args.rmax, args.steps), options);
  Table table{{"r", "fock_cutoff", "value", "max_sampled", "alpha1_re", "alpha1_im", "alpha2_re",
               "alpha2_im", "beta1_re", "beta1_im", "beta2_re", "beta2_im"}, {}};
  for (const auto& res : scan.per_r) {
    const auto& s = res.settings;
    table.rows.push_back({res.r, std::int64_t{bw::required_fock_cutoff(res.r)}, res.value,
                          res.max_sampled, s.alpha1.real(), s.alpha1.imag(), s.alpha2.real(),
                          s.alpha2.imag(), s.beta1.real(), s.beta1.imag(), s.beta2.real(),
                          s.beta2.imag()});
  }
  emitter.emit(table, Format::kCsv);
  return kSuccess;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binned Bell inequalities: tightness, qudit and continuous-variable violations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Defaults file with key=value lines (flags take precedence)");

  GlobalOptions global;
  app.add_option("--out", global.out_path, "Output path (default: standard output)");
  app.add_option("--format", global.format, "Output format: csv or json")
      ->check(CLI::IsMember({"auto", "csv", "json"}));
  app.add_option("--seed", global.seed, "Seed for randomized searches and property checks");
  app.add_option("--guard-d", global.guard_d, "Raise the dimension limit for enumeration/scans");

  ScanQuditArgs scan_qudit;
  auto* sq = app.add_subcommand("scan-qudit", "Phase-optimized Bell value of a binning preset per d");
  sq->add_option("--binning", scan_qudit.binning, "t1, t2 or t3")->required();
  sq->add_option("--dmin", scan_qudit.dmin, "Smallest dimension");
  sq->add_option("--dmax", scan_qudit.dmax, "Largest dimension");
  sq->add_option("--grid", scan_qudit.grid, "Grid points per phase axis");
  sq->add_option("--restarts", scan_qudit.restarts, "Random restarts of the local refinement");
  sq->add_option("--window", scan_qudit.window, "Phase window width (0: binning period)");
  sq->add_option("--trace", scan_qudit.trace_path, "Write optimizer improvement trace CSV");

  TightnessArgs tight;
  auto* tc = app.add_subcommand("tightness", "Local bound, maximizer count and exact ranks");
  tc->add_option("--d", tight.d, "Outcome dimension")->required();
  tc->add_option("--preset", tight.preset, "t1, t2 or t3 for all four subsets");
  tc->add_option("--r1", tight.r1, "Outcomes of R1 (comma list, preset name, or none)");
  tc->add_option("--r2", tight.r2, "Outcomes of R2");
  tc->add_option("--s1", tight.s1, "Outcomes of S1");
  tc->add_option("--s2", tight.s2, "Outcomes of S2");

  ScanCvArgs scan_cv;
  auto* cvc = app.add_subcommand("scan-cv", "Phase-parity Bell value of a truncated TMSS over r");
  cvc->add_option("--s", scan_cv.s, "Odd cutoff")->required();
  cvc->add_option("--rmin", scan_cv.rmin, "Smallest squeezing");
  cvc->add_option("--rmax", scan_cv.rmax, "Largest squeezing");
  cvc->add_option("--steps", scan_cv.steps, "Number of r points");

  ThresholdArgs threshold;
  auto* th = app.add_subcommand("threshold", "Squeezing needed for a value of 2*sqrt(2)-delta");
  th->add_option("--smin", threshold.smin, "Smallest cutoff");
  th->add_option("--smax", threshold.smax, "Largest cutoff");
  th->add_option("--delta", threshold.deltas, "Comma-separated deficits");

  CertifyArgs cert;
  auto* ce = app.add_subcommand("certify", "Randomized property checks of all modules");
  ce->add_option("--trials", cert.trials, "Draws per property");
  ce->add_flag("--mutate-e22", cert.mutate_e22,
               "Flip the sign convention of eps_22 (the checks should then fail)");

  ScanBwArgs scan_bw;
  auto* bwc = app.add_subcommand("scan-bw", "Displaced-parity Bell value of the TMSS over r");
  bwc->add_option("--rmin", scan_bw.rmin, "Smallest squeezing");
  bwc->add_option("--rmax", scan_bw.rmax, "Largest squeezing");
  bwc->add_option("--steps", scan_bw.steps, "Number of r points");
  bwc->add_flag("--complex", scan_bw.complex, "Search complex displacements");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  const Emitter emitter{global, out};
  try {
    if (*sq) return cmd_scan_qudit(scan_qudit, global, emitter, err);
    if (*tc) return cmd_tightness(tight, global, emitter);
    if (*cvc) return cmd_scan_cv(scan_cv, emitter, err);
    if (*th) return cmd_threshold(threshold, emitter, err);
    if (*ce) return cmd_certify(cert, global, emitter, err);
    if (*bwc) return cmd_scan_bw(scan_bw, global, emitter);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const EnumerationLimitError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace binbell::cli
