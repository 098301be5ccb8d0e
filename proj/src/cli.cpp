#include "chsh/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chsh/csv.hpp"
#include "chsh/errors.hpp"
#include "chsh/fock.hpp"
#include "chsh/oracle.hpp"
#include "chsh/version.hpp"

namespace chsh::cli {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_decimal(std::string_view s, std::string_view whole) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InvalidArgument("cannot parse number '" + std::string(whole) + "'");
  }
  return v;
}

int parse_int(std::string_view s, const char* name) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument(std::string(name) + ": expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

double json_number(const json& j, const char* key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_angle_expr(j.get<std::string>());
  throw InvalidArgument(std::string("config: '") + key + "' must be a number or angle expression");
}

RangeConfig json_range(const json& j, const char* key) {
  if (!j.is_object()) throw InvalidArgument(std::string("config: '") + key + "' must be an object");
  RangeConfig r;
  if (j.contains("min")) r.min = json_number(j["min"], "min");
  if (j.contains("max")) r.max = json_number(j["max"], "max");
  if (j.contains("steps")) r.steps = j["steps"].get<int>();
  return r;
}

template <class T>
void fill(std::optional<T>& dst, const std::optional<T>& src) {
  if (!dst && src) dst = src;
}

}  // namespace

double parse_angle_expr(std::string_view text) {
  const std::string low = lower(trim(text));
  std::string_view s = low;
  const std::size_t at = s.find("pi");
  if (at == std::string_view::npos) {
    return parse_decimal(s, text);
  }
  std::string_view coef = trim(s.substr(0, at));
  std::string_view rest = trim(s.substr(at + 2));
  double sign = 1.0;
  if (!coef.empty() && (coef.front() == '-' || coef.front() == '+')) {
    sign = coef.front() == '-' ? -1.0 : 1.0;
    coef = trim(coef.substr(1));
  }
  if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
  const double c = coef.empty() ? 1.0 : parse_decimal(coef, text);
  double den = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') {
      throw InvalidArgument("cannot parse angle '" + std::string(text) + "'");
    }
    den = parse_decimal(trim(rest.substr(1)), text);
    if (den == 0.0) throw InvalidArgument("division by zero in angle '" + std::string(text) + "'");
  }
  return sign * c * std::numbers::pi / den;
}

NamedAngles parse_angles(std::string_view text) {
  const std::string low = lower(trim(text));
  if (low == "canonical") return {ChshAngles::canonical(), "canonical"};
  if (low == "canonical-swapped") return {ChshAngles::canonical_swapped(), "canonical-swapped"};
  std::vector<double> v;
  std::string label;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = low.find(',', start);
    const std::string_view part = std::string_view(low).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    v.push_back(parse_angle_expr(part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (v.size() != 4) {
    throw InvalidArgument("--angles expects canonical, canonical-swapped, or four values a,a',b,b'");
  }
  std::string compact;
  for (char ch : low) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  }
  return {ChshAngles{v[0], v[1], v[2], v[3]}, compact};
}

RunConfig parse_config_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
  RunConfig c;
  try {
    if (j.contains("family")) c.family = parse_family(j["family"].get<std::string>());
    if (j.contains("setup")) c.setup = parse_setup(j["setup"].get<std::string>());
    if (j.contains("alpha")) c.alpha = json_number(j["alpha"], "alpha");
    if (j.contains("beta")) c.beta = json_number(j["beta"], "beta");
    if (j.contains("phi")) c.phi = json_number(j["phi"], "phi");
    if (j.contains("angles")) {
      const json& a = j["angles"];
      if (a.is_string()) {
        c.angles = parse_angles(a.get<std::string>());
      } else if (a.is_array() && a.size() == 4) {
        std::ostringstream label;
        double v[4];
        for (std::size_t i = 0; i < 4; ++i) {
          v[i] = json_number(a[i], "angles");
          label << (i ? "," : "") << format_number(v[i]);
        }
        c.angles = NamedAngles{ChshAngles{v[0], v[1], v[2], v[3]}, label.str()};
      } else {
        throw InvalidArgument("config: 'angles' must be a name or a 4-element array");
      }
    }
    if (j.contains("cutoff")) c.cutoff = j["cutoff"].get<int>();
    if (j.contains("engine")) c.engine = parse_engine(j["engine"].get<std::string>());
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("figure")) c.figure = j["figure"].get<int>();
    if (j.contains("alpha_range")) c.alpha_range = json_range(j["alpha_range"], "alpha_range");
    if (j.contains("beta_range")) c.beta_range = json_range(j["beta_range"], "beta_range");
    if (j.contains("beta_rule")) c.beta_rule = j["beta_rule"].get<std::string>();
    if (j.contains("delta")) c.delta = json_number(j["delta"], "delta");
    if (j.contains("resolution")) c.resolution = json_number(j["resolution"], "resolution");
    if (j.contains("center")) c.center = json_number(j["center"], "center");
    if (j.contains("alpha_max")) c.alpha_max = json_number(j["alpha_max"], "alpha_max");
    if (j.contains("steps")) c.steps = j["steps"].get<int>();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  return c;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config_json(buf.str());
}

void merge_config(RunConfig& flags, const RunConfig& file) {
  fill(flags.family, file.family);
  fill(flags.setup, file.setup);
  fill(flags.alpha, file.alpha);
  fill(flags.beta, file.beta);
  fill(flags.phi, file.phi);
  fill(flags.angles, file.angles);
  fill(flags.cutoff, file.cutoff);
  fill(flags.engine, file.engine);
  fill(flags.out, file.out);
  fill(flags.figure, file.figure);
  fill(flags.alpha_range.min, file.alpha_range.min);
  fill(flags.alpha_range.max, file.alpha_range.max);
  fill(flags.alpha_range.steps, file.alpha_range.steps);
  fill(flags.beta_range.min, file.beta_range.min);
  fill(flags.beta_range.max, file.beta_range.max);
  fill(flags.beta_range.steps, file.beta_range.steps);
  fill(flags.beta_rule, file.beta_rule);
  fill(flags.delta, file.delta);
  fill(flags.resolution, file.resolution);
  fill(flags.center, file.center);
  fill(flags.alpha_max, file.alpha_max);
  fill(flags.steps, file.steps);
}

namespace {

/// Raw flag text, converted after parsing so that "pi" works everywhere.
struct RawFlags {
  std::string config, family, setup, alpha, beta, phi, angles, cutoff, engine, out;
  std::string figure, alpha_min, alpha_max, alpha_steps, beta_min, beta_max, beta_steps;
  std::string beta_rule, delta, resolution, center, steps;
};

struct Command {
  CLI::App* app = nullptr;
  RawFlags raw;
};

void add_point_flags(CLI::App* app, RawFlags& r) {
  app->add_option("--config", r.config, "JSON config file; flags take precedence");
  app->add_option("--family", r.family, "symmetric | asymmetric | cat-even | cat-odd");
  app->add_option("--setup", r.setup, "single-pair | all-pairs | cat-even-pair | cat-odd-pair");
  app->add_option("--alpha", r.alpha, "first amplitude");
  app->add_option("--beta", r.beta, "second amplitude");
  app->add_option("--phi", r.phi, "relative phase, e.g. pi or 3.1");
  app->add_option("--angles", r.angles, "canonical | canonical-swapped | a,a',b,b'");
  app->add_option("--engine", r.engine, "analytic | oracle | both");
  app->add_option("--cutoff", r.cutoff, "Fock cutoff for the oracle (disables auto-raise)");
}

RunConfig to_config(const CLI::App* app, const RawFlags& r) {
  RunConfig c;
  auto given = [&](const char* name) {
    const CLI::Option* opt = app->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--family")) c.family = parse_family(r.family);
  if (given("--setup")) c.setup = parse_setup(r.setup);
  if (given("--alpha")) c.alpha = parse_angle_expr(r.alpha);
  if (given("--beta")) c.beta = parse_angle_expr(r.beta);
  if (given("--phi")) c.phi = parse_angle_expr(r.phi);
  if (given("--angles")) c.angles = parse_angles(r.angles);
  if (given("--engine")) c.engine = parse_engine(r.engine);
  if (given("--cutoff")) c.cutoff = parse_int(r.cutoff, "--cutoff");
  if (given("--out")) c.out = r.out;
  if (given("--figure")) c.figure = parse_int(r.figure, "--figure");
  if (given("--alpha-min")) c.alpha_range.min = parse_angle_expr(r.alpha_min);
  if (given("--alpha-max")) {
    c.alpha_range.max = parse_angle_expr(r.alpha_max);
    c.alpha_max = c.alpha_range.max;
  }
  if (given("--alpha-steps")) c.alpha_range.steps = parse_int(r.alpha_steps, "--alpha-steps");
  if (given("--beta-min")) c.beta_range.min = parse_angle_expr(r.beta_min);
  if (given("--beta-max")) c.beta_range.max = parse_angle_expr(r.beta_max);
  if (given("--beta-steps")) c.beta_range.steps = parse_int(r.beta_steps, "--beta-steps");
  if (given("--beta-rule")) c.beta_rule = lower(r.beta_rule);
  if (given("--delta")) c.delta = parse_angle_expr(r.delta);
  if (given("--resolution")) c.resolution = parse_angle_expr(r.resolution);
  if (given("--center")) c.center = parse_angle_expr(r.center);
  if (given("--steps")) c.steps = parse_int(r.steps, "--steps");
  if (!r.config.empty()) merge_config(c, load_config_file(r.config));
  return c;
}

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw InvalidArgument(std::string("missing required parameter ") + flag);
  return *v;
}

EvalOptions eval_options(const RunConfig& c) {
  EvalOptions o;
  if (c.cutoff) {
    if (*c.cutoff < 4) throw InvalidArgument("--cutoff must be at least 4");
    o.oracle.cutoff = *c.cutoff;
  }
  return o;
}

void warn_truncation(const StateSpec& spec, const RunConfig& c, std::ostream& err,
                     std::vector<std::string>* sink = nullptr) {
  if (!c.cutoff) return;
  const double tail = truncation_error(max_displacement(spec), *c.cutoff);
  if (tail > kOracleTruncationTarget) {
    std::ostringstream os;
    os << "warning: cutoff " << *c.cutoff << " leaves a truncation tail of " << std::setprecision(3)
       << tail << " at displacement " << max_displacement(spec);
    err << os.str() << '\n';
    if (sink) sink->push_back(os.str());
  }
}

std::string fmt(double x) { return format_number(x); }

std::string fmt_short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// ---------------------------------------------------------------------------

int cmd_chsh(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const StateSpec spec(need(c.family, "--family"), need(c.alpha, "--alpha"), need(c.beta, "--beta"),
                       c.phi.value_or(std::numbers::pi));
  const BellSetup setup = need(c.setup, "--setup");
  const NamedAngles angles = c.angles.value_or(NamedAngles{ChshAngles::canonical(), "canonical"});
  const Engine engine = c.engine.value_or(Engine::Both);
  require_compatible(spec.family, setup);
  require_nondegenerate(spec);
  if (engine != Engine::Analytic) warn_truncation(spec, c, err);

  const PointEvaluation p = evaluate_point(spec, setup, angles.angles, engine, eval_options(c));
  const auto& g = angles.angles;
  out << "family       " << to_string(spec.family) << '\n'
      << "setup        " << to_string(setup) << '\n'
      << "alpha        " << fmt(spec.alpha) << '\n'
      << "beta         " << fmt(spec.beta) << '\n'
      << "phi          " << fmt(spec.phi) << '\n'
      << "angles       " << angles.label << " (a=" << fmt(g.a) << " a'=" << fmt(g.a_prime)
      << " b=" << fmt(g.b) << " b'=" << fmt(g.b_prime) << ")\n"
      << "engine       " << to_string(engine) << '\n'
      << "<C>          " << fmt(p.value) << '\n'
      << "|<C>|        " << fmt(std::abs(p.value)) << '\n'
      << "violation    " << (std::abs(p.value) > 2.0 ? "yes" : "no") << '\n';
  if (p.analytic) out << "analytic     " << fmt(*p.analytic) << '\n';
  if (p.oracle) out << "oracle       " << fmt(*p.oracle) << " (cutoff " << *p.cutoff << ")\n";
  if (const auto d = p.discrepancy()) out << "discrepancy  " << fmt(*d) << '\n';
  return kExitOk;
}

ScanGrid custom_grid(const RunConfig& c) {
  ScanGrid g;
  g.family = need(c.family, "--family");
  g.setup = need(c.setup, "--setup");
  g.phi = c.phi.value_or(std::numbers::pi);
  g.alpha = AxisRange{need(c.alpha_range.min, "--alpha-min"), need(c.alpha_range.max, "--alpha-max"),
                      need(c.alpha_range.steps, "--alpha-steps")};
  const std::string rule = c.beta_rule.value_or(c.beta_range.min ? "grid" : "offset");
  if (rule == "grid") {
    g.beta_rule = BetaGrid{AxisRange{c.beta_range.min.value_or(g.alpha.min),
                                     c.beta_range.max.value_or(g.alpha.max),
                                     c.beta_range.steps.value_or(g.alpha.steps)}};
  } else if (rule == "offset") {
    g.beta_rule = BetaOffset{c.delta.value_or(0.001)};
  } else if (rule == "equal") {
    g.beta_rule = BetaEqual{};
  } else {
    throw InvalidArgument("--beta-rule must be grid, offset or equal");
  }
  return g;
}

int cmd_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  ScanGrid grid;
  if (c.figure) {
    const FigurePreset preset = figure_preset(*c.figure);
    grid = preset.grid;
    err << "figure " << preset.number << ": " << preset.title << '\n';
  } else {
    grid = custom_grid(c);
  }
  if (c.angles) {
    grid.angles = c.angles->angles;
    grid.angles_label = c.angles->label;
  }
  if (c.engine) grid.engine = *c.engine;
  grid.options = eval_options(c);

  const ScanResult result = run_scan(grid);
  if (c.out && *c.out != "-") {
    write_csv_file(*c.out, result);
    out << "wrote " << result.rows.size() << " rows (" << result.violation_count()
        << " violating, " << result.skipped_count() << " skipped) to " << *c.out << '\n';
    if (grid.engine == Engine::Both) {
      out << "max analytic/oracle discrepancy " << fmt(result.max_discrepancy()) << '\n';
    }
  } else {
    write_csv(out, result);
  }
  return kExitOk;
}

int cmd_table1(const RunConfig& c, std::ostream& out, std::ostream&) {
  constexpr double kTarget = 2.8284;
  constexpr double kTolerance = 5e-4;
  const EvalOptions options = eval_options(c);
  bool ok = true;
  out << std::left << std::setw(12) << "family" << std::setw(15) << "setup" << std::setw(8)
      << "alpha" << std::setw(8) << "beta" << std::setw(16) << "analytic" << std::setw(16)
      << "oracle" << std::setw(14) << "discrepancy" << "status\n";
  for (const SaturationPoint& row : table1_points()) {
    const StateSpec spec(row.family, row.alpha, row.beta, std::numbers::pi);
    const PointEvaluation p =
        evaluate_point(spec, row.setup, ChshAngles::canonical(), Engine::Both, options);
    const bool pass = std::abs(std::abs(*p.analytic) - kTarget) <= kTolerance &&
                      std::abs(std::abs(*p.oracle) - kTarget) <= kTolerance;
    ok = ok && pass;
    out << std::setw(12) << to_string(row.family) << std::setw(15) << to_string(row.setup)
        << std::setw(8) << fmt(row.alpha) << std::setw(8) << fmt(row.beta) << std::setw(16)
        << fmt(*p.analytic) << std::setw(16) << fmt(*p.oracle) << std::setw(14)
        << fmt_short(*p.discrepancy()) << (pass ? "ok" : "MISS") << '\n';
  }
  return ok ? kExitOk : kExitFailure;
}

int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  constexpr double kLimit = 1e-6;
  ValidationGrid grid;
  grid.options = eval_options(c);
  if (c.alpha_max) grid.alpha_max = *c.alpha_max;
  if (c.steps) grid.steps = *c.steps;
  if (c.phi) grid.phis = {*c.phi};

  std::vector<std::pair<Family, BellSetup>> pairs;
  for (const auto& p : supported_pairs()) {
    if ((!c.family || *c.family == p.first) && (!c.setup || *c.setup == p.second)) {
      pairs.push_back(p);
    }
  }
  if (c.family && c.setup) {
    require_compatible(*c.family, *c.setup);
  }
  if (pairs.empty()) throw InvalidArgument("no (family, setup) pair matches the filter");

  json report;
  report["tool"] = kToolName;
  report["version"] = kVersion;
  report["limit"] = kLimit;
  report["grid"] = {{"alpha_max", grid.alpha_max}, {"steps", grid.steps}, {"phis", grid.phis}};
  std::vector<std::string> warnings;
  json rows = json::array();
  bool all = true;
  for (const auto& [family, setup] : pairs) {
    warn_truncation(StateSpec(family, grid.alpha_max, grid.alpha_max, 0.0), c, err, &warnings);
    const ValidationReport r = validate_engines(family, setup, grid);
    const bool pass = r.max_discrepancy <= kLimit;
    all = all && pass;
    rows.push_back({{"family", to_string(family)},
                    {"setup", to_string(setup)},
                    {"points", r.points},
                    {"skipped", r.skipped},
                    {"max_discrepancy", r.max_discrepancy},
                    {"max_discrepancy_off_diagonal", r.max_discrepancy_off_diagonal},
                    {"max_abs_value", r.max_abs_value},
                    {"pass", pass}});
  }
  report["pairs"] = rows;
  report["warnings"] = warnings;
  report["pass"] = all;
  out << report.dump(2) << '\n';
  return all ? kExitOk : kExitFailure;
}

int cmd_window(const RunConfig& c, std::ostream& out, std::ostream&) {
  const Family family = need(c.family, "--family");
  const BellSetup setup = need(c.setup, "--setup");
  const NamedAngles angles = c.angles.value_or(NamedAngles{ChshAngles::canonical(), "canonical"});
  const double center = c.center.value_or(std::numbers::pi);
  const PhaseWindow w = phase_window(family, setup, need(c.alpha, "--alpha"), need(c.beta, "--beta"),
                                     angles.angles, c.resolution.value_or(1e-4), center,
                                     c.engine.value_or(Engine::Analytic), eval_options(c));
  if (w.empty) {
    out << "no violation at phi = " << fmt(center) << '\n';
    return kExitOk;
  }
  out << "phi_low      " << fmt(w.low) << '\n'
      << "phi_high     " << fmt(w.high) << '\n'
      << "below        " << fmt(center - w.low) << '\n'
      << "above        " << fmt(w.high - center) << '\n'
      << "half_width   " << fmt(w.half_width()) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bell-CHSH correlators of entangled coherent states", kToolName};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  Command chsh_cmd, scan_cmd, table_cmd, validate_cmd, window_cmd;

  chsh_cmd.app = app.add_subcommand("chsh", "evaluate <C> at one parameter point");
  add_point_flags(chsh_cmd.app, chsh_cmd.raw);

  scan_cmd.app = app.add_subcommand("scan", "line or grid scan written as CSV");
  add_point_flags(scan_cmd.app, scan_cmd.raw);
  {
    auto* s = scan_cmd.app;
    auto& r = scan_cmd.raw;
    s->add_option("--figure", r.figure, "figure preset 1..14");
    s->add_option("--out", r.out, "CSV destination ('-' for stdout)");
    s->add_option("--alpha-min", r.alpha_min, "first alpha of a custom scan");
    s->add_option("--alpha-max", r.alpha_max, "last alpha, included");
    s->add_option("--alpha-steps", r.alpha_steps, "number of alpha values (>= 2)");
    s->add_option("--beta-rule", r.beta_rule, "grid | offset | equal");
    s->add_option("--beta-min", r.beta_min, "first beta for --beta-rule grid");
    s->add_option("--beta-max", r.beta_max, "last beta for --beta-rule grid");
    s->add_option("--beta-steps", r.beta_steps, "number of beta values for --beta-rule grid");
    s->add_option("--delta", r.delta, "beta - alpha for --beta-rule offset (default 0.001)");
  }

  table_cmd.app = app.add_subcommand("table1", "evaluate the six saturation points");
  table_cmd.app->add_option("--config", table_cmd.raw.config, "JSON config file; flags take precedence");
  table_cmd.app->add_option("--cutoff", table_cmd.raw.cutoff, "Fock cutoff for the oracle");

  validate_cmd.app = app.add_subcommand("validate", "analytic vs oracle on the standard grid");
  {
    auto* v = validate_cmd.app;
    auto& r = validate_cmd.raw;
    v->add_option("--config", r.config, "JSON config file; flags take precedence");
    v->add_option("--family", r.family, "only pairs with this family");
    v->add_option("--setup", r.setup, "only pairs with this setup");
    v->add_option("--cutoff", r.cutoff, "Fock cutoff for the oracle (disables auto-raise)");
    v->add_option("--phi", r.phi, "single phase instead of pi, pi +/- 0.3");
    v->add_option("--alpha-max", r.alpha_max, "grid edge (default 1.2)");
    v->add_option("--steps", r.steps, "points per axis (default 15)");
  }

  window_cmd.app = app.add_subcommand("window", "phase interval of violation around a centre");
  add_point_flags(window_cmd.app, window_cmd.raw);
  window_cmd.app->add_option("--resolution", window_cmd.raw.resolution, "default 1e-4");
  window_cmd.app->add_option("--center", window_cmd.raw.center, "default pi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    for (Command* cmd : {&chsh_cmd, &scan_cmd, &table_cmd, &validate_cmd, &window_cmd}) {
      if (!cmd->app->parsed()) continue;
      const RunConfig config = to_config(cmd->app, cmd->raw);
      if (cmd == &chsh_cmd) return cmd_chsh(config, out, err);
      if (cmd == &scan_cmd) return cmd_scan(config, out, err);
      if (cmd == &table_cmd) return cmd_table1(config, out, err);
      if (cmd == &validate_cmd) return cmd_validate(config, out, err);
      return cmd_window(config, out, err);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const DegenerateState& e) {
    err << "error: degenerate state: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const IncompatibleSetup& e) {
    err << "error: incompatible setup: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitInvalidInput;
}

}  // namespace chsh::cli
