#include "chsh/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "chsh/errors.hpp"
#include "chsh/optimize.hpp"
#include "chsh/version.hpp"

namespace chsh {

namespace {

constexpr double kCeiling = kTsirelsonBound + 1e-9;

void check_ceiling(double value, const char* where) {
  if (!(std::abs(value) <= kCeiling)) {
    std::ostringstream os;
    os.precision(17);
    os << where << ": |<C>| = " << std::abs(value) << " exceeds the Tsirelson bound";
    throw NumericalError(os.str());
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void validate_range(const AxisRange& r, const char* name) {
  if (r.steps < 2) {
    throw InvalidArgument(std::string(name) + " range needs at least 2 steps");
  }
  if (!std::isfinite(r.min) || !std::isfinite(r.max)) {
    throw InvalidArgument(std::string(name) + " range must be finite");
  }
}

ScanRow evaluate_row(const ScanGrid& grid, double alpha, double beta, std::optional<int>& cutoff) {
  ScanRow row;
  row.alpha = alpha;
  row.beta = beta;
  row.phi = grid.phi;
  row.engine = grid.engine;
  try {
    const StateSpec spec(grid.family, alpha, beta, grid.phi);
    const PointEvaluation p = evaluate_point(spec, grid.setup, grid.angles, grid.engine, grid.options);
    row.value_signed = p.value;
    row.value_abs = std::abs(p.value);
    row.violation = row.value_abs > 2.0;
    row.discrepancy = p.discrepancy();
    cutoff = p.cutoff;
  } catch (const DegenerateState& e) {
    row.skipped = true;
    row.skip_reason = e.what();
  }
  return row;
}

ScanResult finish(const ScanGrid& grid, std::vector<ScanRow> rows,
                  const std::vector<std::optional<int>>& cutoffs) {
  ScanResult result;
  result.rows = std::move(rows);
  if (result.skipped_count() == result.rows.size()) {
    throw DegenerateState("scan: every grid point is degenerate");
  }
  result.metadata.grid = grid;
  for (const auto& c : cutoffs) {
    if (c && (!result.metadata.cutoff || *c > *result.metadata.cutoff)) {
      result.metadata.cutoff = c;
    }
  }
  result.metadata.timestamp = utc_timestamp();
  result.metadata.version = kVersion;
  return result;
}

ScanResult run_points(const ScanGrid& grid, const std::vector<std::pair<double, double>>& points) {
  require_compatible(grid.family, grid.setup);
  std::vector<ScanRow> rows(points.size());
  std::vector<std::optional<int>> cutoffs(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    rows[i] = evaluate_row(grid, points[i].first, points[i].second, cutoffs[i]);
  });
  return finish(grid, std::move(rows), cutoffs);
}

}  // namespace

const char* to_string(Engine engine) noexcept {
  switch (engine) {
    case Engine::Analytic: return "analytic";
    case Engine::Oracle: return "oracle";
    case Engine::Both: return "both";
  }
  return "?";
}

Engine parse_engine(std::string_view name) {
  if (name == "analytic") return Engine::Analytic;
  if (name == "oracle") return Engine::Oracle;
  if (name == "both") return Engine::Both;
  throw InvalidArgument("unknown engine '" + std::string(name) + "' (analytic|oracle|both)");
}

std::optional<double> PointEvaluation::discrepancy() const {
  if (analytic && oracle) return std::abs(*analytic - *oracle);
  return std::nullopt;
}

PointEvaluation evaluate_point(const StateSpec& spec, BellSetup setup, const ChshAngles& angles,
                               Engine engine, const EvalOptions& options) {
  require_compatible(spec.family, setup);
  PointEvaluation p;
  if (engine != Engine::Oracle) {
    p.analytic = analytic_chsh(spec, setup, angles, options.series);
    check_ceiling(*p.analytic, "analytic");
    p.value = *p.analytic;
  }
  if (engine != Engine::Analytic) {
    const ExpectationReport r = oracle_chsh(spec, setup, angles, options.oracle);
    check_ceiling(r.value, "oracle");
    p.oracle = r.value;
    p.cutoff = r.cutoff;
    if (engine == Engine::Oracle) p.value = r.value;
  }
  return p;
}

double AxisRange::at(int i) const {
  if (i == steps - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::size_t ScanResult::violation_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ScanRow& r) { return r.violation; }));
}

std::size_t ScanResult::skipped_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ScanRow& r) { return r.skipped; }));
}

double ScanResult::max_discrepancy() const {
  double m = 0.0;
  for (const auto& r : rows) {
    if (r.discrepancy) m = std::max(m, *r.discrepancy);
  }
  return m;
}

double ScanResult::max_abs_value() const {
  double m = 0.0;
  for (const auto& r : rows) {
    if (!r.skipped) m = std::max(m, r.value_abs);
  }
  return m;
}

ScanResult line_scan(const ScanGrid& grid) {
  validate_range(grid.alpha, "alpha");
  if (std::holds_alternative<BetaGrid>(grid.beta_rule)) {
    throw InvalidArgument("line_scan needs an offset or equal beta rule");
  }
  std::vector<std::pair<double, double>> points;
  points.reserve(static_cast<std::size_t>(grid.alpha.steps));
  for (int i = 0; i < grid.alpha.steps; ++i) {
    const double a = grid.alpha.at(i);
    double b = a;
    if (const auto* off = std::get_if<BetaOffset>(&grid.beta_rule)) b = a + off->delta;
    points.emplace_back(a, b);
  }
  return run_points(grid, points);
}

ScanResult grid_scan(const ScanGrid& grid) {
  validate_range(grid.alpha, "alpha");
  const auto* beta = std::get_if<BetaGrid>(&grid.beta_rule);
  if (beta == nullptr) {
    throw InvalidArgument("grid_scan needs a beta grid");
  }
  validate_range(beta->range, "beta");
  std::vector<std::pair<double, double>> points;
  points.reserve(static_cast<std::size_t>(grid.alpha.steps) *
                 static_cast<std::size_t>(beta->range.steps));
  for (int i = 0; i < grid.alpha.steps; ++i) {
    for (int j = 0; j < beta->range.steps; ++j) {
      points.emplace_back(grid.alpha.at(i), beta->range.at(j));
    }
  }
  return run_points(grid, points);
}

ScanResult run_scan(const ScanGrid& grid) {
  return std::holds_alternative<BetaGrid>(grid.beta_rule) ? grid_scan(grid) : line_scan(grid);
}

// ---------------------------------------------------------------------------

PhaseWindow phase_window(Family family, BellSetup setup, double alpha, double beta,
                         const ChshAngles& angles, double resolution, double center,
                         Engine engine, const EvalOptions& options) {
  if (!(resolution > 0.0)) {
    throw InvalidArgument("phase_window: resolution must be positive");
  }
  require_compatible(family, setup);
  auto violates = [&](double phi) {
    try {
      const StateSpec spec(family, alpha, beta, phi);
      return std::abs(evaluate_point(spec, setup, angles, engine, options).value) > 2.0;
    } catch (const DegenerateState&) {
      return false;
    }
  };

  PhaseWindow w;
  if (!violates(center)) return w;
  w.empty = false;

  const double pi = std::numbers::pi;
  const double step = std::min(0.01, resolution * 10.0);
  auto edge = [&](double dir) {
    double inside = 0.0;
    double outside = -1.0;
    for (double d = step; d < pi; d += step) {
      if (!violates(center + dir * d)) {
        outside = d;
        break;
      }
      inside = d;
    }
    if (outside < 0.0) return pi;  // the whole circle violates
    while (outside - inside > resolution) {
      const double mid = 0.5 * (inside + outside);
      (violates(center + dir * mid) ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
  };
  w.high = center + edge(1.0);
  w.low = center - edge(-1.0);
  return w;
}

SaturationResult saturation_search(Family family, BellSetup setup, double tolerance,
                                   const EvalOptions& options) {
  if (!(tolerance > 0.0)) {
    throw InvalidArgument("saturation_search: tolerance must be positive");
  }
  require_compatible(family, setup);
  const double pi = std::numbers::pi;
  const ChshAngles angles = ChshAngles::canonical();
  const double inf = std::numeric_limits<double>::infinity();

  auto deficit = [&](double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) return inf;
    try {
      const StateSpec spec(family, a, b, pi);
      return kTsirelsonBound - std::abs(evaluate_point(spec, setup, angles, Engine::Analytic,
                                                       options).value);
    } catch (const DegenerateState&) {
      return inf;
    }
  };

  constexpr int kCoarse = 50;
  std::vector<double> coarse(kCoarse * kCoarse, inf);
  parallel_for(coarse.size(), [&](std::size_t k) {
    const int i = static_cast<int>(k) / kCoarse;
    const int j = static_cast<int>(k) % kCoarse;
    coarse[k] = deficit(0.01 * (i + 1), 0.01 * (j + 1));
  });
  const auto best = static_cast<int>(std::min_element(coarse.begin(), coarse.end()) - coarse.begin());

  SaturationResult out;
  out.alpha = 0.01 * (best / kCoarse + 1);
  out.beta = 0.01 * (best % kCoarse + 1);
  double d = coarse[static_cast<std::size_t>(best)];

  if (d > tolerance) {
    opt::SimplexOptions so;
    so.initial_step = 0.005;
    so.f_tolerance = 1e-15;
    const auto r = opt::nelder_mead_minimize(
        [&](const std::vector<double>& x) { return deficit(x[0], x[1]); }, {out.alpha, out.beta},
        so, 0.5 * tolerance);
    if (r.value < d) {
      out.alpha = r.x[0];
      out.beta = r.x[1];
      d = r.value;
    }
  }
  out.value = kTsirelsonBound - d;
  out.reached = d <= tolerance;
  return out;
}

AngleOptimum optimize_angles(Family family, BellSetup setup, double alpha, double beta, double phi,
                             const ChshAngles& start, const AngleSearchOptions& options) {
  const StateSpec spec(family, alpha, beta, phi);
  require_compatible(family, setup);
  require_nondegenerate(spec);

  std::vector<double> x = {start.a, start.a_prime, start.b, start.b_prime};
  auto to_angles = [&](const std::vector<double>& v) {
    if (options.tie_primed) return ChshAngles{v[0], v[0], v[2], v[2]};
    return ChshAngles{v[0], v[1], v[2], v[3]};
  };
  auto objective = [&](const std::vector<double>& v) {
    return std::abs(evaluate_point(spec, setup, to_angles(v), options.engine, options.eval).value);
  };

  AngleOptimum out;
  double current = objective(x);
  out.start_value = current;
  const std::vector<std::size_t> coords =
      options.tie_primed ? std::vector<std::size_t>{0, 2} : std::vector<std::size_t>{0, 1, 2, 3};
  const double two_pi = 2.0 * std::numbers::pi;
  constexpr int kSamples = 16;

  for (out.passes = 0; out.passes < options.max_passes;) {
    ++out.passes;
    const double before = current;
    for (const std::size_t k : coords) {
      auto along = [&](double t) {
        std::vector<double> y = x;
        y[k] = t;
        return objective(y);
      };
      double best_t = x[k];
      double best_v = current;
      for (int s = 1; s < kSamples; ++s) {
        const double t = x[k] + two_pi * s / kSamples;
        const double v = along(t);
        if (v > best_v) {
          best_v = v;
          best_t = t;
        }
      }
      const double h = two_pi / kSamples;
      const auto line = opt::golden_section_maximize(along, best_t - h, best_t + h, 1e-12);
      if (line.value > best_v) {
        best_v = line.value;
        best_t = line.x;
      }
      if (best_v > current) {
        x[k] = std::remainder(best_t, two_pi);
        current = objective(x);
      }
    }
    // joint moves along ridges that single coordinates only creep up
    std::vector<double> sub;
    for (const std::size_t k : coords) sub.push_back(x[k]);
    auto joint = [&](const std::vector<double>& v) {
      std::vector<double> y = x;
      for (std::size_t i = 0; i < coords.size(); ++i) y[coords[i]] = v[i];
      return -objective(y);
    };
    opt::SimplexOptions simplex;
    simplex.initial_step = 0.1;
    const opt::SimplexResult polish = opt::nelder_mead_minimize(joint, sub, simplex);
    if (-polish.value > current) {
      for (std::size_t i = 0; i < coords.size(); ++i) {
        x[coords[i]] = std::remainder(polish.x[i], two_pi);
      }
      current = objective(x);
    }
    if (current - before < options.improvement_tolerance) {
      out.converged = true;
      break;
    }
  }
  check_ceiling(current, "optimize_angles");
  out.angles = to_angles(x);
  out.value = current;
  return out;
}

// ---------------------------------------------------------------------------

FigurePreset figure_preset(int number) {
  if (number < 1 || number > kFigureCount) {
    throw InvalidArgument("figure preset must be in 1.." + std::to_string(kFigureCount));
  }
  const double pi = std::numbers::pi;
  const AxisRange line{0.01, 3.0, 300};
  const AxisRange square{0.01, 1.0, 100};

  struct Row {
    Family family;
    BellSetup setup;
    double phi;
    bool swapped;
    BetaRule line_rule;
    const char* what;
  };
  static const Row rows[] = {
      {Family::Symmetric, BellSetup::SinglePair, pi, false, BetaOffset{0.001}, "symmetric, single pair"},
      {Family::Symmetric, BellSetup::AllPairs, pi, false, BetaOffset{0.001}, "symmetric, all pairs"},
      {Family::Asymmetric, BellSetup::SinglePair, pi, false, BetaEqual{}, "asymmetric, single pair"},
      {Family::Asymmetric, BellSetup::AllPairs, pi, false, BetaEqual{}, "asymmetric, all pairs"},
      {Family::Asymmetric, BellSetup::AllPairs, 0.0, true, BetaEqual{},
       "asymmetric, all pairs, phi = 0, swapped angles"},
      {Family::CatEven, BellSetup::CatEvenPair, pi, false, BetaOffset{0.001}, "even cat"},
      {Family::CatOdd, BellSetup::CatOddPair, pi, false, BetaOffset{0.001}, "odd cat"},
  };
  const Row& r = rows[(number - 1) / 2];
  const bool contour = number % 2 == 0;

  FigurePreset p;
  p.number = number;
  p.grid.family = r.family;
  p.grid.setup = r.setup;
  p.grid.phi = r.phi;
  p.grid.angles = r.swapped ? ChshAngles::canonical_swapped() : ChshAngles::canonical();
  p.grid.angles_label = r.swapped ? "canonical-swapped" : "canonical";
  p.grid.engine = Engine::Analytic;
  if (contour) {
    p.grid.alpha = square;
    p.grid.beta_rule = BetaGrid{square};
    p.title = std::string(r.what) + ": contour over (alpha, beta)";
  } else {
    p.grid.alpha = line;
    p.grid.beta_rule = r.line_rule;
    p.title = std::string(r.what) + (std::holds_alternative<BetaEqual>(r.line_rule)
                                         ? ": line, beta = alpha"
                                         : ": line, beta = alpha + 0.001");
  }
  return p;
}

const std::vector<SaturationPoint>& table1_points() {
  static const std::vector<SaturationPoint> points = {
      {Family::Symmetric, BellSetup::SinglePair, 0.001, 0.002},
      {Family::Symmetric, BellSetup::AllPairs, 0.001, 0.002},
      {Family::Asymmetric, BellSetup::SinglePair, 0.06, 0.06},
      {Family::Asymmetric, BellSetup::AllPairs, 0.1, 0.1},
      {Family::CatEven, BellSetup::CatEvenPair, 0.07, 0.08},
      {Family::CatOdd, BellSetup::CatOddPair, 0.08, 0.09},
  };
  return points;
}

const std::vector<std::pair<Family, BellSetup>>& supported_pairs() {
  static const std::vector<std::pair<Family, BellSetup>> pairs = {
      {Family::Symmetric, BellSetup::SinglePair}, {Family::Symmetric, BellSetup::AllPairs},
      {Family::Asymmetric, BellSetup::SinglePair}, {Family::Asymmetric, BellSetup::AllPairs},
      {Family::CatEven, BellSetup::CatEvenPair},  {Family::CatOdd, BellSetup::CatOddPair},
  };
  return pairs;
}

ValidationReport validate_engines(Family family, BellSetup setup, const ValidationGrid& grid) {
  require_compatible(family, setup);
  if (grid.steps < 1 || !(grid.alpha_max > 0.0)) {
    throw InvalidArgument("validate_engines: empty grid");
  }
  const auto n = static_cast<std::size_t>(grid.steps);
  const std::size_t total = n * n * grid.phis.size();
  struct Cell {
    bool skipped = false;
    double diff = 0.0;
    double abs_value = 0.0;
    bool near_diagonal = false;
  };
  std::vector<Cell> cells(total);
  parallel_for(total, [&](std::size_t k) {
    const std::size_t p = k / (n * n);
    const std::size_t i = (k / n) % n;
    const std::size_t j = k % n;
    const double a = grid.alpha_max * static_cast<double>(i + 1) / static_cast<double>(n);
    const double b = grid.alpha_max * static_cast<double>(j + 1) / static_cast<double>(n);
    Cell& c = cells[k];
    c.near_diagonal = std::abs(a - b) < grid.diagonal_margin;
    try {
      const StateSpec spec(family, a, b, grid.phis[p]);
      const auto e = evaluate_point(spec, setup, ChshAngles::canonical(), Engine::Both, grid.options);
      c.diff = *e.discrepancy();
      c.abs_value = std::max(std::abs(*e.analytic), std::abs(*e.oracle));
    } catch (const DegenerateState&) {
      c.skipped = true;
    }
  });

  ValidationReport r;
  r.family = family;
  r.setup = setup;
  r.points = total;
  for (const Cell& c : cells) {
    if (c.skipped) {
      ++r.skipped;
      continue;
    }
    r.max_discrepancy = std::max(r.max_discrepancy, c.diff);
    if (!c.near_diagonal) {
      r.max_discrepancy_off_diagonal = std::max(r.max_discrepancy_off_diagonal, c.diff);
    }
    r.max_abs_value = std::max(r.max_abs_value, c.abs_value);
  }
  return r;
}

std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CHSH_COHERENT_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) {
      n = std::min(n, static_cast<std::size_t>(cap));
    }
  }
  return n;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i; !failed.load() && (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace chsh
