#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "chsh/analytic.hpp"
#include "chsh/bell.hpp"
#include "chsh/oracle.hpp"
#include "chsh/states.hpp"

namespace chsh {

enum class Engine { Analytic, Oracle, Both };

const char* to_string(Engine engine) noexcept;
Engine parse_engine(std::string_view name);

struct EvalOptions {
  SeriesControl series;
  OracleOptions oracle;
};

struct PointEvaluation {
  /// The reported value: analytic for Analytic and Both, oracle otherwise.
  double value = 0.0;
  std::optional<double> analytic;
  std::optional<double> oracle;
  std::optional<int> cutoff;

  std::optional<double> discrepancy() const;
};

/// <C> for one parameter tuple.  Throws DegenerateState / IncompatibleSetup.
PointEvaluation evaluate_point(const StateSpec& spec, BellSetup setup, const ChshAngles& angles,
                               Engine engine, const EvalOptions& options = {});

struct AxisRange {
  double min = 0.0;
  double max = 1.0;
  int steps = 2;

  double at(int i) const;
};

struct BetaGrid {
  AxisRange range;
};
struct BetaOffset {
  double delta = 0.001;
};
struct BetaEqual {};
using BetaRule = std::variant<BetaGrid, BetaOffset, BetaEqual>;

struct ScanGrid {
  AxisRange alpha;
  BetaRule beta_rule = BetaOffset{};
  double phi = 0.0;
  ChshAngles angles = ChshAngles::canonical();
  /// Free-form label for the angle set, e.g. "canonical".
  std::string angles_label = "canonical";
  Family family = Family::Symmetric;
  BellSetup setup = BellSetup::SinglePair;
  Engine engine = Engine::Analytic;
  EvalOptions options;
};

struct ScanRow {
  double alpha = 0.0;
  double beta = 0.0;
  double phi = 0.0;
  double value_signed = 0.0;
  double value_abs = 0.0;
  Engine engine = Engine::Analytic;
  bool violation = false;
  /// Degenerate points carry no value.
  bool skipped = false;
  std::string skip_reason;
  /// |analytic - oracle| with Engine::Both.
  std::optional<double> discrepancy;
};

struct ScanMetadata {
  ScanGrid grid;
  /// Oracle cutoff at the grid's largest displacement; empty for analytic-only scans.
  std::optional<int> cutoff;
  std::string timestamp;
  std::string version;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  ScanMetadata metadata;

  std::size_t violation_count() const;
  std::size_t skipped_count() const;
  double max_discrepancy() const;
  double max_abs_value() const;
};

/// One row per alpha step; beta follows BetaOffset or BetaEqual.
ScanResult line_scan(const ScanGrid& grid);
/// steps x steps rows, alpha-major; beta follows BetaGrid.
ScanResult grid_scan(const ScanGrid& grid);
/// Dispatches on the beta rule.
ScanResult run_scan(const ScanGrid& grid);

struct PhaseWindow {
  bool empty = true;
  double low = 0.0;
  double high = 0.0;

  double half_width() const { return empty ? 0.0 : 0.5 * (high - low); }
};

/// Maximal interval of phases around `center` with |<C>| > 2, with both
/// edges bisected to `resolution`.
PhaseWindow phase_window(Family family, BellSetup setup, double alpha, double beta,
                         const ChshAngles& angles, double resolution, double center,
                         Engine engine = Engine::Analytic, const EvalOptions& options = {});

struct SaturationResult {
  double alpha = 0.0;
  double beta = 0.0;
  double value = 0.0;
  bool reached = false;
};

/// Coarse 50 x 50 grid on (0, 0.5]^2 at phi = pi with canonical angles, then
/// simplex refinement in the positive quadrant, until
/// |<C>| >= 2 sqrt2 - tolerance.
SaturationResult saturation_search(Family family, BellSetup setup, double tolerance = 5e-5,
                                   const EvalOptions& options = {});

struct AngleSearchOptions {
  /// Force a' = a and b' = b (the local-bound check).
  bool tie_primed = false;
  int max_passes = 200;
  double improvement_tolerance = 1e-10;
  Engine engine = Engine::Analytic;
  EvalOptions eval;
};

struct AngleOptimum {
  ChshAngles angles;
  double value = 0.0;
  double start_value = 0.0;
  int passes = 0;
  bool converged = false;
};

/// Coordinate-wise golden-section ascent of |<C>| over (a, a', b, b').
AngleOptimum optimize_angles(Family family, BellSetup setup, double alpha, double beta, double phi,
                             const ChshAngles& start, const AngleSearchOptions& options = {});

struct FigurePreset {
  int number = 0;
  std::string title;
  ScanGrid grid;
};

inline constexpr int kFigureCount = 14;

/// Scan reproducing the data behind figure `number` (1..14).
FigurePreset figure_preset(int number);

/// One row of the saturation table.
struct SaturationPoint {
  Family family;
  BellSetup setup;
  double alpha;
  double beta;
};

/// The six saturating (family, setup, alpha, beta) tuples at phi = pi.
const std::vector<SaturationPoint>& table1_points();

struct ValidationGrid {
  double alpha_max = 1.2;
  int steps = 15;
  std::vector<double> phis = {3.141592653589793, 3.141592653589793 - 0.3,
                              3.141592653589793 + 0.3};
  /// Points with |alpha - beta| below this count as near-diagonal.
  double diagonal_margin = 0.05;
  EvalOptions options;
};

struct ValidationReport {
  Family family = Family::Symmetric;
  BellSetup setup = BellSetup::SinglePair;
  std::size_t points = 0;
  std::size_t skipped = 0;
  double max_discrepancy = 0.0;
  double max_discrepancy_off_diagonal = 0.0;
  double max_abs_value = 0.0;
};

/// Analytic against oracle on a steps x steps grid of (0, alpha_max]^2
/// for every phase in the grid, canonical angles.
ValidationReport validate_engines(Family family, BellSetup setup, const ValidationGrid& grid = {});

/// The (family, setup) combinations the library can evaluate.
const std::vector<std::pair<Family, BellSetup>>& supported_pairs();

/// Worker threads for scans; CHSH_COHERENT_THREADS caps the hardware count.
std::size_t worker_count();

/// Runs body(i) for i in [0, count) on worker_count() threads.  The first
/// exception thrown by any task is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace chsh
