#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "chsh/analytic.hpp"
#include "chsh/bell.hpp"
#include "chsh/scan.hpp"
#include "chsh/states.hpp"

namespace chsh::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInvalidInput = 2,
  kExitIoError = 3,
};

/// "pi", "-pi/4", "3pi/4", "3*pi/4", "0.5pi" or a plain decimal.
double parse_angle_expr(std::string_view text);

struct NamedAngles {
  ChshAngles angles;
  std::string label;
};

/// "canonical", "canonical-swapped", or four comma-separated angle expressions
/// in the order a, a', b, b'.
NamedAngles parse_angles(std::string_view text);

struct RangeConfig {
  std::optional<double> min;
  std::optional<double> max;
  std::optional<int> steps;
};

struct RunConfig {
  std::optional<Family> family;
  std::optional<BellSetup> setup;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> phi;
  std::optional<NamedAngles> angles;
  std::optional<int> cutoff;
  std::optional<Engine> engine;
  std::optional<std::string> out;

  // scan
  std::optional<int> figure;
  RangeConfig alpha_range;
  RangeConfig beta_range;
  /// "grid", "offset" or "equal".
  std::optional<std::string> beta_rule;
  std::optional<double> delta;

  // window
  std::optional<double> resolution;
  std::optional<double> center;

  // validate
  std::optional<double> alpha_max;
  std::optional<int> steps;
};

/// Parses a JSON object whose keys mirror the long flag names
/// (alpha_range / beta_range are objects with min, max, steps).
RunConfig parse_config_json(std::string_view text);
RunConfig load_config_file(const std::filesystem::path& path);

/// Fills every field unset in `flags` from `file`.
void merge_config(RunConfig& flags, const RunConfig& file);

/// Entry point.  Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace chsh::cli
