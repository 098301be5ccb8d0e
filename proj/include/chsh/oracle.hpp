#pragma once

#include <optional>

#include "chsh/analytic.hpp"
#include "chsh/bell.hpp"
#include "chsh/states.hpp"

namespace chsh {

inline constexpr int kDefaultOracleCutoff = 60;
/// Truncation tails above this trigger an automatic cutoff raise.
inline constexpr double kOracleTruncationTarget = 1e-12;
/// Largest tolerated |Im <psi|AB|psi>|.
inline constexpr double kImaginaryResidueLimit = 1e-10;

struct ExpectationReport {
  double value = 0.0;
  double imaginary_residue = 0.0;
  int cutoff = 0;
  double truncation_bound = 0.0;
};

struct OracleOptions {
  /// A forced cutoff is used as-is, even when its tail exceeds the target.
  std::optional<int> cutoff;
};

/// Re <psi|A(a) (x) B(b)|psi> / <psi|psi> by explicit matrix action.
ExpectationReport expectation_ab(const TwoModeState& state, BellSetup setup, double a, double b);

/// AB + A'B + AB' - A'B' from four expectation_ab calls.
ExpectationReport expectation_chsh(const TwoModeState& state, BellSetup setup,
                                   const ChshAngles& angles);

/// Cutoff the oracle uses for this spec and setup: the forced value, or the
/// default raised (keeping it even) until the truncation tail is below target.
int oracle_cutoff(const StateSpec& spec, BellSetup setup, const OracleOptions& options = {});

/// Builds the state at oracle_cutoff and evaluates <C>.
ExpectationReport oracle_chsh(const StateSpec& spec, BellSetup setup, const ChshAngles& angles,
                              const OracleOptions& options = {});

}  // namespace chsh
