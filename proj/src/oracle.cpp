#include "chsh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chsh/errors.hpp"
#include "chsh/fock.hpp"

namespace chsh {

ExpectationReport expectation_ab(const TwoModeState& state, BellSetup setup, double a, double b) {
  require_compatible(state.spec().family, setup);
  const int n = state.cutoff();
  const DichotomicOperator op_a = bell_operator(setup, a, n);
  const DichotomicOperator op_b = bell_operator(setup, b, n);
  const TwoModeState image = apply_AB(state, op_a, op_b);

  // Renormalize numerically so a wrong closed-form factor cannot leak in.
  const Complex value = state.inner(image) / state.norm_squared();
  const double residue = std::abs(value.imag());
  if (residue > kImaginaryResidueLimit) {
    std::ostringstream os;
    os << "expectation_ab: imaginary residue " << residue << " exceeds " << kImaginaryResidueLimit;
    throw NumericalError(os.str());
  }
  return {value.real(), residue, n, state.truncation_bound()};
}

ExpectationReport expectation_chsh(const TwoModeState& state, BellSetup setup,
                                   const ChshAngles& angles) {
  const auto ab = expectation_ab(state, setup, angles.a, angles.b);
  const auto apb = expectation_ab(state, setup, angles.a_prime, angles.b);
  const auto abp = expectation_ab(state, setup, angles.a, angles.b_prime);
  const auto apbp = expectation_ab(state, setup, angles.a_prime, angles.b_prime);
  ExpectationReport report;
  report.value = ab.value + apb.value + abp.value - apbp.value;
  report.imaginary_residue = std::max({ab.imaginary_residue, apb.imaginary_residue,
                                       abp.imaginary_residue, apbp.imaginary_residue});
  report.cutoff = state.cutoff();
  report.truncation_bound = state.truncation_bound();
  return report;
}

int oracle_cutoff(const StateSpec& spec, BellSetup setup, const OracleOptions& options) {
  if (options.cutoff) {
    return *options.cutoff;
  }
  int n = kDefaultOracleCutoff;
  const double x = max_displacement(spec);
  while (truncation_error(x, n) > kOracleTruncationTarget) {
    n += 2;
  }
  if (setup == BellSetup::AllPairs && n % 2 != 0) {
    ++n;
  }
  return n;
}

ExpectationReport oracle_chsh(const StateSpec& spec, BellSetup setup, const ChshAngles& angles,
                              const OracleOptions& options) {
  require_compatible(spec.family, setup);
  const TwoModeState state = build_state(spec, oracle_cutoff(spec, setup, options));
  return expectation_chsh(state, setup, angles);
}

}  // namespace chsh
