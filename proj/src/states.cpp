#include "chsh/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "chsh/errors.hpp"
#include "chsh/special.hpp"

namespace chsh {

namespace {

std::string describe(const StateSpec& spec) {
  std::ostringstream os;
  os.precision(12);
  os << to_string(spec.family) << " state (alpha=" << spec.alpha << ", beta=" << spec.beta
     << ", phi=" << spec.phi << ")";
  return os.str();
}

Eigen::MatrixXcd superpose(const FockVector& first_a, const FockVector& first_b,
                           const FockVector& second_a, const FockVector& second_b, double phi,
                           double factor) {
  const Complex phase = std::polar(1.0, phi);
  Eigen::MatrixXcd grid = first_a.amplitudes() * first_b.amplitudes().transpose();
  grid.noalias() += phase * (second_a.amplitudes() * second_b.amplitudes().transpose());
  grid *= factor;
  return grid;
}

TwoModeState finish(Eigen::MatrixXcd grid, const StateSpec& spec, double bound) {
  TwoModeState state(std::move(grid), spec, bound);
  // Truncation shortens each branch by at most `bound`; near-degenerate
  // superpositions amplify that by 1/denominator.
  const double budget =
      kNormTolerance + 4.0 * bound / std::min(1.0, std::abs(normalization_denominator(spec)));
  const double deviation = std::abs(state.norm_squared() - 1.0);
  if (deviation > budget) {
    std::ostringstream os;
    os << describe(spec) << ": closed-form normalization misses unit norm by " << deviation
       << " at cutoff " << state.cutoff();
    throw NumericalError(os.str());
  }
  return state;
}

}  // namespace

double reduce_phase(double phi) {
  if (!std::isfinite(phi)) {
    throw InvalidArgument("phase must be finite");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phi, two_pi);
  if (r < 0.0) {
    r += two_pi;
  }
  if (r >= two_pi) {
    r = 0.0;
  }
  return r;
}

StateSpec::StateSpec(Family family_, double alpha_, double beta_, double phi_)
    : family(family_), alpha(alpha_), beta(beta_), phi(reduce_phase(phi_)) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidArgument("state parameters must be finite");
  }
}

double normalization_denominator(const StateSpec& spec) {
  const double a = spec.alpha;
  const double b = spec.beta;
  switch (spec.family) {
    case Family::Symmetric:
      return special::one_plus_cos_exp(spec.phi, (a - b) * (a - b));
    case Family::Asymmetric:
      return special::one_plus_cos_exp(spec.phi, 2.0 * (a * a + b * b));
    case Family::CatEven: {
      const double half = std::cos(0.5 * spec.phi);
      const double c = std::cosh(a * b);
      return (2.0 * half * half * c * c - special::kappa_even(a, b)) /
             (std::cosh(a * a) * std::cosh(b * b));
    }
    case Family::CatOdd: {
      if (a == 0.0 || b == 0.0) {
        return 0.0;
      }
      const double half = std::cos(0.5 * spec.phi);
      const double s = std::sinh(a * b);
      return (2.0 * half * half * s * s - special::kappa_odd(a, b)) /
             (std::sinh(a * a) * std::sinh(b * b));
    }
  }
  return 0.0;
}

void require_nondegenerate(const StateSpec& spec) {
  if (spec.family == Family::CatOdd &&
      (std::abs(spec.alpha) < 1e-12 || std::abs(spec.beta) < 1e-12)) {
    throw DegenerateState(describe(spec) + " is degenerate: odd cat with zero displacement");
  }
  const double d = normalization_denominator(spec);
  if (!(std::abs(d) >= kDegeneracyThreshold)) {
    std::ostringstream os;
    os << describe(spec) << " is degenerate: normalization denominator " << d;
    if (spec.family != Family::Asymmetric && spec.alpha == spec.beta) {
      os << " (phi = pi with alpha = beta gives the null vector)";
    } else if (spec.family == Family::Asymmetric) {
      os << " (phi = pi with alpha = beta = 0 gives the null vector)";
    }
    throw DegenerateState(os.str());
  }
}

TwoModeState::TwoModeState(Eigen::MatrixXcd amplitudes, StateSpec spec, double truncation_bound)
    : amplitudes_(std::move(amplitudes)), spec_(spec), truncation_bound_(truncation_bound) {
  if (amplitudes_.rows() == 0 || amplitudes_.rows() != amplitudes_.cols()) {
    throw DimensionMismatch("TwoModeState: amplitude grid must be square and non-empty");
  }
}

Complex TwoModeState::inner(const TwoModeState& other) const {
  if (other.cutoff() != cutoff()) {
    throw DimensionMismatch("TwoModeState::inner: cutoffs differ");
  }
  return (amplitudes_.conjugate().cwiseProduct(other.amplitudes_)).sum();
}

TwoModeState build_symmetric(double alpha, double beta, double phi, int cutoff) {
  const StateSpec spec(Family::Symmetric, alpha, beta, phi);
  require_nondegenerate(spec);
  const FockVector ca = coherent_amplitudes(alpha, cutoff);
  const FockVector cb = coherent_amplitudes(beta, cutoff);
  const double ns = 1.0 / std::sqrt(2.0 * normalization_denominator(spec));
  const double bound = std::max(truncation_error(alpha, cutoff), truncation_error(beta, cutoff));
  return finish(superpose(ca, cb, cb, ca, spec.phi, ns), spec, bound);
}

TwoModeState build_asymmetric(double alpha, double beta, double phi, int cutoff) {
  const StateSpec spec(Family::Asymmetric, alpha, beta, phi);
  require_nondegenerate(spec);
  const FockVector ca = coherent_amplitudes(alpha, cutoff);
  const FockVector cb = coherent_amplitudes(beta, cutoff);
  const FockVector ma = coherent_amplitudes(-alpha, cutoff);
  const FockVector mb = coherent_amplitudes(-beta, cutoff);
  const double na = 1.0 / std::sqrt(2.0 * normalization_denominator(spec));
  const double bound = std::max(truncation_error(alpha, cutoff), truncation_error(beta, cutoff));
  return finish(superpose(ca, cb, ma, mb, spec.phi, na), spec, bound);
}

TwoModeState build_cat(Parity parity, double alpha, double beta, double phi, int cutoff) {
  const StateSpec spec(parity == Parity::Even ? Family::CatEven : Family::CatOdd, alpha, beta,
                       phi);
  require_nondegenerate(spec);
  const FockVector ka = cat_amplitudes(alpha, parity, cutoff);
  const FockVector kb = cat_amplitudes(beta, parity, cutoff);
  const double c = 1.0 / std::sqrt(2.0 * normalization_denominator(spec));
  const double bound = std::max(truncation_error(alpha, cutoff), truncation_error(beta, cutoff));
  return finish(superpose(ka, kb, kb, ka, spec.phi, c), spec, bound);
}

TwoModeState build_state(const StateSpec& spec, int cutoff) {
  switch (spec.family) {
    case Family::Symmetric:
      return build_symmetric(spec.alpha, spec.beta, spec.phi, cutoff);
    case Family::Asymmetric:
      return build_asymmetric(spec.alpha, spec.beta, spec.phi, cutoff);
    case Family::CatEven:
      return build_cat(Parity::Even, spec.alpha, spec.beta, spec.phi, cutoff);
    case Family::CatOdd:
      return build_cat(Parity::Odd, spec.alpha, spec.beta, spec.phi, cutoff);
  }
  throw InvalidArgument("unknown state family");
}

double max_displacement(const StateSpec& spec) {
  return std::max(std::abs(spec.alpha), std::abs(spec.beta));
}

const char* to_string(Family family) noexcept {
  switch (family) {
    case Family::Symmetric:
      return "symmetric";
    case Family::Asymmetric:
      return "asymmetric";
    case Family::CatEven:
      return "cat-even";
    case Family::CatOdd:
      return "cat-odd";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "symmetric") return Family::Symmetric;
  if (name == "asymmetric") return Family::Asymmetric;
  if (name == "cat-even" || name == "even-cat") return Family::CatEven;
  if (name == "cat-odd" || name == "odd-cat") return Family::CatOdd;
  throw InvalidArgument("unknown state family '" + std::string(name) +
                        "' (expected symmetric, asymmetric, cat-even, cat-odd)");
}

}  // namespace chsh
