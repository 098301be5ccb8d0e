#include "chsh/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

void require_cutoff(int cutoff, int minimum, const char* what) {
  if (cutoff < minimum) {
    throw InvalidArgument(std::string(what) + ": cutoff must be >= " + std::to_string(minimum) +
                          ", got " + std::to_string(cutoff));
  }
}

void require_displacement(double alpha, const char* what) {
  if (!std::isfinite(alpha)) {
    throw InvalidArgument(std::string(what) + ": displacement must be finite");
  }
  if (std::abs(alpha) > kDefaultMaxDisplacement) {
    throw InvalidArgument(std::string(what) + ": |alpha| exceeds " +
                          std::to_string(kDefaultMaxDisplacement));
  }
}

// alpha^n / sqrt(n!) for n < cutoff, scaled by `first`.
Eigen::VectorXcd power_series(double alpha, double first, int cutoff) {
  Eigen::VectorXcd v(cutoff);
  v[0] = first;
  for (int n = 1; n < cutoff; ++n) {
    v[n] = v[n - 1] * (alpha / std::sqrt(static_cast<double>(n)));
  }
  return v;
}

}  // namespace

FockVector::FockVector(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) {
    throw InvalidArgument("FockVector: cutoff must be positive");
  }
}

FockVector coherent_amplitudes(double alpha, int cutoff) {
  require_cutoff(cutoff, 1, "coherent_amplitudes");
  require_displacement(alpha, "coherent_amplitudes");
  return FockVector(power_series(alpha, std::exp(-0.5 * alpha * alpha), cutoff));
}

FockVector cat_amplitudes(double alpha, Parity parity, int cutoff) {
  require_cutoff(cutoff, 2, "cat_amplitudes");
  require_displacement(alpha, "cat_amplitudes");
  const double x = alpha * alpha;
  if (parity == Parity::Odd && std::abs(alpha) < 1e-12) {
    throw DegenerateState("cat_amplitudes: the odd cat state vanishes at alpha = 0");
  }
  // 2 N_pm exp(-alpha^2/2) = 1/sqrt(cosh alpha^2) or 1/sqrt(sinh alpha^2).
  const double scale = 1.0 / std::sqrt(parity == Parity::Even ? std::cosh(x) : std::sinh(x));
  Eigen::VectorXcd v = power_series(alpha, scale, cutoff);
  const int drop = parity == Parity::Even ? 1 : 0;
  for (int n = drop; n < cutoff; n += 2) {
    v[n] = 0.0;
  }
  return FockVector(std::move(v));
}

Complex overlap(const FockVector& u, const FockVector& v) {
  if (u.cutoff() != v.cutoff()) {
    throw DimensionMismatch("overlap: cutoffs differ (" + std::to_string(u.cutoff()) + " vs " +
                            std::to_string(v.cutoff()) + ")");
  }
  return u.amplitudes().dot(v.amplitudes());
}

double truncation_error(double alpha, int cutoff) {
  require_cutoff(cutoff, 1, "truncation_error");
  if (!std::isfinite(alpha)) {
    throw InvalidArgument("truncation_error: displacement must be finite");
  }
  const double lambda = alpha * alpha;
  if (lambda == 0.0) {
    return 0.0;
  }
  // Sum the Poisson pmf forward from n = cutoff; every term is positive so
  // there is no cancellation, and we stop once past the mode and negligible.
  double log_term = -lambda + cutoff * std::log(lambda) - std::lgamma(cutoff + 1.0);
  double term = std::exp(log_term);
  double sum = 0.0;
  for (int n = cutoff; n < cutoff + 100000; ++n) {
    sum += term;
    const double ratio = lambda / (n + 1.0);
    term *= ratio;
    if (ratio < 1.0 && term <= 1e-20 * sum) {
      break;
    }
    if (sum == 0.0 && ratio < 1.0) {
      break;
    }
  }
  return std::min(sum, 1.0);
}

int default_cutoff(double alpha_max) {
  const double a = std::abs(alpha_max);
  return std::max(40, static_cast<int>(std::ceil(a * a + 10.0 * a + 20.0)));
}

Eigen::MatrixXd annihilation_matrix(int cutoff) {
  require_cutoff(cutoff, 1, "annihilation_matrix");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

const char* to_string(Parity parity) noexcept {
  return parity == Parity::Even ? "even" : "odd";
}

}  // namespace chsh
