#include "chsh/special.hpp"

#include <cmath>

namespace chsh::special {

namespace {

// sum_{k >= first} x^k / k! stepping k by `stride`, for |x| small enough that
// the series converges in a few dozen terms.
double factorial_series(double x, int first, int stride) {
  double term = 1.0;
  for (int k = 1; k <= first; ++k) {
    term *= x / k;
  }
  double sum = 0.0;
  for (int k = first; k < first + 200; k += stride) {
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) {
      break;
    }
    for (int j = 1; j <= stride; ++j) {
      term *= x / (k + j);
    }
  }
  return sum;
}

}  // namespace

double exp_remainder(double x) {
  if (std::abs(x) < 1.0) {
    return factorial_series(x, 2, 1);
  }
  return std::expm1(x) - x;
}

double cosh_remainder(double x) {
  if (std::abs(x) < 2.0) {
    return factorial_series(x, 4, 2);
  }
  return std::cosh(x) - 1.0 - 0.5 * x * x;
}

double sinh_remainder(double x) {
  if (std::abs(x) < 2.0) {
    return factorial_series(x, 5, 2);
  }
  return std::sinh(x) - x - x * x * x / 6.0;
}

double one_plus_cos_exp(double phi, double x) {
  const double half = std::cos(0.5 * phi);
  return 2.0 * half * half + std::cos(phi) * std::expm1(-x);
}

double kappa_even(double a, double b) {
  const double s = std::sinh(0.5 * (a - b) * (a - b));
  const double p = std::sinh(0.5 * (a + b) * (a + b));
  const double d = std::sinh(0.5 * (a * a - b * b));
  return -p * s - d * d;
}

double kappa_odd(double a, double b) {
  const double v = (a * a - b * b) * (a * a - b * b);
  const double w = 4.0 * a * a * b * b;
  if (v + w > 4.0) {
    const double s = std::sinh(0.5 * (a - b) * (a - b));
    const double p = std::sinh(0.5 * (a + b) * (a + b));
    const double d = std::sinh(0.5 * (a * a - b * b));
    return -p * s + d * d;
  }
  // -1/2 sum_{k>=2} [(v+w)^k - v^k - w^k] / (2k)!, expanded binomially so
  // every term has the same sign.
  double sum = 0.0;
  double inv_fact = 1.0 / 24.0;
  for (int k = 2; k < 60; ++k) {
    double inner = 0.0;
    double c = 1.0;
    for (int j = 1; j < k; ++j) {
      c = c * (k - j + 1) / j;
      inner += c * std::pow(v, j) * std::pow(w, k - j);
    }
    const double term = inner * inv_fact;
    sum += term;
    if (term <= 1e-18 * sum) {
      break;
    }
    inv_fact /= (2.0 * k + 1.0) * (2.0 * k + 2.0);
  }
  return -0.5 * sum;
}

}  // namespace chsh::special
