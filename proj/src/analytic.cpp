#include "chsh/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "chsh/errors.hpp"
#include "chsh/special.hpp"

namespace chsh {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

using special::cosh_remainder;
using special::exp_remainder;
using special::sinh_remainder;

// Omega_S and Omega_A; the denominators come from the state normalization.
double omega(const StateSpec& spec) {
  require_nondegenerate(spec);
  const double s = spec.alpha * spec.alpha + spec.beta * spec.beta;
  return std::exp(-s) / normalization_denominator(spec);
}

// log of 1 / sqrt((2n)! (2n+1)!)
double log_pair_weight(int n) {
  return -0.5 * (std::lgamma(2.0 * n + 1.0) + std::lgamma(2.0 * n + 2.0));
}

// x^power / sqrt((2n)! (2n+1)!) without overflow.
double pair_term(double x, int power, int n) {
  if (power == 0) {
    return std::exp(log_pair_weight(n));
  }
  if (x == 0.0) {
    return 0.0;
  }
  const double sign = (x < 0.0 && power % 2 != 0) ? -1.0 : 1.0;
  return sign * std::exp(power * std::log(std::abs(x)) + log_pair_weight(n));
}

// One factor sum_n x^{stride n + offset} / sqrt((2n)! (2n+1)!).
struct PairSeries {
  double x;
  int stride;
  int offset;

  double term(int n) const { return pair_term(x, stride * n + offset, n); }

  // |term(n+1) / term(n)|, decreasing in n.
  double ratio(int n) const {
    const double grow = std::pow(std::abs(x), stride);
    return grow / std::sqrt((2.0 * n + 1.0) * (2.0 * n + 2.0) * (2.0 * n + 2.0) * (2.0 * n + 3.0));
  }

  // Bound on sum_{n >= k} |term(n)|.
  double tail(int k) const {
    const double r = ratio(k);
    if (r >= 1.0) {
      return std::numeric_limits<double>::infinity();
    }
    return std::abs(term(k)) / (1.0 - r);
  }

  double head_abs(int k) const {
    double s = 0.0;
    for (int n = 0; n < k; ++n) {
      s += std::abs(term(n));
    }
    return s;
  }
};

// Bound on |sum_{n,m} p_n q_m - sum_{n,m < k} p_n q_m|.
double product_tail(const PairSeries& p, const PairSeries& q, int k) {
  const double hp = p.head_abs(k);
  const double hq = q.head_abs(k);
  const double tp = p.tail(k);
  const double tq = q.tail(k);
  return tp * hq + hp * tq + tp * tq;
}

void require_control(const SeriesControl& ctrl) {
  if (ctrl.max_pair_index < 1 || !(ctrl.tail_tolerance > 0.0)) {
    throw InvalidArgument("SeriesControl: need max_pair_index >= 1 and tail_tolerance > 0");
  }
}

// Smallest k whose bound(k) falls below tolerance.
template <typename Bound>
int pair_terms_needed(const SeriesControl& ctrl, const Bound& bound, const char* what) {
  require_control(ctrl);
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= ctrl.max_pair_index; ++k) {
    last = bound(k);
    if (last < ctrl.tail_tolerance) {
      return k;
    }
  }
  std::ostringstream os;
  os << what << ": series not converged within " << ctrl.max_pair_index
     << " pair terms (residual bound " << last << ")";
  throw SeriesTruncation(os.str(), last);
}

void require_finite_args(double alpha, double beta, double phi, double a, double b) {
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(phi) ||
      !std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("correlator arguments must be finite");
  }
}

}  // namespace

ChshAngles ChshAngles::canonical() {
  return {0.0, 0.5 * std::numbers::pi, 0.25 * std::numbers::pi, -0.25 * std::numbers::pi};
}

ChshAngles ChshAngles::canonical_swapped() {
  return {0.0, 0.5 * std::numbers::pi, -0.25 * std::numbers::pi, 0.25 * std::numbers::pi};
}

double ab_symmetric_setup1(double alpha, double beta, double phi, double a, double b) {
  require_finite_args(alpha, beta, phi, a, b);
  const double om = omega(StateSpec(Family::Symmetric, alpha, beta, phi));
  const double al = alpha;
  const double be = beta;
  const double fa = exp_remainder(al * al);
  const double fb = exp_remainder(be * be);
  const double fab = exp_remainder(al * be);
  const double cp = std::cos(phi);

  double t = (std::cos(a) + std::cos(b)) * (be * fa + al * fb);
  t += fab * (al * (std::cos(a + phi) + std::cos(b - phi)) +
              be * (std::cos(a - phi) + std::cos(b + phi)));
  t += 4.0 * al * be * std::cos(a) * std::cos(b) + 2.0 * al * be * cp * std::cos(a + b) +
       be * be * std::cos(a - b - phi) + al * al * std::cos(a - b + phi);
  t += fa * fb + cp * fab * fab;
  return om * t;
}

double chsh_symmetric_setup1_pi(double alpha, double beta) {
  const double al = alpha;
  const double be = beta;
  const double d2 = (al - be) * (al - be);
  const double gap = -std::expm1(-d2);  // 1 - e^{-(alpha-beta)^2}
  if (!(std::abs(gap) >= kDegeneracyThreshold)) {
    throw DegenerateState("chsh_symmetric_setup1_pi: alpha = beta makes the phi = pi state null");
  }
  const double s = al * al + be * be;
  const double c = 2.0 + kSqrt2;
  double braces = 2.0 * std::exp(s) * gap - 2.0 * (kSqrt2 - 1.0) * d2;
  braces -= std::exp(be * be) * (2.0 - c * al + 2.0 * al * al);
  braces -= std::exp(al * al) * (2.0 - c * be + 2.0 * be * be);
  braces += std::exp(al * be) * (4.0 + 4.0 * al * be - c * (al + be));
  return std::exp(-s) / gap * braces;
}

SeriesValue ab_symmetric_setup2_series(double alpha, double beta, double phi, double a, double b,
                                       const SeriesControl& ctrl) {
  require_finite_args(alpha, beta, phi, a, b);
  const double om = omega(StateSpec(Family::Symmetric, alpha, beta, phi));
  const double al = alpha;
  const double be = beta;
  const double diag = 4.0 * std::cos(a) * std::cos(b);
  const double mixed = 2.0 * al * be * std::cos(phi) * std::cos(a + b) +
                       al * al * std::cos(a - b + phi) + be * be * std::cos(a - b - phi);
  const PairSeries ua{al, 4, 1};
  const PairSeries ub{be, 4, 1};
  const PairSeries w{al * be, 2, 0};

  auto bound = [&](int k) {
    return std::abs(om) *
           (std::abs(diag) * product_tail(ua, ub, k) + std::abs(mixed) * product_tail(w, w, k));
  };
  const int k = pair_terms_needed(ctrl, bound, "ab_symmetric_setup2");

  double sum = 0.0;
  for (int n = 0; n < k; ++n) {
    for (int m = 0; m < k; ++m) {
      sum += diag * ua.term(n) * ub.term(m) + mixed * w.term(n) * w.term(m);
    }
  }
  return {om * sum, k, bound(k)};
}

double ab_symmetric_setup2(double alpha, double beta, double phi, double a, double b,
                           const SeriesControl& ctrl) {
  return ab_symmetric_setup2_series(alpha, beta, phi, a, b, ctrl).value;
}

double chsh_symmetric_setup2_leading(double alpha, double beta) {
  const double d2 = (alpha - beta) * (alpha - beta);
  const double denom = std::exp(2.0 * alpha * beta) - std::exp(alpha * alpha + beta * beta);
  if (denom == 0.0) {
    throw DegenerateState("chsh_symmetric_setup2_leading: alpha = beta");
  }
  return 2.0 * kSqrt2 * d2 / denom;
}

double ab_asymmetric_setup1(double alpha, double beta, double phi, double a, double b) {
  require_finite_args(alpha, beta, phi, a, b);
  const double om = omega(StateSpec(Family::Asymmetric, alpha, beta, phi));
  const double al = alpha;
  const double be = beta;
  const double cp = std::cos(phi);
  double t = 4.0 * al * be * (std::cos(a) * std::cos(b) - cp * std::sin(a) * std::sin(b));
  // -1 + x + e^{-x} is exp_remainder(-x).
  t -= 2.0 * std::sin(phi) *
       (al * std::sin(a) * exp_remainder(-be * be) + be * std::sin(b) * exp_remainder(-al * al));
  t += exp_remainder(al * al) * exp_remainder(be * be) +
       cp * exp_remainder(-al * al) * exp_remainder(-be * be);
  return om * t;
}

double chsh_asymmetric_setup1_pi(double alpha, double beta) {
  const double al2 = alpha * alpha;
  const double be2 = beta * beta;
  const double s = al2 + be2;
  if (!(-std::expm1(-2.0 * s) >= kDegeneracyThreshold)) {
    throw DegenerateState("chsh_asymmetric_setup1_pi: alpha = beta = 0 makes the state null");
  }
  const double bracket = -2.0 * kSqrt2 * alpha * beta - al2 - be2 + std::sinh(al2) +
                         std::sinh(be2) + al2 * std::cosh(be2) + be2 * std::cosh(al2);
  return 2.0 - 2.0 / std::sinh(s) * bracket;
}

SeriesValue ab_asymmetric_setup2_series(double alpha, double beta, double phi, double a, double b,
                                        const SeriesControl& ctrl) {
  require_finite_args(alpha, beta, phi, a, b);
  const double om = omega(StateSpec(Family::Asymmetric, alpha, beta, phi));
  const double angular =
      4.0 * (std::cos(a) * std::cos(b) - std::cos(phi) * std::sin(a) * std::sin(b));
  const PairSeries ua{alpha, 4, 1};
  const PairSeries ub{beta, 4, 1};

  auto bound = [&](int k) { return std::abs(om * angular) * product_tail(ua, ub, k); };
  const int k = pair_terms_needed(ctrl, bound, "ab_asymmetric_setup2");

  double sum = 0.0;
  for (int n = 0; n < k; ++n) {
    for (int m = 0; m < k; ++m) {
      sum += ua.term(n) * ub.term(m);
    }
  }
  return {om * angular * sum, k, bound(k)};
}

double ab_asymmetric_setup2(double alpha, double beta, double phi, double a, double b,
                            const SeriesControl& ctrl) {
  return ab_asymmetric_setup2_series(alpha, beta, phi, a, b, ctrl).value;
}

double chsh_asymmetric_setup2_leading(double alpha, double beta) {
  const double s = std::sinh(alpha * alpha + beta * beta);
  if (s == 0.0) {
    throw DegenerateState("chsh_asymmetric_setup2_leading: alpha = beta = 0");
  }
  return 4.0 * kSqrt2 * alpha * beta / s;
}

double ab_cat(Parity parity, double alpha, double beta, double phi, double a, double b) {
  require_finite_args(alpha, beta, phi, a, b);
  const StateSpec spec(parity == Parity::Even ? Family::CatEven : Family::CatOdd, alpha, beta,
                       phi);
  require_nondegenerate(spec);
  const double al = alpha;
  const double be = beta;
  const double al2 = al * al;
  const double be2 = be * be;
  const double ab = al * be;
  const double cp = std::cos(phi);
  const double ca = std::cos(a);
  const double cb = std::cos(b);
  const double across = al2 * (std::cos(a + phi) + std::cos(b - phi)) +
                        be2 * (std::cos(a - phi) + std::cos(b + phi));

  if (parity == Parity::Even) {
    const double scale = std::cosh(al2) * std::cosh(be2);
    const double om = 0.5 / (normalization_denominator(spec) * scale);
    const double ga = cosh_remainder(al2);
    const double gb = cosh_remainder(be2);
    const double gab = cosh_remainder(ab);
    double t = 4.0 * al2 * be2 * ca * cb + 2.0 * al2 * be2 * cp * std::cos(a + b) +
               al2 * al2 * std::cos(a - b + phi) + be2 * be2 * std::cos(a - b - phi);
    t += kSqrt2 * (ca + cb) * (al2 * gb + be2 * ga);
    t += kSqrt2 * across * gab;
    t += 2.0 * ga * gb + 2.0 * cp * gab * gab;
    return om * t;
  }

  const double scale = std::sinh(al2) * std::sinh(be2);
  const double om = 0.5 / (normalization_denominator(spec) * scale);
  const double ga = sinh_remainder(al2);
  const double gb = sinh_remainder(be2);
  const double gab = sinh_remainder(ab);
  const double a4b4 = al2 * al2 * be2 * be2;
  const double inv_sqrt6 = 1.0 / std::sqrt(6.0);
  double t = (4.0 / 3.0) * a4b4 * ca * cb + (2.0 / 3.0) * cp * a4b4 * std::cos(a + b) +
             (1.0 / 3.0) * al2 * be2 *
                 (al2 * al2 * std::cos(a - b + phi) + be2 * be2 * std::cos(a - b - phi));
  t += 2.0 * inv_sqrt6 * (ca + cb) * (al2 * al2 * gb + be2 * be2 * ga);
  t += 2.0 * inv_sqrt6 * ab * across * gab;
  t += 2.0 * ga * gb + 2.0 * cp * gab * gab;
  return om * t;
}

double chsh_cat_pi(Parity parity, double alpha, double beta) {
  const double al2 = alpha * alpha;
  const double be2 = beta * beta;
  const double ab = alpha * beta;
  const double diff2 = (al2 - be2) * (al2 - be2);

  // The O(1) pieces of the numerator are collected exactly before summing:
  //   1 + cosh(2ab) - 2 cosh a^2 cosh b^2 = 2 kappa_+,
  //   6 sinh^2(ab) - 6 sinh a^2 sinh b^2  = 6 kappa_-,
  // and the constant/linear parts of the remaining cosh/sinh factors sum to
  // (a^2 - b^2)^2 and a^2 b^2 (a^2 - b^2)^2 respectively.
  if (parity == Parity::Even) {
    const double kappa = special::kappa_even(alpha, beta);
    if (!(std::abs(kappa) / (std::cosh(al2) * std::cosh(be2)) >= kDegeneracyThreshold)) {
      throw DegenerateState("chsh_cat_pi: kappa_+ vanishes at alpha = beta");
    }
    const double c = 1.0 + kSqrt2;
    const double p = 4.0 + 2.0 * al2 * be2 - c * (al2 + be2);
    const double qb = 2.0 - c * be2 + be2 * be2;
    const double qa = 2.0 - c * al2 + al2 * al2;
    auto cosh_m1 = [](double x) { return cosh_remainder(x) + 0.5 * x * x; };
    const double numer = 2.0 * kappa + kSqrt2 * diff2 - cosh_m1(ab) * p + cosh_m1(al2) * qb +
                         cosh_m1(be2) * qa;
    return numer / kappa;
  }

  if (alpha == 0.0 || beta == 0.0) {
    throw DegenerateState("chsh_cat_pi: odd cat with zero displacement");
  }
  const double kappa = special::kappa_odd(alpha, beta);
  if (!(std::abs(kappa) / std::abs(std::sinh(al2) * std::sinh(be2)) >= kDegeneracyThreshold)) {
    throw DegenerateState("chsh_cat_pi: kappa_- vanishes at alpha = beta");
  }
  const double q = std::sqrt(3.0) + std::sqrt(6.0);
  const double p = 12.0 + 2.0 * al2 * be2 - q * (al2 + be2);
  const double qa = 6.0 - q * al2 + al2 * al2;
  const double qb = 6.0 - q * be2 + be2 * be2;
  auto sinh_m1 = [](double x) { return sinh_remainder(x) + x * x * x / 6.0; };
  const double numer = 6.0 * kappa + kSqrt2 * al2 * be2 * diff2 - ab * sinh_m1(ab) * p +
                       al2 * sinh_m1(be2) * qa + be2 * sinh_m1(al2) * qb;
  return numer / (3.0 * kappa);
}

double chsh(const AbFunction& ab, double alpha, double beta, double phi, const ChshAngles& angles) {
  return ab(alpha, beta, phi, angles.a, angles.b) + ab(alpha, beta, phi, angles.a_prime, angles.b) +
         ab(alpha, beta, phi, angles.a, angles.b_prime) -
         ab(alpha, beta, phi, angles.a_prime, angles.b_prime);
}

AbFunction analytic_correlator(Family family, BellSetup setup, const SeriesControl& ctrl) {
  require_compatible(family, setup);
  switch (family) {
    case Family::Symmetric:
      if (setup == BellSetup::SinglePair) {
        return ab_symmetric_setup1;
      }
      return [ctrl](double al, double be, double phi, double a, double b) {
        return ab_symmetric_setup2(al, be, phi, a, b, ctrl);
      };
    case Family::Asymmetric:
      if (setup == BellSetup::SinglePair) {
        return ab_asymmetric_setup1;
      }
      return [ctrl](double al, double be, double phi, double a, double b) {
        return ab_asymmetric_setup2(al, be, phi, a, b, ctrl);
      };
    case Family::CatEven:
      return [](double al, double be, double phi, double a, double b) {
        return ab_cat(Parity::Even, al, be, phi, a, b);
      };
    case Family::CatOdd:
      return [](double al, double be, double phi, double a, double b) {
        return ab_cat(Parity::Odd, al, be, phi, a, b);
      };
  }
  throw IncompatibleSetup("unknown family");
}

double analytic_chsh(const StateSpec& spec, BellSetup setup, const ChshAngles& angles,
                     const SeriesControl& ctrl) {
  return chsh(analytic_correlator(spec.family, setup, ctrl), spec.alpha, spec.beta, spec.phi,
              angles);
}

}  // namespace chsh
