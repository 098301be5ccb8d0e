#pragma once

#include <functional>

#include "chsh/bell.hpp"
#include "chsh/fock.hpp"
#include "chsh/states.hpp"

namespace chsh {

/// Measurement parameters of A, A', B, B' (radians).
struct ChshAngles {
  double a = 0.0;
  double a_prime = 0.0;
  double b = 0.0;
  double b_prime = 0.0;

  /// a = 0, a' = pi/2, b = pi/4, b' = -pi/4.
  static ChshAngles canonical();
  /// a = 0, a' = pi/2, b = -pi/4, b' = pi/4.
  static ChshAngles canonical_swapped();
};

/// Truncation of the all-pairs double series.
struct SeriesControl {
  int max_pair_index = 400;
  double tail_tolerance = 1e-13;
};

struct SeriesValue {
  double value = 0.0;
  /// Pair indices n, m < pair_terms were summed.
  int pair_terms = 0;
  /// Upper bound on |omitted part| of the correlator.
  double tail_bound = 0.0;
};

/// <AB>(alpha, beta, phi; a, b).
using AbFunction = std::function<double(double alpha, double beta, double phi, double a, double b)>;

// Closed forms for the single-pair setup with the prefactor
//   Omega_S = e^{-(alpha^2+beta^2)} / (1 + cos(phi) e^{-(alpha-beta)^2}).
double ab_symmetric_setup1(double alpha, double beta, double phi, double a, double b);

// <C> at phi = pi and canonical angles, in the simplified closed form.
double chsh_symmetric_setup1_pi(double alpha, double beta);

SeriesValue ab_symmetric_setup2_series(double alpha, double beta, double phi, double a, double b,
                                       const SeriesControl& ctrl = {});
double ab_symmetric_setup2(double alpha, double beta, double phi, double a, double b,
                           const SeriesControl& ctrl = {});
/// n = m = 0 contribution to <C> at phi = pi, canonical angles:
/// 2 sqrt2 (alpha-beta)^2 / (e^{2 alpha beta} - e^{alpha^2+beta^2}).
double chsh_symmetric_setup2_leading(double alpha, double beta);

double ab_asymmetric_setup1(double alpha, double beta, double phi, double a, double b);

/// 2 - 2/sinh(alpha^2+beta^2) [ ... ] at phi = pi, canonical angles.
double chsh_asymmetric_setup1_pi(double alpha, double beta);

SeriesValue ab_asymmetric_setup2_series(double alpha, double beta, double phi, double a, double b,
                                        const SeriesControl& ctrl = {});
double ab_asymmetric_setup2(double alpha, double beta, double phi, double a, double b,
                            const SeriesControl& ctrl = {});
/// 4 sqrt2 alpha beta / sinh(alpha^2 + beta^2).
double chsh_asymmetric_setup2_leading(double alpha, double beta);

/// Cat states measured on (|0>,|2>) or (|1>,|3>) with
///   Omega_+ = 1/2 [cosh a^2 cosh b^2 + cos(phi) cosh^2(ab)]^{-1}   (sinh for odd).
double ab_cat(Parity parity, double alpha, double beta, double phi, double a, double b);

/// Simplified <C> at phi = pi, canonical angles, with
///   kappa_+ = cosh^2(ab) - cosh a^2 cosh b^2,  kappa_- = sinh^2(ab) - sinh a^2 sinh b^2.
double chsh_cat_pi(Parity parity, double alpha, double beta);

/// AB + A'B + AB' - A'B'.
double chsh(const AbFunction& ab, double alpha, double beta, double phi, const ChshAngles& angles);

/// The closed-form correlator for a (family, setup) combination; throws
/// IncompatibleSetup otherwise.
AbFunction analytic_correlator(Family family, BellSetup setup, const SeriesControl& ctrl = {});

double analytic_chsh(const StateSpec& spec, BellSetup setup, const ChshAngles& angles,
                     const SeriesControl& ctrl = {});

inline constexpr double kTsirelsonBound = 2.8284271247461903;

}  // namespace chsh
