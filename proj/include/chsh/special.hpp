#pragma once

// Cancellation-free building blocks shared by the normalization factors
// and the closed-form correlators.

namespace chsh::special {

/// e^x - 1 - x
double exp_remainder(double x);
/// cosh(x) - 1 - x^2/2
double cosh_remainder(double x);
/// sinh(x) - x - x^3/6
double sinh_remainder(double x);

/// 1 + cos(phi) e^{-x} for x >= 0, exact near phi = pi.
double one_plus_cos_exp(double phi, double x);

/// cosh^2(ab) - cosh(a^2) cosh(b^2)
double kappa_even(double a, double b);
/// sinh^2(ab) - sinh(a^2) sinh(b^2)
double kappa_odd(double a, double b);

}  // namespace chsh::special
