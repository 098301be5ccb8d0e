#include <doctest.h>

#include <cmath>
#include <numbers>

#include "chsh/errors.hpp"
#include "chsh/states.hpp"

using namespace chsh;

namespace {

constexpr double kPi = std::numbers::pi;

// Norm^2 / 2 of the raw superposition, built at a generous cutoff from the
// single-mode vectors without any closed-form factor.
double numeric_denominator(Family family, double a, double b, double phi) {
  const int n = 120;
  Eigen::VectorXcd fa, fb, sa, sb;
  switch (family) {
    case Family::Symmetric:
      fa = coherent_amplitudes(a, n).amplitudes();
      fb = coherent_amplitudes(b, n).amplitudes();
      sa = fb;
      sb = fa;
      break;
    case Family::Asymmetric:
      fa = coherent_amplitudes(a, n).amplitudes();
      fb = coherent_amplitudes(b, n).amplitudes();
      sa = coherent_amplitudes(-a, n).amplitudes();
      sb = coherent_amplitudes(-b, n).amplitudes();
      break;
    case Family::CatEven:
    case Family::CatOdd: {
      const Parity p = family == Family::CatEven ? Parity::Even : Parity::Odd;
      fa = cat_amplitudes(a, p, n).amplitudes();
      fb = cat_amplitudes(b, p, n).amplitudes();
      sa = fb;
      sb = fa;
      break;
    }
  }
  const Eigen::MatrixXcd grid = fa * fb.transpose() + std::polar(1.0, phi) * (sa * sb.transpose());
  return grid.squaredNorm() / 2.0;
}

}  // namespace

TEST_CASE("phase is reduced to [0, 2pi)") {
  CHECK(StateSpec(Family::Symmetric, 0.1, 0.2, -kPi).phi == doctest::Approx(kPi));
  CHECK(StateSpec(Family::Symmetric, 0.1, 0.2, 2.0 * kPi).phi == 0.0);
  CHECK(StateSpec(Family::Symmetric, 0.1, 0.2, 7.0).phi == doctest::Approx(7.0 - 2.0 * kPi));
  CHECK_THROWS_AS(StateSpec(Family::Symmetric, 0.1, 0.2, INFINITY), InvalidArgument);
  CHECK_THROWS_AS(StateSpec(Family::Symmetric, NAN, 0.2, 0.0), InvalidArgument);
}

TEST_CASE("normalization denominator matches the numeric norm") {
  for (Family f : {Family::Symmetric, Family::Asymmetric, Family::CatEven, Family::CatOdd}) {
    for (double a : {0.1, 0.6, 1.5}) {
      for (double b : {0.25, 0.9, 2.0}) {
        for (double phi : {0.0, 1.0, kPi - 0.3, kPi, 5.0}) {
          const StateSpec spec(f, a, b, phi);
          const double want = numeric_denominator(f, a, b, spec.phi);
          INFO(to_string(f) << " a=" << a << " b=" << b << " phi=" << phi);
          CHECK(std::abs(normalization_denominator(spec) - want) <= 1e-13 * std::max(1.0, want));
        }
      }
    }
  }
}

TEST_CASE("built states have unit norm") {
  for (Family f : {Family::Symmetric, Family::Asymmetric, Family::CatEven, Family::CatOdd}) {
    for (double a : {0.05, 0.4, 1.2, 2.5}) {
      for (double b : {0.1, 0.7, 1.9}) {
        for (double phi : {0.0, 2.0, kPi}) {
          const TwoModeState s = build_state(StateSpec(f, a, b, phi), 80);
          CHECK(std::abs(s.norm_squared() - 1.0) <= kNormTolerance);
          CHECK(s.cutoff() == 80);
        }
      }
    }
  }
}

TEST_CASE("near-degenerate denominators keep full relative precision") {
  // 1 - e^{-(a-b)^2} at phi = pi
  const double a = 0.1, b = 0.1 + 3e-5;
  const double x = (a - b) * (a - b);
  CHECK(normalization_denominator(StateSpec(Family::Symmetric, a, b, kPi)) ==
        doctest::Approx(-std::expm1(-x)).epsilon(1e-12));
  // and the state still normalizes
  const TwoModeState s = build_symmetric(a, b, kPi, 60);
  CHECK(std::abs(s.norm_squared() - 1.0) <= 1e-9);

  // even cat at small amplitudes: 1 - cosh^2(ab)/(cosh a^2 cosh b^2) ~ (a^2-b^2)^2/2
  const double d = normalization_denominator(StateSpec(Family::CatEven, 0.01, 0.02, kPi));
  CHECK(d == doctest::Approx(std::pow(0.01 * 0.01 - 0.02 * 0.02, 2) / 2.0).epsilon(1e-6));
}

TEST_CASE("degenerate specs are rejected with a reason") {
  CHECK_THROWS_AS(build_symmetric(0.3, 0.3, kPi, 40), DegenerateState);
  CHECK_THROWS_AS(build_asymmetric(0.0, 0.0, kPi, 40), DegenerateState);
  CHECK_THROWS_AS(build_cat(Parity::Even, 0.5, 0.5, kPi, 40), DegenerateState);
  CHECK_THROWS_AS(build_cat(Parity::Odd, 0.0, 0.5, 0.0, 40), DegenerateState);
  try {
    require_nondegenerate(StateSpec(Family::Symmetric, 0.3, 0.3, kPi));
    FAIL("expected DegenerateState");
  } catch (const DegenerateState& e) {
    CHECK(std::string(e.what()).find("alpha = beta") != std::string::npos);
  }
  // alpha = beta is fine away from phi = pi
  CHECK_NOTHROW(build_symmetric(0.3, 0.3, kPi - 0.3, 40));
  CHECK_NOTHROW(build_asymmetric(0.3, 0.3, kPi, 40));
}

TEST_CASE("grid structure") {
  // symmetric state: swapping the modes multiplies by e^{i phi} up to normalization
  const TwoModeState s = build_symmetric(0.4, 0.9, 0.0, 30);
  CHECK((s.amplitudes() - s.amplitudes().transpose()).norm() <= 1e-15);
  // cat grids live on one parity sector per mode
  const TwoModeState c = build_cat(Parity::Odd, 0.4, 0.9, 1.0, 30);
  for (int x = 0; x < 30; ++x)
    for (int y = 0; y < 30; ++y)
      if (x % 2 == 0 || y % 2 == 0) CHECK(c.amplitudes()(x, y) == Complex(0.0, 0.0));
  CHECK_THROWS_AS(TwoModeState(Eigen::MatrixXcd::Zero(3, 4), StateSpec{}, 0.0), DimensionMismatch);
  CHECK_THROWS_AS(s.inner(build_symmetric(0.4, 0.9, 0.0, 31)), DimensionMismatch);
  CHECK(std::abs(s.inner(s) - 1.0) <= 1e-12);
}

TEST_CASE("forced low cutoff stays within the truncation budget") {
  const TwoModeState s = build_asymmetric(2.0, 2.0, kPi, 20);
  CHECK(s.truncation_bound() > 1e-9);
  CHECK(std::abs(s.norm_squared() - 1.0) > 1e-10);
}

TEST_CASE("family names") {
  for (Family f : {Family::Symmetric, Family::Asymmetric, Family::CatEven, Family::CatOdd}) {
    CHECK(parse_family(to_string(f)) == f);
  }
  CHECK(parse_family("even-cat") == Family::CatEven);
  CHECK_THROWS_AS(parse_family("squeezed"), InvalidArgument);
  CHECK(max_displacement(StateSpec(Family::Asymmetric, -3.0, 1.0, 0.0)) == 3.0);
}
