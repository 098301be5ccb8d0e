#include <doctest.h>

#include <cmath>
#include <limits>

#include "chsh/errors.hpp"
#include "chsh/fock.hpp"

using namespace chsh;

namespace {

// e^{-a^2/2} a^n / sqrt(n!) straight from the definition, in long double.
long double direct_amplitude(long double a, int n) {
  long double fact = 1.0L;
  for (int k = 2; k <= n; ++k) fact *= k;
  return std::exp(-a * a / 2.0L) * std::pow(a, n) / std::sqrt(fact);
}

// Poisson tail by summing from N upwards in long double via lgamma.
long double poisson_tail(long double a, int cutoff) {
  if (a == 0.0L) return 0.0L;
  const long double lam = a * a;
  long double sum = 0.0L;
  for (int n = cutoff; n < cutoff + 2000; ++n) {
    const long double term = std::exp(-lam + n * std::log(lam) - std::lgamma(n + 1.0L));
    sum += term;
    if (n > lam && term < 1e-30L * sum) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("coherent amplitudes match the defining series") {
  for (double a : {0.0, 0.1, -0.7, 1.3, 3.0}) {
    const FockVector v = coherent_amplitudes(a, 40);
    CHECK(v.cutoff() == 40);
    for (int n = 0; n < 30; ++n) {
      const double expect = static_cast<double>(direct_amplitude(a, n));
      CHECK(v[n].imag() == 0.0);
      CHECK(std::abs(v[n].real() - expect) <= 1e-15 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("norm deficit equals the Poisson tail") {
  for (double a : {0.0, 0.5, 2.0, 5.0, 7.5}) {
    for (int n : {20, 40, 60, 120}) {
      const double tail = truncation_error(a, n);
      const double ref = static_cast<double>(poisson_tail(a, n));
      CHECK(tail >= 0.0);
      CHECK(std::abs(tail - ref) <= 1e-12 * ref + 1e-300);
      const double norm = coherent_amplitudes(a, n).norm_squared();
      CHECK(std::abs(norm + tail - 1.0) <= 1e-14);
    }
  }
  CHECK(truncation_error(0.0, 1) == 0.0);
  // a forced low cutoff at alpha = 2 leaves a visible tail
  CHECK(truncation_error(2.0, 20) > 1e-9);
}

TEST_CASE("cat amplitudes are (|a> +- |-a>) normalized") {
  for (double a : {0.05, 0.4, 1.0, 2.2}) {
    const FockVector plus = coherent_amplitudes(a, 80);
    const FockVector minus = coherent_amplitudes(-a, 80);
    for (Parity parity : {Parity::Even, Parity::Odd}) {
      Eigen::VectorXcd raw = parity == Parity::Even ? Eigen::VectorXcd(plus.amplitudes() + minus.amplitudes())
                                                    : Eigen::VectorXcd(plus.amplitudes() - minus.amplitudes());
      raw /= raw.norm();
      const FockVector cat = cat_amplitudes(a, parity, 80);
      CHECK(std::abs(cat.norm_squared() - 1.0) <= 1e-13);
      for (int n = 0; n < 80; ++n) {
        const bool allowed = (n % 2 == 0) == (parity == Parity::Even);
        if (!allowed) {
          CHECK(cat[n] == Complex(0.0, 0.0));
        } else {
          CHECK(std::abs(cat[n] - raw[n]) <= 1e-13);
        }
      }
    }
  }
}

TEST_CASE("small-amplitude cats stay finite") {
  const FockVector even = cat_amplitudes(1e-8, Parity::Even, 10);
  CHECK(std::abs(even[0].real() - 1.0) < 1e-15);
  const FockVector odd = cat_amplitudes(1e-8, Parity::Odd, 10);
  CHECK(std::abs(odd[1].real() - 1.0) < 1e-15);
  CHECK(std::isfinite(odd[3].real()));
}

TEST_CASE("coherent overlap is exp(-(a-b)^2/2)") {
  for (double a : {0.0, 0.3, 1.1}) {
    for (double b : {0.0, -0.4, 0.9}) {
      const Complex o = overlap(coherent_amplitudes(a, 60), coherent_amplitudes(b, 60));
      CHECK(std::abs(o - std::exp(-(a - b) * (a - b) / 2.0)) <= 1e-14);
    }
  }
}

TEST_CASE("annihilation operator has the coherent state as eigenvector") {
  const double a = 0.8;
  const int n = 40;
  const Eigen::VectorXcd v = coherent_amplitudes(a, n).amplitudes();
  const Eigen::VectorXcd av = annihilation_matrix(n).cast<Complex>() * v;
  // the last component loses its upper neighbour
  for (int k = 0; k < n - 1; ++k) CHECK(std::abs(av[k] - a * v[k]) <= 1e-15);
}

TEST_CASE("default cutoff") {
  CHECK(default_cutoff(0.0) == 40);
  CHECK(default_cutoff(1.0) == 40);
  CHECK(default_cutoff(3.0) == 59);
  CHECK(default_cutoff(5.0) == 95);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(coherent_amplitudes(0.1, 0), InvalidArgument);
  CHECK_THROWS_AS(coherent_amplitudes(11.0, 40), InvalidArgument);
  CHECK_THROWS_AS(coherent_amplitudes(std::numeric_limits<double>::quiet_NaN(), 40), InvalidArgument);
  CHECK_THROWS_AS(cat_amplitudes(0.1, Parity::Even, 1), InvalidArgument);
  CHECK_THROWS_AS(cat_amplitudes(0.0, Parity::Odd, 10), DegenerateState);
  CHECK_NOTHROW(cat_amplitudes(0.0, Parity::Even, 10));
  CHECK_THROWS_AS(overlap(coherent_amplitudes(0.1, 10), coherent_amplitudes(0.1, 11)),
                  DimensionMismatch);
  CHECK(std::string(to_string(Parity::Even)) == "even");
}
