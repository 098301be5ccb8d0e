#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chsh/analytic.hpp"
#include "chsh/bell.hpp"
#include "chsh/errors.hpp"
#include "chsh/oracle.hpp"

using namespace chsh;

namespace {

constexpr double kPi = std::numbers::pi;

struct Pair {
  Family family;
  BellSetup setup;
};
const Pair kPairs[] = {
    {Family::Symmetric, BellSetup::SinglePair}, {Family::Symmetric, BellSetup::AllPairs},
    {Family::Asymmetric, BellSetup::SinglePair}, {Family::Asymmetric, BellSetup::AllPairs},
    {Family::CatEven, BellSetup::CatEvenPair},  {Family::CatOdd, BellSetup::CatOddPair},
};

}  // namespace

TEST_CASE("canonical angle sets") {
  const ChshAngles c = ChshAngles::canonical();
  CHECK(c.a == 0.0);
  CHECK(c.a_prime == kPi / 2);
  CHECK(c.b == kPi / 4);
  CHECK(c.b_prime == -kPi / 4);
  const ChshAngles s = ChshAngles::canonical_swapped();
  CHECK(s.b == -kPi / 4);
  CHECK(s.b_prime == kPi / 4);
}

TEST_CASE("closed-form <AB> equals the matrix oracle") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (const Pair& p : kPairs) {
    const AbFunction ab = analytic_correlator(p.family, p.setup);
    for (double a : {0.05, 0.3, 0.8, 1.2}) {
      for (double b : {0.1, 0.45, 1.0}) {
        for (double phi : {0.0, 1.3, kPi - 0.3, kPi, 4.0}) {
          const StateSpec spec(p.family, a, b, phi);
          if (std::abs(normalization_denominator(spec)) < 1e-6) continue;
          const TwoModeState state = build_state(spec, 60);
          for (int k = 0; k < 3; ++k) {
            const double x = angle(rng), y = angle(rng);
            const double want = expectation_ab(state, p.setup, x, y).value;
            INFO(to_string(p.family) << "/" << to_string(p.setup) << " a=" << a << " b=" << b
                                     << " phi=" << phi);
            CHECK(std::abs(ab(a, b, spec.phi, x, y) - want) <= 1e-8);
          }
        }
      }
    }
  }
}

TEST_CASE("simplified phi = pi forms match the four-term assembly") {
  const ChshAngles canon = ChshAngles::canonical();
  for (double a = 0.05; a <= 1.5; a += 0.17) {
    for (double b = 0.02; b <= 1.5; b += 0.19) {
      if (std::abs(a - b) < 1e-3) continue;
      CHECK(std::abs(chsh_symmetric_setup1_pi(a, b) -
                     chsh::chsh(ab_symmetric_setup1, a, b, kPi, canon)) <= 1e-10);
      CHECK(std::abs(chsh_asymmetric_setup1_pi(a, b) -
                     chsh::chsh(ab_asymmetric_setup1, a, b, kPi, canon)) <= 1e-10);
      INFO("a=" << a << " b=" << b);
      for (Parity par : {Parity::Even, Parity::Odd}) {
        INFO(static_cast<int>(par));
        const AbFunction ab = [par](double x, double y, double phi, double u, double v) {
          return ab_cat(par, x, y, phi, u, v);
        };
        CHECK(std::abs(chsh_cat_pi(par, a, b) - chsh::chsh(ab, a, b, kPi, canon)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("n = m = 0 terms against the first pseudospin pair") {
  // Operators restricted to (|0>,|1>) and zero elsewhere, summed over the four CHSH terms.
  const int n = 60;
  const ChshAngles c = ChshAngles::canonical();
  auto pair0 = [n](double t) -> Eigen::MatrixXcd {
    return std::cos(t) * pseudospin(SpinComponent::X, 0, n) -
           std::sin(t) * pseudospin(SpinComponent::Y, 0, n);
  };
  auto corr = [&](const TwoModeState& s, double x, double y) {
    const Eigen::MatrixXcd& psi = s.amplitudes();
    return (psi.conjugate().cwiseProduct(pair0(x) * psi * pair0(y).transpose())).sum().real();
  };
  auto leading = [&](const TwoModeState& s) {
    return corr(s, c.a, c.b) + corr(s, c.a_prime, c.b) + corr(s, c.a, c.b_prime) -
           corr(s, c.a_prime, c.b_prime);
  };
  for (double a : {0.1, 0.5, 1.1}) {
    for (double b : {0.3, 0.9}) {
      INFO("a=" << a << " b=" << b);
      CHECK(chsh_symmetric_setup2_leading(a, b) ==
            doctest::Approx(leading(build_symmetric(a, b, kPi, n))).epsilon(1e-9));
      CHECK(chsh_asymmetric_setup2_leading(a, b) ==
            doctest::Approx(leading(build_asymmetric(a, b, kPi, n))).epsilon(1e-9));
    }
  }
}

TEST_CASE("double series: tail control") {
  const SeriesValue v = ab_asymmetric_setup2_series(1.0, 1.0, kPi, 0.0, kPi / 4);
  CHECK(v.tail_bound <= 1e-13);
  CHECK(v.pair_terms >= 2);
  const SeriesValue big = ab_asymmetric_setup2_series(5.0, 5.0, kPi, 0.0, kPi / 4);
  CHECK(big.pair_terms > v.pair_terms);
  SeriesControl tight;
  tight.max_pair_index = 2;
  CHECK_THROWS_AS(ab_symmetric_setup2(3.0, 2.0, kPi, 0.0, kPi / 4, tight), SeriesTruncation);
  try {
    ab_asymmetric_setup2(3.0, 3.0, kPi, 0.0, kPi / 4, tight);
    FAIL("expected SeriesTruncation");
  } catch (const SeriesTruncation& e) {
    CHECK(e.residual_bound() > tight.tail_tolerance);
  }
}

TEST_CASE("a few hand-checked values") {
  // |<C>| to four decimals
  CHECK(std::abs(chsh_symmetric_setup1_pi(0.1, 0.2)) == doctest::Approx(2.6939).epsilon(2e-5));
  CHECK(chsh_asymmetric_setup1_pi(0.1, 0.3) == doctest::Approx(1.6942).epsilon(2e-5));
  CHECK(std::abs(chsh_cat_pi(Parity::Even, 0.1, 0.2)) == doctest::Approx(2.8278).epsilon(2e-5));
  CHECK(std::abs(chsh_cat_pi(Parity::Odd, 0.1, 0.2)) == doctest::Approx(2.8280).epsilon(2e-5));
  // phi = 0 with the swapped angle set
  const StateSpec s(Family::Asymmetric, 0.7, 0.7, 0.0);
  CHECK(analytic_chsh(s, BellSetup::AllPairs, ChshAngles::canonical_swapped()) ==
        doctest::Approx(2.0895).epsilon(2e-5));
  // the canonical set gives exactly nothing there
  CHECK(std::abs(analytic_chsh(s, BellSetup::AllPairs, ChshAngles::canonical())) <= 1e-12);
}

TEST_CASE("incompatible or degenerate requests") {
  CHECK_THROWS_AS(analytic_correlator(Family::CatEven, BellSetup::AllPairs), IncompatibleSetup);
  CHECK_THROWS_AS(analytic_chsh(StateSpec(Family::Symmetric, 0.2, 0.2, kPi), BellSetup::SinglePair,
                                ChshAngles::canonical()),
                  DegenerateState);
  CHECK(kTsirelsonBound == doctest::Approx(2.0 * std::sqrt(2.0)));
}

TEST_CASE("tied angles never beat the local bound") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> angle(-kPi, kPi), amp(0.01, 1.5);
  for (const Pair& p : kPairs) {
    for (int k = 0; k < 200; ++k) {
      const double a = angle(rng), b = angle(rng);
      const StateSpec spec(p.family, amp(rng), amp(rng), angle(rng));
      if (std::abs(normalization_denominator(spec)) < 1e-8) continue;
      const double v = analytic_chsh(spec, p.setup, ChshAngles{a, a, b, b});
      CHECK(std::abs(v) <= 2.0 + 1e-9);
    }
  }
}
