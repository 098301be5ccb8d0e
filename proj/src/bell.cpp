#include "chsh/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "chsh/errors.hpp"

namespace chsh {

namespace {

using Pair = std::pair<int, int>;

std::vector<Pair> rotated_pairs(BellSetup setup, int cutoff) {
  switch (setup) {
    case BellSetup::SinglePair:
      return {{0, 1}};
    case BellSetup::AllPairs: {
      std::vector<Pair> pairs;
      for (int n = 0; 2 * n + 1 < cutoff; ++n) {
        pairs.emplace_back(2 * n, 2 * n + 1);
      }
      return pairs;
    }
    case BellSetup::CatEvenPair:
      return {{0, 2}};
    case BellSetup::CatOddPair:
      return {{1, 3}};
  }
  return {};
}

}  // namespace

Complex unit_phase(double angle) {
  constexpr double quarter = 0.5 * std::numbers::pi;
  const double turns = std::nearbyint(angle / quarter);
  if (std::abs(angle - turns * quarter) <= 4.0 * 2.220446049250313e-16 * std::max(1.0, std::abs(angle))) {
    switch (((static_cast<long long>(turns) % 4) + 4) % 4) {
      case 0:
        return {1.0, 0.0};
      case 1:
        return {0.0, 1.0};
      case 2:
        return {-1.0, 0.0};
      default:
        return {0.0, -1.0};
    }
  }
  return std::polar(1.0, angle);
}

Eigen::MatrixXcd pseudospin(SpinComponent component, int pair_index, int cutoff) {
  if (pair_index < 0 || 2 * pair_index + 1 >= cutoff) {
    throw InvalidArgument("pseudospin: pair " + std::to_string(pair_index) +
                          " does not fit in cutoff " + std::to_string(cutoff));
  }
  const int lo = 2 * pair_index;
  const int hi = lo + 1;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  switch (component) {
    case SpinComponent::X:
      s(hi, lo) = 1.0;
      s(lo, hi) = 1.0;
      break;
    case SpinComponent::Y:
      s(lo, hi) = Complex(0.0, 1.0);
      s(hi, lo) = Complex(0.0, -1.0);
      break;
    case SpinComponent::Z:
      s(hi, hi) = 1.0;
      s(lo, lo) = -1.0;
      break;
  }
  return s;
}

Eigen::MatrixXcd pseudospin_total(SpinComponent component, int cutoff) {
  if (cutoff < 2 || cutoff % 2 != 0) {
    throw InvalidArgument("pseudospin_total: cutoff must be even and >= 2, got " +
                          std::to_string(cutoff));
  }
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  for (int n = 0; 2 * n + 1 < cutoff; ++n) {
    s += pseudospin(component, n, cutoff);
  }
  return s;
}

DichotomicOperator bell_operator(BellSetup setup, double angle, int cutoff) {
  if (!std::isfinite(angle)) {
    throw InvalidArgument("bell_operator: angle must be finite");
  }
  if (cutoff < 4) {
    throw InvalidArgument("bell_operator: cutoff must be >= 4, got " + std::to_string(cutoff));
  }
  if (setup == BellSetup::AllPairs && cutoff % 2 != 0) {
    throw InvalidArgument("bell_operator: all-pairs setup needs an even cutoff, got " +
                          std::to_string(cutoff) + " (the top state would be unpaired)");
  }
  const Complex phase = unit_phase(angle);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(cutoff, cutoff);
  for (const auto& [p, q] : rotated_pairs(setup, cutoff)) {
    m(p, p) = 0.0;
    m(q, q) = 0.0;
    m(q, p) = phase;
    m(p, q) = std::conj(phase);
  }
  return {std::move(m), angle, setup};
}

DichotomicOperator identity_operator(int cutoff) {
  if (cutoff < 1) {
    throw InvalidArgument("identity_operator: cutoff must be positive");
  }
  return {Eigen::MatrixXcd::Identity(cutoff, cutoff), 0.0, BellSetup::SinglePair};
}

TwoModeState apply_AB(const TwoModeState& state, const DichotomicOperator& op_a,
                      const DichotomicOperator& op_b) {
  const int n = state.cutoff();
  if (op_a.dimension() != n || op_b.dimension() != n) {
    throw DimensionMismatch("apply_AB: operator dimensions (" + std::to_string(op_a.dimension()) +
                            ", " + std::to_string(op_b.dimension()) +
                            ") do not match state cutoff " + std::to_string(n));
  }
  Eigen::MatrixXcd grid = op_a.matrix * state.amplitudes() * op_b.matrix.transpose();
  return TwoModeState(std::move(grid), state.spec(), state.truncation_bound());
}

bool compatible(Family family, BellSetup setup) noexcept {
  switch (family) {
    case Family::Symmetric:
    case Family::Asymmetric:
      return setup == BellSetup::SinglePair || setup == BellSetup::AllPairs;
    case Family::CatEven:
      return setup == BellSetup::CatEvenPair;
    case Family::CatOdd:
      return setup == BellSetup::CatOddPair;
  }
  return false;
}

void require_compatible(Family family, BellSetup setup) {
  if (!compatible(family, setup)) {
    throw IncompatibleSetup(std::string("setup ") + to_string(setup) +
                            " cannot measure " + to_string(family) + " states");
  }
}

const char* to_string(BellSetup setup) noexcept {
  switch (setup) {
    case BellSetup::SinglePair:
      return "single-pair";
    case BellSetup::AllPairs:
      return "all-pairs";
    case BellSetup::CatEvenPair:
      return "cat-even-pair";
    case BellSetup::CatOddPair:
      return "cat-odd-pair";
  }
  return "unknown";
}

BellSetup parse_setup(std::string_view name) {
  if (name == "single-pair") return BellSetup::SinglePair;
  if (name == "all-pairs") return BellSetup::AllPairs;
  if (name == "cat-even-pair") return BellSetup::CatEvenPair;
  if (name == "cat-odd-pair") return BellSetup::CatOddPair;
  throw InvalidArgument("unknown Bell setup '" + std::string(name) +
                        "' (expected single-pair, all-pairs, cat-even-pair, cat-odd-pair)");
}

}  // namespace chsh
