#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "chsh/states.hpp"

namespace chsh {

/// Which pairing of number states the dichotomic operators rotate.
///   SinglePair   (|0>,|1>), identity on n >= 2
///   AllPairs     every (|2n>,|2n+1>)
///   CatEvenPair  (|0>,|2>), identity elsewhere
///   CatOddPair   (|1>,|3>), identity elsewhere
enum class BellSetup { SinglePair, AllPairs, CatEvenPair, CatOddPair };

enum class SpinComponent { X, Y, Z };

/// s^{(n)}_{x,y,z} of the pair (|2n>, |2n+1>) embedded in an N x N matrix.
Eigen::MatrixXcd pseudospin(SpinComponent component, int pair_index, int cutoff);

/// s_{x,y,z} = sum_n s^{(n)}; requires an even cutoff so that no state is
/// left unpaired.
Eigen::MatrixXcd pseudospin_total(SpinComponent component, int cutoff);

/// Hermitian, involutory single-mode operator A(a) or B(b).
struct DichotomicOperator {
  Eigen::MatrixXcd matrix;
  double angle = 0.0;
  BellSetup setup = BellSetup::SinglePair;

  int dimension() const noexcept { return static_cast<int>(matrix.rows()); }
};

/// Each rotated pair (p, q) gets <q|A|p> = e^{ia}, <p|A|q> = e^{-ia}, i.e.
/// u.s with u = (cos a, -sin a, 0); untouched states map to themselves.
DichotomicOperator bell_operator(BellSetup setup, double angle, int cutoff);

/// The identity operator, for exercising apply_AB in isolation.
DichotomicOperator identity_operator(int cutoff);

/// (A (x) B)|psi>: the amplitude grid A psi B^T.
TwoModeState apply_AB(const TwoModeState& state, const DichotomicOperator& op_a,
                      const DichotomicOperator& op_b);

/// e^{i angle}, exact when the angle is a multiple of pi/2.
Complex unit_phase(double angle);

/// Whether the setup can measure states of this family.
bool compatible(Family family, BellSetup setup) noexcept;
void require_compatible(Family family, BellSetup setup);

const char* to_string(BellSetup setup) noexcept;
BellSetup parse_setup(std::string_view name);

}  // namespace chsh
