#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "chsh/fock.hpp"

namespace chsh {

/// Normalization denominators below this magnitude are rejected.
inline constexpr double kDegeneracyThreshold = 1e-10;
/// Allowed | <psi|psi> - 1 | after construction with the closed-form factor.
inline constexpr double kNormTolerance = 1e-10;

enum class Family { Symmetric, Asymmetric, CatEven, CatOdd };

/// Which two-mode state, and its real parameters.  phi is kept in [0, 2pi).
struct StateSpec {
  Family family = Family::Symmetric;
  double alpha = 0.0;
  double beta = 0.0;
  double phi = 0.0;

  StateSpec() = default;
  StateSpec(Family family, double alpha, double beta, double phi);
};

/// The quantity whose vanishing makes the state the null vector:
///   symmetric   1 + cos(phi) exp(-(alpha-beta)^2)
///   asymmetric  1 + cos(phi) exp(-2(alpha^2+beta^2))
///   cat (+/-)   1 + cos(phi) cosh^2(ab)/(cosh a^2 cosh b^2)   (sinh for odd)
/// Evaluated without the cancellation that the naive form suffers near phi = pi.
double normalization_denominator(const StateSpec& spec);

/// Throws DegenerateState when the spec describes a (numerically) null state.
void require_nondegenerate(const StateSpec& spec);

/// Amplitude grid over |x>_a |y>_b, x, y < cutoff.
class TwoModeState {
 public:
  TwoModeState(Eigen::MatrixXcd amplitudes, StateSpec spec, double truncation_bound);

  int cutoff() const noexcept { return static_cast<int>(amplitudes_.rows()); }
  const Eigen::MatrixXcd& amplitudes() const noexcept { return amplitudes_; }
  const StateSpec& spec() const noexcept { return spec_; }
  /// Largest Poisson tail among the coherent components that built the state.
  double truncation_bound() const noexcept { return truncation_bound_; }

  double norm_squared() const { return amplitudes_.squaredNorm(); }
  /// <this|other>.
  Complex inner(const TwoModeState& other) const;

 private:
  Eigen::MatrixXcd amplitudes_;
  StateSpec spec_;
  double truncation_bound_;
};

TwoModeState build_symmetric(double alpha, double beta, double phi, int cutoff);
TwoModeState build_asymmetric(double alpha, double beta, double phi, int cutoff);
TwoModeState build_cat(Parity parity, double alpha, double beta, double phi, int cutoff);
TwoModeState build_state(const StateSpec& spec, int cutoff);

/// Largest |displacement| a state of this spec contains.
double max_displacement(const StateSpec& spec);

double reduce_phase(double phi);

const char* to_string(Family family) noexcept;
Family parse_family(std::string_view name);

}  // namespace chsh
