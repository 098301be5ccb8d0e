#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace chsh {

using Complex = std::complex<double>;

/// Largest |alpha| accepted by the coherent-state constructors.
inline constexpr double kDefaultMaxDisplacement = 10.0;

enum class Parity { Even, Odd };

/// Amplitudes of one bosonic mode over the number states |0>..|N-1>.
class FockVector {
 public:
  explicit FockVector(Eigen::VectorXcd amplitudes);

  int cutoff() const noexcept { return static_cast<int>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](int n) const { return amplitudes_[n]; }

  double norm_squared() const { return amplitudes_.squaredNorm(); }

 private:
  Eigen::VectorXcd amplitudes_;
};

/// Truncated |alpha> = exp(-alpha^2/2) sum_n alpha^n / sqrt(n!) |n>.
FockVector coherent_amplitudes(double alpha, int cutoff);

/// Normalized cat state N_pm (|alpha> +- |-alpha>), supported on even or
/// odd number states only.
FockVector cat_amplitudes(double alpha, Parity parity, int cutoff);

/// <u|v>.
Complex overlap(const FockVector& u, const FockVector& v);

/// Poisson tail mass sum_{n >= N} exp(-alpha^2) alpha^{2n} / n!, i.e. the
/// norm deficit of coherent_amplitudes(alpha, N).
double truncation_error(double alpha, int cutoff);

/// max(40, ceil(alpha^2 + 10 alpha + 20)) for the largest |alpha| in play.
int default_cutoff(double alpha_max);

/// Truncated annihilation operator, a|n> = sqrt(n)|n-1>.
Eigen::MatrixXd annihilation_matrix(int cutoff);

const char* to_string(Parity parity) noexcept;

}  // namespace chsh
