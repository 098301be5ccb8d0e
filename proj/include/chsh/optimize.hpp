#pragma once

#include <functional>
#include <vector>

namespace chsh::opt {

struct LineOptimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a maximum of f on [lo, hi]; assumes f is
/// unimodal there.  Stops once the bracket is narrower than `tolerance`.
LineOptimum golden_section_maximize(const std::function<double(double)>& f, double lo, double hi,
                                    double tolerance = 1e-12, int max_iterations = 200);

struct SimplexOptions {
  double initial_step = 0.01;
  double f_tolerance = 1e-14;
  int max_iterations = 4000;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead minimization.  f may return +inf to mark infeasible points.
/// `stop_below` ends the search early once a vertex reaches that value.
SimplexResult nelder_mead_minimize(const std::function<double(const std::vector<double>&)>& f,
                                   std::vector<double> start, const SimplexOptions& options = {},
                                   double stop_below = -1e300);

}  // namespace chsh::opt
