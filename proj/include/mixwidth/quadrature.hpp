#pragma once

#include <cstddef>
#include <functional>

namespace mixwidth {

struct QuadratureResult {
  double value;
  double error;  // Kronrod-Gauss difference summed over the final partition
  std::size_t intervals;
  bool converged;
};

/// Globally adaptive 7-point Gauss / 15-point Kronrod quadrature on [a, b]:
/// the interval with the largest error estimate is bisected until the total
/// estimate drops below abs_tol or max_intervals is reached.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, std::size_t max_intervals = 20000);

}  // namespace mixwidth
