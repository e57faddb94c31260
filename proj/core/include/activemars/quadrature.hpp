#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace activemars::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

struct Options {
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  std::size_t max_subdivisions = 4000;
};

/// Globally adaptive 15-point Gauss-Kronrod on [a, b]. Infinite ends are
/// mapped to finite ones with x = a + t / (1 - t). Optional breakpoints split
/// the range up front (ones outside (a, b) are ignored). Throws
/// ConvergenceError when the error target is not met within the cap.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& options = {}, const std::vector<double>& breakpoints = {});

}  // namespace activemars::quadrature
