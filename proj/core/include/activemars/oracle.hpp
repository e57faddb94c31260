#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "activemars/mars_model.hpp"
#include "activemars/measures.hpp"
#include "activemars/moments.hpp"

namespace activemars {

/// Ground-truth estimate from an independent numerical route.
struct OracleEstimate {
  enum class Method { quadrature, monte_carlo };

  Eigen::MatrixXd value;                    // 1 x 1 for scalars
  std::optional<Eigen::MatrixXd> std_error;  // present iff monte_carlo
  std::size_t evaluations = 0;
  Method method = Method::quadrature;

  double scalar() const { return value(0, 0); }
};

/// Density of a univariate measure, written from the textbook pdf formulas
/// and independent of the closed-form moment code.
double density(const UnivariateMeasure& m, double x);

/// Adaptive quadrature of integral_a^b x^r rho(x) dx.
OracleEstimate quad_truncated_moment(int r, double a, double b,
                                     const UnivariateMeasure& m, double tol = 1e-12);

struct QuadCOptions {
  double tol = 1e-13;
};

/// C from per-input quadrature of the I1/I2/I3 integrands (pieces split at the
/// knots) assembled with the plain quadruple sum. Product priors and mixtures
/// of product priors only; diagonal input transforms supported.
OracleEstimate quad_C(const MarsModel& model, const PriorSpec& prior,
                      const QuadCOptions& options = {});

/// Monte Carlo mean of grad f grad f^T in native coordinates with analytic
/// gradients. Samples landing exactly on a knot are nudged by 1e-12.
/// Bit-reproducible for a given seed whatever the thread count.
OracleEstimate mc_C(const MarsModel& model, const PriorSpec& prior, std::size_t samples,
                    std::uint64_t seed, unsigned threads = 0);

}  // namespace activemars
