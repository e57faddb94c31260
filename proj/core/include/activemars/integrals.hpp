#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "activemars/mars_model.hpp"
#include "activemars/moments.hpp"

namespace activemars {

/// Interval on which two hinge indicators are both switched on.
struct IntegrationBounds {
  double lower;
  double upper;  // >= lower; equal means empty
};

/// Bounds for the pair of terms (nullptr = input inactive in that basis).
/// Inactive terms contribute no indicator, so both inactive gives (-inf, inf).
IntegrationBounds integration_bounds(const HingeTerm* first, const HingeTerm* second);
IntegrationBounds integration_bounds(const BasisFunction& first,
                                     const BasisFunction& second, std::size_t input);

/// The univariate integrals for one (m1, m2, input) triple.
struct PairIntegrals {
  IntegrationBounds bounds;
  double i1_forward;   // I1[m1, m2] = int h'_{m1} h_{m2} rho
  double i1_backward;  // I1[m2, m1]
  double i2;           // I2[m1, m2] = int h_{m1} h_{m2} rho
  double i3;           // I3[m1, m2] = int h'_{m1} h'_{m2} rho
};

PairIntegrals pair_integrals(const BasisFunction& first, const BasisFunction& second,
                             std::size_t input, const CoordinateMeasure& measure);

/// Per-input M x M tables.
struct InputIntegrals {
  Eigen::MatrixXd lower;  // symmetric
  Eigen::MatrixXd upper;  // symmetric, >= lower
  Eigen::MatrixXd i1;     // generally asymmetric
  Eigen::MatrixXd i2;     // symmetric
  Eigen::MatrixXd i3;     // symmetric
};

/// O(p M^2) store of every univariate integral needed to assemble C.
struct IntegralCache {
  std::vector<CoordinateMeasure> measures;
  std::vector<InputIntegrals> inputs;
  /// Elementwise product over all inputs of I2; only filled on request.
  std::optional<Eigen::MatrixXd> i2_product;

  std::size_t dimension() const { return inputs.size(); }
  std::size_t basis_count() const {
    return inputs.empty() ? 0 : static_cast<std::size_t>(inputs.front().i2.rows());
  }
  void materialize_i2_product();
};

/// Fill the cache for `basis` under independent coordinate measures. Only the
/// upper triangle of the symmetric tables is computed. Work is split over
/// inputs on `threads` threads (0 = default).
IntegralCache compute_integrals(const std::vector<BasisFunction>& basis,
                                std::vector<CoordinateMeasure> measures,
                                unsigned threads = 0);
IntegralCache compute_integrals(const MarsModel& model, const ProductPrior& prior,
                                unsigned threads = 0);

/// Recompute row and column m of every table (after a birth or mutation).
void refresh_basis(IntegralCache& cache, const std::vector<BasisFunction>& basis,
                   std::size_t m);

}  // namespace activemars
