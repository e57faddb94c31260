#pragma once

#include <cstddef>

#include "activemars/mars_model.hpp"

namespace activemars {

struct FitConfig {
  /// Cap on non-constant basis functions. 0 picks min(200, max(100, 2p)).
  std::size_t max_basis = 0;
  /// Cap J on the number of inputs per basis function.
  std::size_t max_interaction = 3;
  /// Knot candidates per input: the distinct observed values, thinned to this
  /// many equally spaced quantiles when there are more.
  std::size_t knot_grid_size = 64;
  /// Forward pass stops once the best candidate removes less than this
  /// fraction of the total sum of squares.
  double min_improvement = 1e-5;
  /// GCV charge per distinct knot in the backward pass.
  double gcv_penalty = 2.0;
};

/// Deterministic forward/backward MARS fit.
///
/// Forward pass: greedily add mirrored hinge pairs B_parent * [+-(x_v - t)]_+
/// maximising the drop in residual sum of squares, subject to the interaction
/// cap. Ties go to the lowest input, then the lowest knot, then the lowest
/// parent. Backward pass: drop basis functions one at a time by least RSS
/// increase and keep the subset with the smallest GCV. Coefficients are
/// least-squares.
///
/// Inputs are expected on [0, 1]; knots outside that range are never
/// proposed. Fewer than two rows or a constant response yields an
/// intercept-only model.
MarsModel fit_greedy(const DatasetSpec& data, const FitConfig& config = {});

/// Root-mean-square error of the model on a dataset (model coordinates).
double rmse(const MarsModel& model, const DatasetSpec& data);

}  // namespace activemars
