#pragma once

// Test functions with known C matrices, and dataset builders around them.

#include <cstdint>

#include <Eigen/Dense>

#include "activemars/mars_model.hpp"
#include "activemars/measures.hpp"

namespace testing {

/// x1^2 + x1 x2 + x2^3 / 9 on the first two inputs; any further inputs are inert.
double quadratic_benchmark(const Eigen::VectorXd& x);
Eigen::VectorXd quadratic_benchmark_gradient(const Eigen::VectorXd& x);

/// Its C under Uniform(0,1)^2: (1/45) [[120, 50], [50, 21]].
Eigen::Matrix2d quadratic_benchmark_C_unit();
/// Its C under the uniform law on {x2 < x1}: (1/540) [[1710, 741], [741, 322]].
Eigen::Matrix2d quadratic_benchmark_C_triangle();
/// Leading eigenvector quoted for the unit-square case.
Eigen::Vector2d quadratic_benchmark_direction();

/// The quadratic benchmark composed with two linear projections on [0,1]^6.
double ridge_benchmark(const Eigen::VectorXd& x);
Eigen::VectorXd ridge_benchmark_weights_first();
Eigen::VectorXd ridge_benchmark_weights_second();

/// Latin hypercube sample of size n in p dimensions with f evaluated per row.
activemars::DatasetSpec make_dataset(double (*f)(const Eigen::VectorXd&), std::size_t n, std::size_t p,
                                     std::uint64_t seed);

/// Staircase of L boxes inside the triangle {x2 < x1} of the unit square:
/// box l spans x1 in (l/(L+1), 1), x2 in ((l-1)/(L+1), l/(L+1)).
activemars::PriorSpec triangle_staircase_prior(std::size_t boxes);

}  // namespace testing
