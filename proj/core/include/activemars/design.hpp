#pragma once

#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

namespace activemars {

/// n x p Latin hypercube on (0, 1)^p: each column places exactly one point in
/// each of the n equal strata, jittered uniformly within the stratum.
Eigen::MatrixXd latin_hypercube(std::size_t n, std::size_t p, std::uint64_t seed);

}  // namespace activemars
