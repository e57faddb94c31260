#include "activemars/design.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "activemars/rng.hpp"

namespace activemars {

Eigen::MatrixXd latin_hypercube(std::size_t n, std::size_t p, std::uint64_t seed) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  std::vector<std::size_t> strata(n);
  for (std::size_t j = 0; j < p; ++j) {
    CounterRng rng(seed, j);
    std::iota(strata.begin(), strata.end(), std::size_t{0});
    std::shuffle(strata.begin(), strata.end(), rng);
    for (std::size_t i = 0; i < n; ++i) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (static_cast<double>(strata[i]) + rng.uniform()) / static_cast<double>(n);
    }
  }
  return x;
}

}  // namespace activemars
