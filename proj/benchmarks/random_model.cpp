#include "random_model.hpp"

#include <algorithm>
#include <numeric>

#include "activemars/rng.hpp"

namespace bench {

activemars::MarsModel random_model(std::size_t p, std::size_t m, std::size_t degree,
                                   std::uint64_t seed) {
  using namespace activemars;
  CounterRng rng(seed, 0);
  std::vector<BasisFunction> basis;
  std::vector<double> coefs;
  std::vector<std::size_t> inputs(p);
  for (std::size_t k = 0; k < m; ++k) {
    std::iota(inputs.begin(), inputs.end(), std::size_t{0});
    std::shuffle(inputs.begin(), inputs.end(), rng);
    const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(std::min(degree, p)));
    std::vector<HingeTerm> terms;
    for (std::size_t j = 0; j < std::min(d, p); ++j) {
      terms.push_back({inputs[j], rng.uniform() < 0.5 ? -1 : 1, rng.uniform()});
    }
    basis.emplace_back(std::move(terms));
    coefs.push_back(2.0 * rng.uniform() - 1.0);
  }
  return MarsModel(p, 0.5, std::move(coefs), std::move(basis));
}

activemars::ProductPrior unit_prior(std::size_t p) {
  return {std::vector<activemars::UnivariateMeasure>(p, activemars::Uniform{})};
}

}  // namespace bench
