#pragma once

#include <cstdint>

#include "activemars/mars_model.hpp"
#include "activemars/measures.hpp"

namespace bench {

/// M random hinge products on p inputs with up to `degree` factors each.
activemars::MarsModel random_model(std::size_t p, std::size_t m, std::size_t degree,
                                   std::uint64_t seed);

activemars::ProductPrior unit_prior(std::size_t p);

}  // namespace bench
