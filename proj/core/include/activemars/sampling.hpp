#pragma once

#include <memory>
#include <type_traits>

#include <Eigen/Dense>

#include "activemars/measures.hpp"
#include "activemars/rng.hpp"

namespace activemars {

double sample(const BaseMeasure& m, CounterRng& rng);
double sample(const UnivariateMeasure& m, CounterRng& rng);

template <class M>
  requires std::is_constructible_v<BaseMeasure, const M&> &&
           (!std::is_same_v<M, BaseMeasure>) && (!std::is_same_v<M, UnivariateMeasure>)
double sample(const M& m, CounterRng& rng) {
  return sample(BaseMeasure{m}, rng);
}

/// Draws from any PriorSpec (mixtures by component selection, Gaussians by
/// a Cholesky factor). Factorisations are prepared once.
class PriorSampler {
 public:
  explicit PriorSampler(const PriorSpec& prior);
  ~PriorSampler();
  PriorSampler(PriorSampler&&) noexcept;
  PriorSampler& operator=(PriorSampler&&) noexcept;

  std::size_t dimension() const { return p_; }
  Eigen::VectorXd draw(CounterRng& rng) const;

 private:
  struct Node;
  std::size_t p_;
  std::unique_ptr<Node> root_;
};

}  // namespace activemars
