#pragma once

#include <cstddef>
#include <vector>

#include "activemars/cmatrix.hpp"

namespace activemars {

/// Keeps the integral cache of a changing model so that structured edits
/// (birth, death, mutation, coefficient refresh) only touch the affected rows
/// and columns. Every mutator returns the refreshed C in native coordinates.
///
/// Single writer: callers must not read concurrently with a mutation.
class IncrementalCBuilder {
 public:
  /// Prior must be a product prior (diagonal input transforms allowed).
  IncrementalCBuilder(MarsModel model, const ProductPrior& prior);

  CMatrix birth(BasisFunction basis, double coefficient);
  CMatrix death(std::size_t m);
  CMatrix mutate(std::size_t m, BasisFunction basis);
  CMatrix update_coefficients(std::vector<double> coefficients);

  CMatrix current() const;
  MarsModel model() const;
  const IntegralCache& cache() const { return cache_; }
  std::size_t size() const { return basis_.size(); }

 private:
  void check_basis(const BasisFunction& b) const;

  std::size_t p_;
  double intercept_;
  std::vector<BasisFunction> basis_;
  std::vector<double> coefficients_;
  std::optional<AffineMap> transform_;
  std::string prior_digest_;
  IntegralCache cache_;
};

}  // namespace activemars
