#include "activemars/incremental.hpp"

#include <string>

#include "activemars/digest.hpp"
#include "activemars/errors.hpp"

namespace activemars {

IncrementalCBuilder::IncrementalCBuilder(MarsModel model, const ProductPrior& prior)
    : p_(model.dimension()),
      intercept_(model.intercept()),
      basis_(model.basis()),
      coefficients_(model.coefficients()),
      transform_(model.input_transform()),
      prior_digest_(prior_digest(PriorSpec{prior})) {
  validate(PriorSpec{prior});
  cache_ = compute_integrals(basis_, model_coordinate_measures(model, prior), 1);
}

void IncrementalCBuilder::check_basis(const BasisFunction& b) const {
  for (const HingeTerm& t : b.terms()) {
    if (t.input >= p_) throw InputError("basis term input " + std::to_string(t.input) + " out of range");
  }
}

CMatrix IncrementalCBuilder::birth(BasisFunction basis, double coefficient) {
  check_basis(basis);
  basis_.push_back(std::move(basis));
  coefficients_.push_back(coefficient);
  refresh_basis(cache_, basis_, basis_.size() - 1);
  return current();
}

CMatrix IncrementalCBuilder::death(std::size_t m) {
  if (m >= basis_.size()) throw InputError("death: basis index out of range");
  basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(m));
  coefficients_.erase(coefficients_.begin() + static_cast<std::ptrdiff_t>(m));
  const auto n = static_cast<Eigen::Index>(basis_.size());
  const auto k = static_cast<Eigen::Index>(m);
  for (InputIntegrals& t : cache_.inputs) {
    for (Eigen::MatrixXd* mat : {&t.lower, &t.upper, &t.i1, &t.i2, &t.i3}) {
      Eigen::MatrixXd next(n, n);
      const Eigen::Index tail = n - k;
      next.topLeftCorner(k, k) = mat->topLeftCorner(k, k);
      next.topRightCorner(k, tail) = mat->topRightCorner(k, tail);
      next.bottomLeftCorner(tail, k) = mat->bottomLeftCorner(tail, k);
      next.bottomRightCorner(tail, tail) = mat->bottomRightCorner(tail, tail);
      *mat = std::move(next);
    }
  }
  cache_.i2_product.reset();
  return current();
}

CMatrix IncrementalCBuilder::mutate(std::size_t m, BasisFunction basis) {
  if (m >= basis_.size()) throw InputError("mutate: basis index out of range");
  check_basis(basis);
  basis_[m] = std::move(basis);
  refresh_basis(cache_, basis_, m);
  return current();
}

CMatrix IncrementalCBuilder::update_coefficients(std::vector<double> coefficients) {
  if (coefficients.size() != basis_.size()) {
    throw InputError("coefficient count differs from basis count");
  }
  coefficients_ = std::move(coefficients);
  return current();
}

CMatrix IncrementalCBuilder::current() const {
  const Eigen::MatrixXd c_model = assemble(basis_, coefficients_, cache_);
  const MarsModel m = model();
  CMatrix out;
  out.values = transform_ ? transform_->pull_back(c_model) : c_model;
  out.prior_digest = prior_digest_;
  out.model_digest = model_digest(m);
  out.scale = Scale::native;
  return out;
}

MarsModel IncrementalCBuilder::model() const {
  return MarsModel(p_, intercept_, coefficients_, basis_, transform_);
}

}  // namespace activemars
