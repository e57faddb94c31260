#include "activemars/mars_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "activemars/errors.hpp"

namespace activemars {

BasisFunction::BasisFunction(std::vector<HingeTerm> terms) : terms_(std::move(terms)) {
  std::sort(terms_.begin(), terms_.end(),
            [](const HingeTerm& a, const HingeTerm& b) { return a.input < b.input; });
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const HingeTerm& t = terms_[k];
    if (k > 0 && terms_[k - 1].input == t.input) {
      throw InputError("basis function uses input " + std::to_string(t.input) + " twice");
    }
    if (t.sign != 1 && t.sign != -1) throw InputError("hinge sign must be +1 or -1");
    if (!(t.knot >= 0.0 && t.knot <= 1.0)) throw InputError("knot out of [0,1]");
  }
}

const HingeTerm* BasisFunction::term_for(std::size_t input) const {
  for (const HingeTerm& t : terms_) {
    if (t.input == input) return &t;
    if (t.input > input) break;
  }
  return nullptr;
}

double BasisFunction::evaluate(std::span<const double> x) const {
  double v = 1.0;
  for (const HingeTerm& t : terms_) {
    v *= t.value(x[t.input]);
    if (v == 0.0) return 0.0;
  }
  return v;
}

MarsModel::MarsModel(std::size_t p, double intercept, std::vector<double> coefficients,
                     std::vector<BasisFunction> basis, std::optional<AffineMap> input_transform)
    : p_(p),
      intercept_(intercept),
      coefficients_(std::move(coefficients)),
      basis_(std::move(basis)),
      transform_(std::move(input_transform)) {
  if (p_ == 0) throw InputError("model dimension must be positive");
  if (coefficients_.size() != basis_.size()) {
    throw InputError("coefficient count " + std::to_string(coefficients_.size()) +
                     " differs from basis count " + std::to_string(basis_.size()));
  }
  if (!std::isfinite(intercept_)) throw InputError("intercept must be finite");
  for (double c : coefficients_) {
    if (!std::isfinite(c)) throw InputError("coefficients must be finite");
  }
  for (const BasisFunction& b : basis_) {
    for (const HingeTerm& t : b.terms()) {
      if (t.input >= p_) {
        throw InputError("basis term input " + std::to_string(t.input) + " out of range");
      }
    }
  }
  if (transform_ && transform_->dimension() != p_) {
    throw InputError("input transform dimension differs from model dimension");
  }
}

std::size_t MarsModel::max_interaction() const {
  std::size_t j = 0;
  for (const BasisFunction& b : basis_) j = std::max(j, b.degree());
  return j;
}

double MarsModel::evaluate(std::span<const double> x) const {
  if (x.size() != p_) throw InputError("point dimension differs from model dimension");
  double f = intercept_;
  for (std::size_t m = 0; m < basis_.size(); ++m) f += coefficients_[m] * basis_[m].evaluate(x);
  return f;
}

double MarsModel::evaluate(const Eigen::VectorXd& x) const {
  return evaluate(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

Eigen::VectorXd MarsModel::gradient(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != p_) {
    throw InputError("point dimension differs from model dimension");
  }
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
  for (std::size_t m = 0; m < basis_.size(); ++m) {
    const auto& terms = basis_[m].terms();
    if (coefficients_[m] == 0.0) continue;
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const HingeTerm& t = terms[k];
      const double xi = x(static_cast<Eigen::Index>(t.input));
      if (xi == t.knot) throw KnotBoundary(t.input, t.knot);
      if (!t.active_at(xi)) continue;
      double rest = coefficients_[m] * t.sign;
      for (std::size_t l = 0; l < terms.size() && rest != 0.0; ++l) {
        if (l != k) rest *= terms[l].value(x(static_cast<Eigen::Index>(terms[l].input)));
      }
      g(static_cast<Eigen::Index>(t.input)) += rest;
    }
  }
  return g;
}

double MarsModel::evaluate_native(const Eigen::VectorXd& x) const {
  return transform_ ? evaluate(transform_->apply(x)) : evaluate(x);
}

Eigen::VectorXd MarsModel::gradient_native(const Eigen::VectorXd& x) const {
  if (!transform_) return gradient(x);
  return transform_->pull_back_gradient(gradient(transform_->apply(x)));
}

Eigen::VectorXd MarsModel::predict(const Eigen::MatrixXd& X) const {
  if (static_cast<std::size_t>(X.cols()) != p_) {
    throw InputError("design width differs from model dimension");
  }
  Eigen::VectorXd out(X.rows());
  Eigen::VectorXd row(X.cols());
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    row = X.row(r).transpose();
    out(r) = evaluate(row);
  }
  return out;
}

MarsModel MarsModel::with_transform(std::optional<AffineMap> transform) const {
  return MarsModel(p_, intercept_, coefficients_, basis_, std::move(transform));
}

MarsModel MarsModel::with_coefficients(std::vector<double> coefficients) const {
  return MarsModel(p_, intercept_, std::move(coefficients), basis_, transform_);
}

bool MarsModel::operator==(const MarsModel& other) const {
  return p_ == other.p_ && intercept_ == other.intercept_ &&
         coefficients_ == other.coefficients_ && basis_ == other.basis_ &&
         transform_ == other.transform_;
}

void DatasetSpec::validate() const {
  if (design.rows() < 1) throw InputError("dataset has no rows");
  if (design.cols() < 1) throw InputError("dataset has no input columns");
  if (response.size() != design.rows()) {
    throw InputError("response length differs from the number of design rows");
  }
  if (!design.allFinite()) throw InputError("dataset inputs must be finite");
  if (!response.allFinite()) throw InputError("dataset responses must be finite");
}

}  // namespace activemars
