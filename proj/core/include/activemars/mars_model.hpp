#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "activemars/affine_map.hpp"

namespace activemars {

/// One factor [s (x_i - t)]_+ of a basis function.
struct HingeTerm {
  std::size_t input = 0;
  int sign = 1;  // -1 or +1
  double knot = 0.0;

  double value(double x) const {
    const double v = sign * (x - knot);
    return v > 0.0 ? v : 0.0;
  }
  /// chi(x): 1 where the hinge is in its linear piece.
  bool active_at(double x) const { return sign * (x - knot) > 0.0; }

  bool operator==(const HingeTerm&) const = default;
};

/// Product of hinge terms over distinct inputs. Inputs not listed have
/// activation indicator u = 0 and contribute a factor of 1.
class BasisFunction {
 public:
  BasisFunction() = default;
  /// Terms are sorted by input. Throws InputError on repeated inputs, a sign
  /// other than +-1, or a knot outside [0, 1].
  explicit BasisFunction(std::vector<HingeTerm> terms);

  const std::vector<HingeTerm>& terms() const { return terms_; }
  std::size_t degree() const { return terms_.size(); }

  /// Term acting on `input`, or nullptr when u = 0 for that input.
  const HingeTerm* term_for(std::size_t input) const;
  bool uses(std::size_t input) const { return term_for(input) != nullptr; }

  double evaluate(std::span<const double> x) const;

  bool operator==(const BasisFunction&) const = default;

 private:
  std::vector<HingeTerm> terms_;
};

/// f(x) = intercept + sum_m coefficient_m * B_m(x).
///
/// Immutable after construction. evaluate() and gradient() work in model
/// coordinates (the unit-scaled inputs the basis was fitted on); the *_native
/// variants first apply the optional input transform z = A x + b.
class MarsModel {
 public:
  MarsModel() = default;
  /// Throws InputError if coefficient and basis counts differ, a term names an
  /// input >= p, or the transform dimension is not p.
  MarsModel(std::size_t p, double intercept, std::vector<double> coefficients,
            std::vector<BasisFunction> basis,
            std::optional<AffineMap> input_transform = std::nullopt);

  std::size_t dimension() const { return p_; }
  std::size_t size() const { return basis_.size(); }
  double intercept() const { return intercept_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  const std::vector<BasisFunction>& basis() const { return basis_; }
  const std::optional<AffineMap>& input_transform() const { return transform_; }

  /// Largest number of inputs in any basis function.
  std::size_t max_interaction() const;

  double evaluate(std::span<const double> x) const;
  double evaluate(const Eigen::VectorXd& x) const;

  /// Analytic gradient. Throws KnotBoundary if x sits exactly on the knot of
  /// an active term of a basis function with nonzero coefficient.
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;

  double evaluate_native(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient_native(const Eigen::VectorXd& x) const;

  /// Evaluate at each row of X (model coordinates).
  Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;

  MarsModel with_transform(std::optional<AffineMap> transform) const;
  MarsModel with_coefficients(std::vector<double> coefficients) const;

  bool operator==(const MarsModel& other) const;

 private:
  std::size_t p_ = 0;
  double intercept_ = 0.0;
  std::vector<double> coefficients_;
  std::vector<BasisFunction> basis_;
  std::optional<AffineMap> transform_;
};

/// Training pairs (x_i, y_i).
struct DatasetSpec {
  Eigen::MatrixXd design;
  Eigen::VectorXd response;

  std::size_t size() const { return static_cast<std::size_t>(design.rows()); }
  std::size_t dimension() const { return static_cast<std::size_t>(design.cols()); }
  /// Throws InputError unless n >= 1, sizes agree and every entry is finite.
  void validate() const;
};

}  // namespace activemars
