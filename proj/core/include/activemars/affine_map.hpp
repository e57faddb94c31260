#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "activemars/measures.hpp"

namespace activemars {

/// z = A x + b with invertible A. Diagonal maps keep only the diagonal.
class AffineMap {
 public:
  /// Throws InputError if A is not square, sizes disagree, or A is
  /// numerically singular (condition number above 1e12).
  AffineMap(Eigen::MatrixXd matrix, Eigen::VectorXd offset);

  static AffineMap diagonal(Eigen::VectorXd scales, Eigen::VectorXd offset);
  static AffineMap identity(std::size_t p);

  std::size_t dimension() const { return static_cast<std::size_t>(offset_.size()); }
  bool is_diagonal() const { return diagonal_.has_value(); }

  /// Dense copy of A.
  Eigen::MatrixXd matrix() const;
  /// Only valid when is_diagonal().
  const Eigen::VectorXd& diagonal_entries() const { return *diagonal_; }
  const Eigen::VectorXd& offset() const { return offset_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd apply_inverse(const Eigen::VectorXd& z) const;

  /// A^T M A: maps a C matrix taken in z-coordinates back to x-coordinates.
  Eigen::MatrixXd pull_back(const Eigen::MatrixXd& c_z) const;
  /// A^T g: maps a z-gradient to an x-gradient.
  Eigen::VectorXd pull_back_gradient(const Eigen::VectorXd& g_z) const;

  bool operator==(const AffineMap& other) const;

 private:
  AffineMap() = default;

  std::optional<Eigen::VectorXd> diagonal_;
  Eigen::MatrixXd dense_;
  Eigen::VectorXd offset_;
};

/// Whitening of a Gaussian prior: z = cov^{-1/2} (x - mean) ~ N(0, I), using
/// the symmetric square root. Throws InputError unless cov is SPD.
struct Standardization {
  AffineMap map;
  ProductPrior measure;  // p standard normals
};
Standardization standardize(const GaussianPrior& prior);

}  // namespace activemars
