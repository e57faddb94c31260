#pragma once

#include <cstddef>
#include <optional>

#include <Eigen/Dense>

#include "activemars/affine_map.hpp"
#include "activemars/cmatrix.hpp"

namespace activemars {

/// Eigen-decomposition C = W diag(lambda) W^T with lambda descending.
///
/// Eigenvectors are oriented so that the first entry of largest magnitude in
/// each column is positive.
struct ActiveSubspace {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;  // columns
  std::size_t chosen_dim = 0;    // 0 until a dimension is chosen
  Eigen::VectorXd activity_scores;

  std::size_t dimension() const { return static_cast<std::size_t>(eigenvalues.size()); }
  /// First chosen_dim eigenvectors (W1).
  Eigen::MatrixXd active_directions() const;
};

/// Symmetric eigensolver path only. Eigenvalues in [-1e-8 lambda_max, 0) are
/// clamped to zero; anything more negative, or asymmetry beyond 1e-10
/// relative, throws InputError.
ActiveSubspace decompose(const Eigen::MatrixXd& c);
ActiveSubspace decompose(const CMatrix& c);

/// AS_i = sum_{j <= k} lambda_j w_ij^2; k = 0 means all p eigenpairs. With
/// normalize the scores are divided by their maximum (if positive).
Eigen::VectorXd activity_scores(const ActiveSubspace& subspace, std::size_t k = 0,
                                bool normalize = false);

/// Activity scores on the unit scale: C is first mapped through
/// unit_to_native (u -> x = A u + b) and re-decomposed.
Eigen::VectorXd activity_scores(const CMatrix& c, const AffineMap& unit_to_native,
                                std::size_t k = 0, bool normalize = false);

struct DimensionPolicy {
  enum class Kind { gap, energy };
  Kind kind = Kind::gap;
  /// Gap policy: when the smallest ratio lambda_{r+1}/lambda_r exceeds this,
  /// no gap is considered significant and p is returned.
  double max_gap_ratio = 1.0;
  /// Energy policy: smallest r with sum_{j<=r} lambda_j >= energy * sum lambda.
  double energy = 0.99;
};

struct DimensionChoice {
  std::size_t dim = 0;
  bool all_zero = false;  // every eigenvalue is zero; dim is 0
};

DimensionChoice choose_dimension(const Eigen::VectorXd& eigenvalues,
                                 const DimensionPolicy& policy = {});
DimensionChoice choose_dimension(const ActiveSubspace& subspace,
                                 const DimensionPolicy& policy = {});

/// X W1 (n x r). Requires chosen_dim >= 1.
Eigen::MatrixXd project(const ActiveSubspace& subspace, const Eigen::MatrixXd& X);

/// (1/p) ||C_hat - C_true||_F.
double subspace_error(const Eigen::MatrixXd& c_hat, const Eigen::MatrixXd& c_true);
/// min(||w - w_hat||, ||w + w_hat||).
double direction_error(const Eigen::VectorXd& w_hat, const Eigen::VectorXd& w_true);

}  // namespace activemars
