#include "activemars/affine_map.hpp"

#include <cmath>

#include "activemars/errors.hpp"

namespace activemars {

namespace {
constexpr double kMaxCondition = 1e12;
}

AffineMap::AffineMap(Eigen::MatrixXd matrix, Eigen::VectorXd offset)
    : dense_(std::move(matrix)), offset_(std::move(offset)) {
  if (dense_.rows() != dense_.cols() || dense_.rows() != offset_.size()) {
    throw InputError("affine map: matrix must be square and match the offset length");
  }
  if (!dense_.allFinite() || !offset_.allFinite()) {
    throw InputError("affine map: non-finite entries");
  }
  if (dense_.size() > 0) {
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense_);
    const auto& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    if (!(smallest > 0.0) || sv(0) / smallest > kMaxCondition) {
      throw InputError("affine map: matrix is singular or ill-conditioned");
    }
  }
  if (dense_.isDiagonal(0.0)) {
    diagonal_ = dense_.diagonal();
    dense_.resize(0, 0);
  }
}

AffineMap AffineMap::diagonal(Eigen::VectorXd scales, Eigen::VectorXd offset) {
  if (scales.size() != offset.size()) {
    throw InputError("affine map: scale and offset lengths differ");
  }
  if (!scales.allFinite() || !offset.allFinite()) {
    throw InputError("affine map: non-finite entries");
  }
  if (scales.size() > 0) {
    const Eigen::VectorXd mags = scales.cwiseAbs();
    if (!(mags.minCoeff() > 0.0) || mags.maxCoeff() / mags.minCoeff() > kMaxCondition) {
      throw InputError("affine map: matrix is singular or ill-conditioned");
    }
  }
  AffineMap out;
  out.diagonal_ = std::move(scales);
  out.offset_ = std::move(offset);
  return out;
}

AffineMap AffineMap::identity(std::size_t p) {
  const auto n = static_cast<Eigen::Index>(p);
  return diagonal(Eigen::VectorXd::Ones(n), Eigen::VectorXd::Zero(n));
}

Eigen::MatrixXd AffineMap::matrix() const {
  if (diagonal_) return diagonal_->asDiagonal();
  return dense_;
}

Eigen::VectorXd AffineMap::apply(const Eigen::VectorXd& x) const {
  if (diagonal_) return diagonal_->cwiseProduct(x) + offset_;
  return dense_ * x + offset_;
}

Eigen::VectorXd AffineMap::apply_inverse(const Eigen::VectorXd& z) const {
  if (diagonal_) return (z - offset_).cwiseQuotient(*diagonal_);
  return dense_.partialPivLu().solve(z - offset_);
}

Eigen::MatrixXd AffineMap::pull_back(const Eigen::MatrixXd& c_z) const {
  if (diagonal_) return diagonal_->asDiagonal() * c_z * diagonal_->asDiagonal();
  return dense_.transpose() * c_z * dense_;
}

Eigen::VectorXd AffineMap::pull_back_gradient(const Eigen::VectorXd& g_z) const {
  if (diagonal_) return diagonal_->cwiseProduct(g_z);
  return dense_.transpose() * g_z;
}

bool AffineMap::operator==(const AffineMap& other) const {
  return offset_ == other.offset_ && matrix() == other.matrix();
}

Standardization standardize(const GaussianPrior& prior) {
  validate(PriorSpec{prior});
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(prior.cov);
  const Eigen::VectorXd inv_sqrt = eig.eigenvalues().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd root =
      eig.eigenvectors() * inv_sqrt.asDiagonal() * eig.eigenvectors().transpose();
  const Eigen::MatrixXd sym = 0.5 * (root + root.transpose());
  const auto p = static_cast<std::size_t>(prior.mean.size());
  return {AffineMap(sym, -sym * prior.mean), iid_prior(p, TruncNormal{})};
}

}  // namespace activemars
