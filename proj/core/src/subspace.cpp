#include "activemars/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "activemars/errors.hpp"

namespace activemars {

Eigen::MatrixXd ActiveSubspace::active_directions() const {
  return eigenvectors.leftCols(static_cast<Eigen::Index>(chosen_dim));
}

ActiveSubspace decompose(const Eigen::MatrixXd& c) {
  if (c.rows() != c.cols() || c.rows() == 0) throw InputError("C must be a non-empty square matrix");
  if (!c.allFinite()) throw InputError("C has non-finite entries");
  const CMatrixCheck diag = check(c);
  if (!diag.symmetric) {
    throw InputError("C is not symmetric (relative asymmetry " + std::to_string(diag.asymmetry) + ")");
  }
  const Eigen::MatrixXd sym = 0.5 * (c + c.transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  const auto p = sym.rows();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return eig.eigenvalues()(a) > eig.eigenvalues()(b);
  });

  ActiveSubspace out;
  out.eigenvalues.resize(p);
  out.eigenvectors.resize(p, p);
  for (Eigen::Index k = 0; k < p; ++k) {
    out.eigenvalues(k) = eig.eigenvalues()(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = eig.eigenvectors().col(order[static_cast<std::size_t>(k)]);
  }
  const double top = std::max(out.eigenvalues(0), 0.0);
  for (Eigen::Index k = 0; k < p; ++k) {
    double& v = out.eigenvalues(k);
    if (v < 0.0) {
      if (v < -1e-8 * top) {
        throw InputError("C is not positive semidefinite (eigenvalue " + std::to_string(v) + ")");
      }
      v = 0.0;
    }
    Eigen::Index lead = 0;
    out.eigenvectors.col(k).cwiseAbs().maxCoeff(&lead);
    if (out.eigenvectors(lead, k) < 0.0) out.eigenvectors.col(k) *= -1.0;
  }
  out.activity_scores = activity_scores(out);
  return out;
}

ActiveSubspace decompose(const CMatrix& c) { return decompose(c.values); }

Eigen::VectorXd activity_scores(const ActiveSubspace& subspace, std::size_t k, bool normalize) {
  const auto p = static_cast<Eigen::Index>(subspace.dimension());
  const Eigen::Index use = k == 0 ? p : std::min<Eigen::Index>(static_cast<Eigen::Index>(k), p);
  Eigen::VectorXd scores = Eigen::VectorXd::Zero(p);
  for (Eigen::Index j = 0; j < use; ++j) {
    scores += subspace.eigenvalues(j) * subspace.eigenvectors.col(j).cwiseAbs2();
  }
  if (normalize) {
    const double top = scores.maxCoeff();
    if (top > 0.0) scores /= top;
  }
  return scores;
}

Eigen::VectorXd activity_scores(const CMatrix& c, const AffineMap& unit_to_native, std::size_t k,
                                bool normalize) {
  return activity_scores(decompose(change_coordinates(c, unit_to_native, Scale::unit)), k, normalize);
}

DimensionChoice choose_dimension(const Eigen::VectorXd& eigenvalues, const DimensionPolicy& policy) {
  const auto p = static_cast<std::size_t>(eigenvalues.size());
  const Eigen::VectorXd lam = eigenvalues.cwiseMax(0.0);
  if (p == 0 || !(lam.maxCoeff() > 0.0)) return {0, true};
  if (p == 1) return {1, false};

  if (policy.kind == DimensionPolicy::Kind::energy) {
    const double total = lam.sum();
    double cumulative = 0.0;
    for (std::size_t r = 0; r < p; ++r) {
      cumulative += lam(static_cast<Eigen::Index>(r));
      if (cumulative >= policy.energy * total * (1.0 - 1e-12)) return {r + 1, false};
    }
    return {p, false};
  }

  double best_ratio = kInf;
  std::size_t best = p;
  for (std::size_t r = 1; r < p; ++r) {
    const double here = lam(static_cast<Eigen::Index>(r - 1));
    const double next = lam(static_cast<Eigen::Index>(r));
    const double ratio = here > 0.0 ? next / here : 1.0;
    if (ratio < best_ratio) {
      best_ratio = ratio;
      best = r;
    }
  }
  if (best_ratio > policy.max_gap_ratio) return {p, false};
  return {best, false};
}

DimensionChoice choose_dimension(const ActiveSubspace& subspace, const DimensionPolicy& policy) {
  return choose_dimension(subspace.eigenvalues, policy);
}

Eigen::MatrixXd project(const ActiveSubspace& subspace, const Eigen::MatrixXd& X) {
  if (subspace.chosen_dim == 0) throw InputError("project: no subspace dimension chosen");
  if (static_cast<std::size_t>(X.cols()) != subspace.dimension()) {
    throw InputError("project: data width differs from subspace dimension");
  }
  return X * subspace.active_directions();
}

double subspace_error(const Eigen::MatrixXd& c_hat, const Eigen::MatrixXd& c_true) {
  if (c_hat.rows() != c_true.rows() || c_hat.cols() != c_true.cols() || c_hat.rows() == 0) {
    throw InputError("subspace_error: matrix sizes differ");
  }
  return (c_hat - c_true).norm() / static_cast<double>(c_true.rows());
}

double direction_error(const Eigen::VectorXd& w_hat, const Eigen::VectorXd& w_true) {
  if (w_hat.size() != w_true.size()) throw InputError("direction_error: vector sizes differ");
  return std::min((w_true - w_hat).norm(), (w_true + w_hat).norm());
}

}  // namespace activemars
