#include "activemars/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>

namespace activemars {

namespace {

constexpr double kDegenerate = 1e-8;

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

std::vector<double> knot_candidates(const VectorXd& column, std::size_t grid) {
  std::vector<double> values(column.data(), column.data() + column.size());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  values.erase(std::remove_if(values.begin(), values.end(),
                              [](double v) { return v < 0.0 || v > 1.0; }),
               values.end());
  if (grid == 0 || values.size() <= grid) return values;
  std::vector<double> thinned;
  thinned.reserve(grid);
  const double step = static_cast<double>(values.size() - 1) / static_cast<double>(grid - 1);
  for (std::size_t k = 0; k < grid; ++k) {
    const auto idx = static_cast<std::size_t>(std::llround(step * static_cast<double>(k)));
    if (thinned.empty() || values[idx] != thinned.back()) thinned.push_back(values[idx]);
  }
  return thinned;
}

struct Candidate {
  double reduction = 0.0;
  std::size_t input = 0;
  double knot = 0.0;
  std::size_t parent = 0;
  bool use_plus = false;
  bool use_minus = false;

  auto key() const { return std::tie(input, knot, parent); }
};

bool better(const Candidate& c, const Candidate& best) {
  if (c.reduction > best.reduction) return true;
  return c.reduction == best.reduction && best.reduction > 0.0 && c.key() < best.key();
}

// Orthonormal basis of the current design, grown one column at a time.
class Orthonormal {
 public:
  explicit Orthonormal(Index n, Index capacity) : q_(n, capacity) {}

  Index cols() const { return k_; }
  auto basis() const { return q_.leftCols(k_); }

  // Append the part of c orthogonal to the span; false if it is degenerate.
  bool append(const VectorXd& c) {
    const double norm2 = c.squaredNorm();
    if (!(norm2 > 0.0)) return false;
    VectorXd v = c;
    for (int pass = 0; pass < 2; ++pass) v -= basis() * (basis().transpose() * v);
    const double rest = v.squaredNorm();
    if (rest < kDegenerate * norm2) return false;
    q_.col(k_++) = v / std::sqrt(rest);
    return true;
  }

 private:
  MatrixXd q_;
  Index k_ = 0;
};

// Score the mirrored pair on input v under one parent for every knot.
void scan_knots(const VectorXd& parent, const VectorXd& x, const std::vector<Index>& order,
                const std::vector<double>& knots, const MatrixXd& q, const VectorXd& r,
                bool single_only, std::size_t input, std::size_t parent_index,
                Candidate& best) {
  const Index k = q.cols();
  // Totals over rows with a nonzero parent.
  double w0 = 0, w1 = 0, w2 = 0, r0 = 0, r1 = 0;
  VectorXd v0 = VectorXd::Zero(k), v1 = VectorXd::Zero(k);
  for (Index i : order) {
    const double b = parent(i);
    if (b == 0.0) continue;
    const double xi = x(i);
    w0 += b * b;
    w1 += b * b * xi;
    w2 += b * b * xi * xi;
    r0 += b * r(i);
    r1 += b * xi * r(i);
    v0.noalias() += b * q.row(i).transpose();
    v1.noalias() += (b * xi) * q.row(i).transpose();
  }
  if (w0 == 0.0) return;

  // Prefix sums over rows with x < t feed the minus hinge.
  double pw0 = 0, pw1 = 0, pw2 = 0, pr0 = 0, pr1 = 0;
  VectorXd pv0 = VectorXd::Zero(k), pv1 = VectorXd::Zero(k);
  std::size_t pos = 0;
  VectorXd qp(k), qm(k);
  for (double t : knots) {
    while (pos < order.size() && x(order[pos]) < t) {
      const Index i = order[pos++];
      const double b = parent(i);
      if (b == 0.0) continue;
      const double xi = x(i);
      pw0 += b * b;
      pw1 += b * b * xi;
      pw2 += b * b * xi * xi;
      pr0 += b * r(i);
      pr1 += b * xi * r(i);
      pv0.noalias() += b * q.row(i).transpose();
      pv1.noalias() += (b * xi) * q.row(i).transpose();
    }
    // plus hinge: rows with x >= t; minus hinge: rows with x < t.
    const double cc_p = (w2 - pw2) - 2.0 * t * (w1 - pw1) + t * t * (w0 - pw0);
    const double cc_m = pw2 - 2.0 * t * pw1 + t * t * pw0;
    const double rc_p = (r1 - pr1) - t * (r0 - pr0);
    const double rc_m = t * pr0 - pr1;
    qp = (v1 - pv1) - t * (v0 - pv0);
    qm = t * pv0 - pv1;
    const double g11 = cc_p - qp.squaredNorm();
    const double g22 = cc_m - qm.squaredNorm();
    const bool ok_p = cc_p > 0.0 && g11 >= kDegenerate * cc_p;
    const bool ok_m = cc_m > 0.0 && g22 >= kDegenerate * cc_m;
    if (!ok_p && !ok_m) continue;

    Candidate c;
    c.input = input;
    c.knot = t;
    c.parent = parent_index;
    const double red_p = ok_p ? rc_p * rc_p / g11 : 0.0;
    const double red_m = ok_m ? rc_m * rc_m / g22 : 0.0;
    if (ok_p && ok_m && !single_only) {
      const double g12 = -qp.dot(qm);
      const double det = g11 * g22 - g12 * g12;
      if (det > kDegenerate * g11 * g22) {
        c.reduction = (g22 * rc_p * rc_p - 2.0 * g12 * rc_p * rc_m + g11 * rc_m * rc_m) / det;
        c.use_plus = c.use_minus = true;
      }
    }
    if (!c.use_plus) {
      if (red_p >= red_m) {
        c.reduction = red_p;
        c.use_plus = true;
      } else {
        c.reduction = red_m;
        c.use_minus = true;
      }
    }
    if (better(c, best)) best = c;
  }
}

VectorXd basis_column(const BasisFunction& b, const MatrixXd& x) {
  VectorXd col(x.rows());
  std::vector<double> row(static_cast<std::size_t>(x.cols()));
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) row[static_cast<std::size_t>(j)] = x(i, j);
    col(i) = b.evaluate(row);
  }
  return col;
}

double gcv(double rss, std::size_t n, std::size_t terms, std::size_t knots, double penalty) {
  const double dn = static_cast<double>(n);
  const double cost = static_cast<double>(terms + 1) + penalty * static_cast<double>(knots);
  if (cost >= dn) return std::numeric_limits<double>::infinity();
  const double shrink = 1.0 - cost / dn;
  return rss / dn / (shrink * shrink);
}

std::size_t distinct_knots(const std::vector<BasisFunction>& basis,
                           const std::vector<std::size_t>& subset) {
  std::set<std::pair<std::size_t, double>> seen;
  for (std::size_t m : subset) {
    for (const HingeTerm& t : basis[m].terms()) seen.emplace(t.input, t.knot);
  }
  return seen.size();
}

MatrixXd design_for(const MatrixXd& columns, const std::vector<std::size_t>& subset) {
  MatrixXd x(columns.rows(), static_cast<Index>(subset.size()) + 1);
  x.col(0).setOnes();
  for (std::size_t k = 0; k < subset.size(); ++k) {
    x.col(static_cast<Index>(k) + 1) = columns.col(static_cast<Index>(subset[k]));
  }
  return x;
}

// Remove columns that make the design rank deficient, last pivots first.
void drop_dependent(const MatrixXd& columns, std::vector<std::size_t>& subset) {
  while (!subset.empty()) {
    const MatrixXd x = design_for(columns, subset);
    Eigen::ColPivHouseholderQR<MatrixXd> qr(x);
    qr.setThreshold(1e-10);
    if (qr.rank() == x.cols()) return;
    const auto& perm = qr.colsPermutation().indices();
    Index drop = -1;
    for (Index k = x.cols() - 1; k >= qr.rank(); --k) {
      if (perm(k) != 0) {
        drop = perm(k);
        break;
      }
    }
    if (drop < 0) return;
    subset.erase(subset.begin() + (drop - 1));
  }
}

struct LeastSquares {
  VectorXd beta;
  double rss;
  VectorXd inverse_diag;  // diag((X^T X)^{-1})
};

LeastSquares least_squares(const MatrixXd& x, const VectorXd& y) {
  Eigen::HouseholderQR<MatrixXd> qr(x);
  const Index k = x.cols();
  const MatrixXd r = qr.matrixQR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
  const VectorXd qty = (qr.householderQ().transpose() * y).head(k);
  LeastSquares out;
  out.beta = r.triangularView<Eigen::Upper>().solve(qty);
  out.rss = (y - x * out.beta).squaredNorm();
  const MatrixXd rinv =
      r.triangularView<Eigen::Upper>().solve(MatrixXd::Identity(k, k));
  out.inverse_diag = rinv.rowwise().squaredNorm();
  return out;
}

MarsModel intercept_only(std::size_t p, const VectorXd& y) {
  return MarsModel(p, y.size() > 0 ? y.mean() : 0.0, {}, {});
}

}  // namespace

MarsModel fit_greedy(const DatasetSpec& data, const FitConfig& config) {
  data.validate();
  const std::size_t n = data.size();
  const std::size_t p = data.dimension();
  const MatrixXd& x = data.design;
  const VectorXd& y = data.response;
  if (n < 2 || y.maxCoeff() == y.minCoeff()) return intercept_only(p, y);

  const std::size_t max_basis =
      config.max_basis > 0 ? config.max_basis
                           : std::min<std::size_t>(200, std::max<std::size_t>(100, 2 * p));
  const std::size_t max_interaction = std::max<std::size_t>(1, config.max_interaction);

  std::vector<std::vector<double>> knots(p);
  std::vector<std::vector<Index>> order(p);
  for (std::size_t v = 0; v < p; ++v) {
    const VectorXd col = x.col(static_cast<Index>(v));
    knots[v] = knot_candidates(col, config.knot_grid_size);
    auto& o = order[v];
    o.resize(n);
    std::iota(o.begin(), o.end(), Index{0});
    std::stable_sort(o.begin(), o.end(), [&](Index a, Index b) { return col(a) < col(b); });
  }

  // Forward pass.
  const double tss = (y.array() - y.mean()).square().sum();
  Orthonormal q(static_cast<Index>(n), static_cast<Index>(std::min(n, max_basis + 1)));
  q.append(VectorXd::Ones(static_cast<Index>(n)));
  VectorXd r = y - q.basis() * (q.basis().transpose() * y);

  std::vector<BasisFunction> basis;
  MatrixXd columns(static_cast<Index>(n), static_cast<Index>(max_basis));
  std::vector<VectorXd> parents{VectorXd::Ones(static_cast<Index>(n))};
  static const BasisFunction kConstant;

  while (basis.size() < max_basis && q.cols() < static_cast<Index>(n)) {
    const bool single_only = basis.size() + 1 == max_basis;
    Candidate best;
    const MatrixXd qm = q.basis();
    for (std::size_t v = 0; v < p; ++v) {
      for (std::size_t m = 0; m < parents.size(); ++m) {
        const BasisFunction& pb = m == 0 ? kConstant : basis[m - 1];
        if (pb.degree() >= max_interaction || pb.uses(v)) continue;
        scan_knots(parents[m], x.col(static_cast<Index>(v)), order[v], knots[v], qm, r,
                   single_only, v, m, best);
      }
    }
    if (!(best.reduction > config.min_improvement * tss)) break;

    // Copied: basis may reallocate while the pair is appended.
    const std::vector<HingeTerm> parent_terms =
        best.parent == 0 ? kConstant.terms() : basis[best.parent - 1].terms();
    bool added = false;
    for (int sign : {1, -1}) {
      if ((sign == 1 && !best.use_plus) || (sign == -1 && !best.use_minus)) continue;
      if (basis.size() >= max_basis) break;
      std::vector<HingeTerm> terms = parent_terms;
      terms.push_back({best.input, sign, best.knot});
      BasisFunction b(std::move(terms));
      VectorXd col = basis_column(b, x);
      if (!q.append(col)) continue;
      columns.col(static_cast<Index>(basis.size())) = col;
      parents.push_back(col);
      basis.push_back(std::move(b));
      added = true;
    }
    if (!added) break;
    r = y - q.basis() * (q.basis().transpose() * y);
    if (r.squaredNorm() <= 1e-14 * tss) break;
  }

  if (basis.empty()) return intercept_only(p, y);
  const MatrixXd cols = columns.leftCols(static_cast<Index>(basis.size()));

  // Backward pass.
  std::vector<std::size_t> subset(basis.size());
  std::iota(subset.begin(), subset.end(), std::size_t{0});
  drop_dependent(cols, subset);

  std::vector<std::size_t> best_subset;
  double best_gcv = gcv(tss, n, 0, 0, config.gcv_penalty);
  while (!subset.empty()) {
    const LeastSquares ls = least_squares(design_for(cols, subset), y);
    const double score =
        gcv(ls.rss, n, subset.size(), distinct_knots(basis, subset), config.gcv_penalty);
    if (score < best_gcv) {
      best_gcv = score;
      best_subset = subset;
    }
    std::size_t drop = 0;
    double least = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < subset.size(); ++k) {
      const auto j = static_cast<Index>(k) + 1;
      const double increase = ls.beta(j) * ls.beta(j) / ls.inverse_diag(j);
      if (increase < least) {
        least = increase;
        drop = k;
      }
    }
    subset.erase(subset.begin() + static_cast<std::ptrdiff_t>(drop));
  }

  if (best_subset.empty()) return intercept_only(p, y);
  const LeastSquares fit = least_squares(design_for(cols, best_subset), y);
  std::vector<BasisFunction> kept;
  std::vector<double> coefficients;
  for (std::size_t k = 0; k < best_subset.size(); ++k) {
    kept.push_back(basis[best_subset[k]]);
    coefficients.push_back(fit.beta(static_cast<Index>(k) + 1));
  }
  return MarsModel(p, fit.beta(0), std::move(coefficients), std::move(kept));
}

double rmse(const MarsModel& model, const DatasetSpec& data) {
  data.validate();
  const VectorXd pred = model.predict(data.design);
  return std::sqrt((pred - data.response).squaredNorm() / static_cast<double>(data.size()));
}

}  // namespace activemars
