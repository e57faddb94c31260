#include "support/identities.hpp"

#include <cmath>
#include <numeric>

#include "activemars/integrals.hpp"

namespace testing {

using namespace activemars;

ScaledPermutation scaled_permutation(Gen& g, const MarsModel& model, const ProductPrior& prior) {
  const std::size_t p = model.dimension();
  std::vector<std::size_t> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = p; i > 1; --i) std::swap(perm[i - 1], perm[static_cast<std::size_t>(g.integer(0, static_cast<int>(i) - 1))]);

  std::vector<double> alpha(p), beta(p);
  ScaledPermutation out;
  out.jacobian = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  out.measures_u.resize(p);
  for (std::size_t i = 0; i < p; ++i) {
    const double mag = g.uniform(0.4, 1.0);
    if (g.coin()) {
      alpha[i] = mag;
      beta[i] = g.uniform(0.0, 1.0 - mag);
    } else {
      alpha[i] = -mag;
      beta[i] = g.uniform(mag, 1.0);
    }
    out.jacobian(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(i)) = alpha[i];
    out.measures_u[perm[i]] = CoordinateMeasure{prior.marginals[i], alpha[i], beta[i]};
  }

  std::vector<BasisFunction> basis;
  std::vector<double> coefs;
  for (std::size_t m = 0; m < model.size(); ++m) {
    double c = model.coefficients()[m];
    std::vector<HingeTerm> terms;
    for (const auto& t : model.basis()[m].terms()) {
      const double a = alpha[t.input];
      const double knot = std::clamp(a * t.knot + beta[t.input], 0.0, 1.0);
      terms.push_back({perm[t.input], a > 0 ? t.sign : -t.sign, knot});
      c /= std::fabs(a);
    }
    basis.emplace_back(std::move(terms));
    coefs.push_back(c);
  }
  out.model_u = MarsModel(p, model.intercept(), std::move(coefs), std::move(basis));
  return out;
}

Eigen::MatrixXd closed_form(const MarsModel& model, const std::vector<CoordinateMeasure>& measures) {
  const IntegralCache cache = compute_integrals(model.basis(), measures, 1);
  return assemble(model.basis(), model.coefficients(), cache);
}

GaussianCase gaussian_case(Gen& g, std::size_t p, std::size_t basis_count, const Eigen::MatrixXd& a) {
  const auto n = static_cast<Eigen::Index>(p);
  // z ~ N(m, D^2) with m near the middle of the unit cube.
  Eigen::VectorXd d(n), m(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d(i) = g.uniform(0.1, 0.3);
    m(i) = g.uniform(0.35, 0.65);
  }
  const Eigen::MatrixXd a_inv = a.inverse();
  GaussianPrior prior;
  prior.cov = a_inv * d.cwiseAbs2().asDiagonal() * a_inv.transpose();
  prior.cov = 0.5 * (prior.cov + prior.cov.transpose()).eval();
  Eigen::VectorXd offset(n);
  for (Eigen::Index i = 0; i < n; ++i) offset(i) = g.uniform(-0.5, 0.5);
  prior.mean = a_inv * (m - offset);
  const MarsModel base = random_model(g, p, basis_count, 3);
  return {base.with_transform(AffineMap(a, offset)), prior};
}

GaussianCase reparameterise(const GaussianCase& c, const Eigen::MatrixXd& b, const Eigen::VectorXd& shift) {
  const AffineMap& t = *c.model.input_transform();
  const Eigen::MatrixXd a = t.matrix();
  const Eigen::MatrixXd b_inv = b.inverse();
  GaussianPrior prior;
  prior.mean = b_inv * (c.prior.mean - shift);
  prior.cov = b_inv * c.prior.cov * b_inv.transpose();
  prior.cov = 0.5 * (prior.cov + prior.cov.transpose()).eval();
  return {c.model.with_transform(AffineMap(a * b, a * shift + t.offset())), prior};
}

}  // namespace testing
