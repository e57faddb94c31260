#include "activemars/measures.hpp"

#include <cmath>
#include <sstream>
#include <type_traits>

#include "activemars/errors.hpp"
#include "activemars/special_functions.hpp"
#include "overloaded.hpp"

namespace activemars {

namespace {

using detail::overloaded;

void require(bool ok, const std::string& message) {
  if (!ok) throw InputError(message);
}

void check_weights(const std::vector<double>& weights, const char* what) {
  require(!weights.empty(), std::string(what) + ": mixture has no components");
  double sum = 0.0;
  for (double w : weights) {
    require(std::isfinite(w) && w > 0.0, std::string(what) + ": mixture weights must be positive");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > kWeightSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": mixture weights sum to " << sum << ", expected 1";
    throw InputError(os.str());
  }
}

}  // namespace

void validate(const BaseMeasure& m) {
  std::visit(overloaded{
                 [](const Uniform& u) {
                   require(std::isfinite(u.lo) && std::isfinite(u.hi) && u.lo < u.hi,
                           "uniform: need finite lo < hi");
                 },
                 [](const Beta& b) {
                   require(std::isfinite(b.alpha) && std::isfinite(b.beta) && b.alpha > 0.0 &&
                               b.beta > 0.0,
                           "beta: need alpha > 0 and beta > 0");
                 },
                 [](const Gamma& g) {
                   require(std::isfinite(g.shape) && std::isfinite(g.rate) && g.shape > 0.0 &&
                               g.rate > 0.0,
                           "gamma: need shape > 0 and rate > 0");
                 },
                 [](const TruncNormal& t) {
                   require(std::isfinite(t.mu) && std::isfinite(t.sigma) && t.sigma > 0.0,
                           "normal: need finite mu and sigma > 0");
                   require(!std::isnan(t.lower) && !std::isnan(t.upper) && t.lower < t.upper,
                           "normal: truncation needs lower < upper");
                   const double mass = special::std_normal_mass((t.lower - t.mu) / t.sigma,
                                                                (t.upper - t.mu) / t.sigma);
                   require(mass > 0.0, "normal: truncation interval carries no mass");
                 },
             },
             m);
}

void validate(const UnivariateMeasure& m) {
  std::visit(overloaded{
                 [](const UnivariateMixture& mix) {
                   std::vector<double> w;
                   for (const auto& c : mix.components) {
                     validate(c.measure);
                     w.push_back(c.weight);
                   }
                   check_weights(w, "univariate mixture");
                 },
                 [](const auto& base) { validate(BaseMeasure{base}); },
             },
             m);
}

std::size_t PriorSpec::dimension() const {
  return std::visit(overloaded{
                        [](const ProductPrior& p) { return p.marginals.size(); },
                        [](const GaussianPrior& g) { return static_cast<std::size_t>(g.mean.size()); },
                        [](const MixturePrior& m) {
                          return m.components.empty() ? std::size_t{0}
                                                      : m.components.front().prior.dimension();
                        },
                    },
                    value);
}

void validate(const PriorSpec& prior) {
  std::visit(
      overloaded{
          [](const ProductPrior& p) {
            require(!p.marginals.empty(), "product prior: no components");
            for (const auto& m : p.marginals) validate(m);
          },
          [](const GaussianPrior& g) {
            const auto p = g.mean.size();
            require(p > 0, "mvn prior: empty mean");
            require(g.cov.rows() == p && g.cov.cols() == p, "mvn prior: covariance must be p x p");
            require(g.mean.allFinite() && g.cov.allFinite(), "mvn prior: non-finite entries");
            const double scale = g.cov.cwiseAbs().maxCoeff();
            require((g.cov - g.cov.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
                    "mvn prior: covariance is not symmetric");
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.cov, Eigen::EigenvaluesOnly);
            require(eig.eigenvalues().minCoeff() > 0.0,
                    "mvn prior: covariance is not positive definite");
          },
          [](const MixturePrior& m) {
            std::vector<double> w;
            for (const auto& c : m.components) {
              validate(c.prior);
              w.push_back(c.weight);
            }
            check_weights(w, "prior mixture");
            const auto p = m.components.front().prior.dimension();
            for (const auto& c : m.components) {
              require(c.prior.dimension() == p, "prior mixture: components differ in dimension");
            }
          },
      },
      prior.value);
}

Interval support(const BaseMeasure& m) {
  return std::visit(overloaded{
                        [](const Uniform& u) { return Interval{u.lo, u.hi}; },
                        [](const Beta&) { return Interval{0.0, 1.0}; },
                        [](const Gamma&) { return Interval{0.0, kInf}; },
                        [](const TruncNormal& t) { return Interval{t.lower, t.upper}; },
                    },
                    m);
}

Interval support(const UnivariateMeasure& m) {
  return std::visit(overloaded{
                        [](const UnivariateMixture& mix) {
                          Interval out{kInf, -kInf};
                          for (const auto& c : mix.components) {
                            const auto s = support(c.measure);
                            out.lo = std::min(out.lo, s.lo);
                            out.hi = std::max(out.hi, s.hi);
                          }
                          return out;
                        },
                        [](const auto& base) { return support(BaseMeasure{base}); },
                    },
                    m);
}

ProductPrior iid_prior(std::size_t p, const UnivariateMeasure& m) {
  return ProductPrior{std::vector<UnivariateMeasure>(p, m)};
}

}  // namespace activemars
