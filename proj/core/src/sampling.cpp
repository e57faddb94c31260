#include "activemars/sampling.hpp"

#include <cmath>
#include <random>

#include "activemars/errors.hpp"
#include "activemars/special_functions.hpp"
#include "overloaded.hpp"

namespace activemars {

namespace {

using detail::overloaded;

double std_normal(CounterRng& rng) { return special::std_normal_quantile(rng.uniform()); }

double gamma_variate(double shape, CounterRng& rng) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(rng);
}

// Inverse-CDF draw, working in the upper tail when the interval lies there.
double trunc_normal(const TruncNormal& t, CounterRng& rng) {
  const double za = (t.lower - t.mu) / t.sigma;
  const double zb = (t.upper - t.mu) / t.sigma;
  const double u = rng.uniform();
  double z;
  if (za >= 0.0) {
    const double qa = special::std_normal_sf(za);
    const double qb = special::std_normal_sf(zb);
    z = -special::std_normal_quantile(qa - u * (qa - qb));
  } else {
    const double pa = special::std_normal_cdf(za);
    const double pb = special::std_normal_cdf(zb);
    z = special::std_normal_quantile(pa + u * (pb - pa));
  }
  z = std::min(std::max(z, za), zb);
  return t.mu + t.sigma * z;
}

}  // namespace

double sample(const BaseMeasure& m, CounterRng& rng) {
  return std::visit(overloaded{
                        [&](const Uniform& u) { return u.lo + (u.hi - u.lo) * rng.uniform(); },
                        [&](const Beta& b) {
                          const double x = gamma_variate(b.alpha, rng);
                          const double y = gamma_variate(b.beta, rng);
                          return x / (x + y);
                        },
                        [&](const Gamma& g) { return gamma_variate(g.shape, rng) / g.rate; },
                        [&](const TruncNormal& t) { return trunc_normal(t, rng); },
                    },
                    m);
}

double sample(const UnivariateMeasure& m, CounterRng& rng) {
  return std::visit(overloaded{
                        [&](const UnivariateMixture& mix) {
                          const double u = rng.uniform();
                          double cumulative = 0.0;
                          for (const auto& c : mix.components) {
                            cumulative += c.weight;
                            if (u < cumulative) return sample(c.measure, rng);
                          }
                          return sample(mix.components.back().measure, rng);
                        },
                        [&](const auto& base) { return sample(BaseMeasure{base}, rng); },
                    },
                    m);
}

struct PriorSampler::Node {
  enum class Kind { product, gaussian, mixture } kind;
  std::vector<UnivariateMeasure> marginals;
  Eigen::VectorXd mean;
  Eigen::MatrixXd factor;
  std::vector<double> weights;
  std::vector<std::unique_ptr<Node>> children;

  static std::unique_ptr<Node> build(const PriorSpec& prior) {
    auto node = std::make_unique<Node>();
    std::visit(overloaded{
                   [&](const ProductPrior& p) {
                     node->kind = Kind::product;
                     node->marginals = p.marginals;
                   },
                   [&](const GaussianPrior& g) {
                     node->kind = Kind::gaussian;
                     node->mean = g.mean;
                     const Eigen::LLT<Eigen::MatrixXd> llt(g.cov);
                     if (llt.info() != Eigen::Success) throw InputError("covariance is not positive definite");
                     node->factor = llt.matrixL();
                   },
                   [&](const MixturePrior& m) {
                     node->kind = Kind::mixture;
                     for (const auto& c : m.components) {
                       node->weights.push_back(c.weight);
                       node->children.push_back(build(c.prior));
                     }
                   },
               },
               prior.value);
    return node;
  }

  void draw(CounterRng& rng, Eigen::VectorXd& out) const {
    switch (kind) {
      case Kind::product:
        for (std::size_t i = 0; i < marginals.size(); ++i) {
          out(static_cast<Eigen::Index>(i)) = sample(marginals[i], rng);
        }
        return;
      case Kind::gaussian: {
        Eigen::VectorXd z(mean.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = std_normal(rng);
        out = mean + factor * z;
        return;
      }
      case Kind::mixture: {
        const double u = rng.uniform();
        double cumulative = 0.0;
        for (std::size_t k = 0; k < children.size(); ++k) {
          cumulative += weights[k];
          if (u < cumulative || k + 1 == children.size()) {
            children[k]->draw(rng, out);
            return;
          }
        }
      }
    }
  }
};

PriorSampler::PriorSampler(const PriorSpec& prior) : p_(prior.dimension()), root_(Node::build(prior)) {
  validate(prior);
}
PriorSampler::~PriorSampler() = default;
PriorSampler::PriorSampler(PriorSampler&&) noexcept = default;
PriorSampler& PriorSampler::operator=(PriorSampler&&) noexcept = default;

Eigen::VectorXd PriorSampler::draw(CounterRng& rng) const {
  Eigen::VectorXd out(static_cast<Eigen::Index>(p_));
  root_->draw(rng, out);
  return out;
}

}  // namespace activemars
