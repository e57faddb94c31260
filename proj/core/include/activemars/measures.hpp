#pragma once

#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace activemars {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Uniform {
  double lo = 0.0;
  double hi = 1.0;
};

/// Beta(alpha, beta) on [0, 1].
struct Beta {
  double alpha = 1.0;
  double beta = 1.0;
};

/// Gamma with shape alpha and rate beta on [0, inf).
struct Gamma {
  double shape = 1.0;
  double rate = 1.0;
};

/// Normal(mu, sigma^2) truncated to [lower, upper]; infinite bounds allowed.
struct TruncNormal {
  double mu = 0.0;
  double sigma = 1.0;
  double lower = -kInf;
  double upper = kInf;
};

using BaseMeasure = std::variant<Uniform, Beta, Gamma, TruncNormal>;

struct WeightedMeasure {
  double weight = 1.0;
  BaseMeasure measure;
};

/// Finite mixture of non-mixture univariate measures (nesting depth 1 is
/// enforced by the type).
struct UnivariateMixture {
  std::vector<WeightedMeasure> components;
};

using UnivariateMeasure =
    std::variant<Uniform, Beta, Gamma, TruncNormal, UnivariateMixture>;

/// Independent inputs: rho(x) = prod_i rho_i(x_i).
struct ProductPrior {
  std::vector<UnivariateMeasure> marginals;
};

struct GaussianPrior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

struct WeightedPrior;

struct MixturePrior {
  std::vector<WeightedPrior> components;
};

/// Input measure over R^p: product of univariates, multivariate Gaussian, or
/// a finite mixture of either.
struct PriorSpec {
  std::variant<ProductPrior, GaussianPrior, MixturePrior> value;

  PriorSpec() = default;
  PriorSpec(ProductPrior p) : value(std::move(p)) {}
  PriorSpec(GaussianPrior g) : value(std::move(g)) {}
  PriorSpec(MixturePrior m) : value(std::move(m)) {}

  std::size_t dimension() const;
};

struct WeightedPrior {
  double weight = 1.0;
  PriorSpec prior;
};

/// Tolerance on |sum(weights) - 1| for every mixture.
inline constexpr double kWeightSumTolerance = 1e-12;

/// Throw InputError when a measure violates its invariants.
void validate(const BaseMeasure& m);
void validate(const UnivariateMeasure& m);
void validate(const PriorSpec& prior);

/// Support of a univariate measure as a closed interval (possibly infinite).
struct Interval {
  double lo;
  double hi;
};
Interval support(const BaseMeasure& m);
Interval support(const UnivariateMeasure& m);

/// Product prior with the same measure on each of p coordinates.
ProductPrior iid_prior(std::size_t p, const UnivariateMeasure& m);

}  // namespace activemars
