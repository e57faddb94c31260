#include "activemars/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "activemars/errors.hpp"
#include "activemars/parallel.hpp"
#include "activemars/quadrature.hpp"
#include "activemars/rng.hpp"
#include "activemars/sampling.hpp"
#include "overloaded.hpp"

namespace activemars {

namespace {

using detail::overloaded;

// Normal tails beyond this many standard deviations are dropped (mass < 1e-32).
constexpr double kNormalClip = 12.0;

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

Interval effective_support(const BaseMeasure& m) {
  return std::visit(overloaded{
                        [](const Uniform& u) { return Interval{u.lo, u.hi}; },
                        [](const Beta&) { return Interval{0.0, 1.0}; },
                        [](const Gamma&) { return Interval{0.0, kInf}; },
                        [](const TruncNormal& t) {
                          return Interval{std::max(t.lower, t.mu - kNormalClip * t.sigma),
                                          std::min(t.upper, t.mu + kNormalClip * t.sigma)};
                        },
                    },
                    m);
}

// Density of one base measure with its normaliser prepared once.
struct BaseDensity {
  BaseMeasure measure;
  Interval range;
  double log_norm = 0.0;  // beta / gamma
  double norm = 1.0;      // truncated normal mass

  explicit BaseDensity(const BaseMeasure& m) : measure(m), range(effective_support(m)) {
    std::visit(overloaded{
                   [&](const Uniform&) {},
                   [&](const Beta& b) {
                     log_norm = std::lgamma(b.alpha) + std::lgamma(b.beta) - std::lgamma(b.alpha + b.beta);
                   },
                   [&](const Gamma& g) { log_norm = std::lgamma(g.shape) - g.shape * std::log(g.rate); },
                   [&](const TruncNormal& t) {
                     const double za = (range.lo - t.mu) / t.sigma;
                     const double zb = (range.hi - t.mu) / t.sigma;
                     std::vector<double> cuts;
                     if (za < 0.0 && zb > 0.0) cuts.push_back(0.0);
                     norm = quadrature::integrate(normal_pdf, za, zb, {1e-15, 1e-15, 4000}, cuts).value;
                   },
               },
               measure);
  }

  double operator()(double x) const {
    if (x < range.lo || x > range.hi) return 0.0;
    return std::visit(overloaded{
                          [&](const Uniform& u) { return 1.0 / (u.hi - u.lo); },
                          [&](const Beta& b) {
                            if (x <= 0.0 || x >= 1.0) return 0.0;
                            return std::exp((b.alpha - 1.0) * std::log(x) + (b.beta - 1.0) * std::log1p(-x) -
                                            log_norm);
                          },
                          [&](const Gamma& g) {
                            if (x <= 0.0) return 0.0;
                            return std::exp((g.shape - 1.0) * std::log(x) - g.rate * x - log_norm);
                          },
                          [&](const TruncNormal& t) { return normal_pdf((x - t.mu) / t.sigma) / (t.sigma * norm); },
                      },
                      measure);
  }
};

struct Density {
  std::vector<double> weights;
  std::vector<BaseDensity> parts;

  explicit Density(const UnivariateMeasure& m) {
    std::visit(overloaded{
                   [&](const UnivariateMixture& mix) {
                     for (const auto& c : mix.components) {
                       weights.push_back(c.weight);
                       parts.emplace_back(c.measure);
                     }
                   },
                   [&](const auto& base) {
                     weights.push_back(1.0);
                     parts.emplace_back(BaseMeasure{base});
                   },
               },
               m);
  }

  double operator()(double x) const {
    double v = 0.0;
    for (std::size_t k = 0; k < parts.size(); ++k) v += weights[k] * parts[k](x);
    return v;
  }

  Interval range() const {
    Interval r{kInf, -kInf};
    for (const auto& p : parts) {
      r.lo = std::min(r.lo, p.range.lo);
      r.hi = std::max(r.hi, p.range.hi);
    }
    return r;
  }

  std::vector<double> cuts() const {
    std::vector<double> out;
    for (const auto& p : parts) {
      out.push_back(p.range.lo);
      out.push_back(p.range.hi);
      if (const auto* t = std::get_if<TruncNormal>(&p.measure)) out.push_back(t->mu);
    }
    return out;
  }
};

OracleEstimate scalar_estimate(double v, std::size_t evaluations) {
  OracleEstimate out;
  out.value = Eigen::MatrixXd::Constant(1, 1, v);
  out.evaluations = evaluations;
  return out;
}

// The per-input measure in model coordinates z = scale * x + shift.
struct ModelDensity {
  Density base;
  double scale;
  double shift;

  double operator()(double z) const { return base((z - shift) / scale) / std::fabs(scale); }
  Interval range() const {
    const Interval r = base.range();
    const double a = scale * r.lo + shift;
    const double b = scale * r.hi + shift;
    return {std::min(a, b), std::max(a, b)};
  }
  std::vector<double> cuts() const {
    std::vector<double> out;
    for (double c : base.cuts()) {
      if (std::isfinite(c)) out.push_back(scale * c + shift);
    }
    return out;
  }
};

double hinge(const HingeTerm* t, double z) { return t == nullptr ? 1.0 : t->value(z); }
double hinge_slope(const HingeTerm* t, double z) {
  return t != nullptr && t->active_at(z) ? static_cast<double>(t->sign) : 0.0;
}

// C in model coordinates for independent per-input densities.
Eigen::MatrixXd quad_C_product(const MarsModel& model, const std::vector<ModelDensity>& dens,
                               const QuadCOptions& options, std::size_t& evaluations) {
  const std::size_t p = model.dimension();
  const auto& basis = model.basis();
  const std::size_t count = basis.size();
  const quadrature::Options qopt{options.tol, options.tol, 20000};

  // tables[i](m1, m2): I1 (ordered), I2, I3 by pointwise integration.
  std::vector<Eigen::MatrixXd> i1(p), i2(p), i3(p);
  const auto n = static_cast<Eigen::Index>(count);
  for (std::size_t i = 0; i < p; ++i) {
    const ModelDensity& rho = dens[i];
    const Interval r = rho.range();
    const std::vector<double> base_cuts = rho.cuts();
    i1[i].resize(n, n);
    i2[i].resize(n, n);
    i3[i].resize(n, n);
    double mass = -1.0;
    for (std::size_t m1 = 0; m1 < count; ++m1) {
      for (std::size_t m2 = 0; m2 < count; ++m2) {
        const HingeTerm* h1 = basis[m1].term_for(i);
        const HingeTerm* h2 = basis[m2].term_for(i);
        const auto a = static_cast<Eigen::Index>(m1);
        const auto b = static_cast<Eigen::Index>(m2);
        if (h1 == nullptr && h2 == nullptr) {
          if (mass < 0.0) {
            const auto res = quadrature::integrate(rho, r.lo, r.hi, qopt, base_cuts);
            evaluations += res.evaluations;
            mass = res.value;
          }
          i1[i](a, b) = 0.0;
          i2[i](a, b) = mass;
          i3[i](a, b) = 0.0;
          continue;
        }
        std::vector<double> cuts = base_cuts;
        if (h1) cuts.push_back(h1->knot);
        if (h2) cuts.push_back(h2->knot);
        auto run = [&](auto&& integrand) {
          const auto res = quadrature::integrate(integrand, r.lo, r.hi, qopt, cuts);
          evaluations += res.evaluations;
          return res.value;
        };
        i1[i](a, b) = h1 ? run([&](double z) { return hinge_slope(h1, z) * hinge(h2, z) * rho(z); }) : 0.0;
        i2[i](a, b) = run([&](double z) { return hinge(h1, z) * hinge(h2, z) * rho(z); });
        i3[i](a, b) = h1 && h2 ? run([&](double z) { return hinge_slope(h1, z) * hinge_slope(h2, z) * rho(z); })
                               : 0.0;
      }
    }
  }

  const auto& gamma = model.coefficients();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      double sum = 0.0;
      for (std::size_t m1 = 0; m1 < count; ++m1) {
        for (std::size_t m2 = 0; m2 < count; ++m2) {
          const auto a = static_cast<Eigen::Index>(m1);
          const auto b = static_cast<Eigen::Index>(m2);
          double term = i == j ? i3[i](a, b) : i1[i](a, b) * i1[j](b, a);
          for (std::size_t k = 0; k < p; ++k) {
            if (k != i && k != j) term *= i2[k](a, b);
          }
          sum += gamma[m1] * gamma[m2] * term;
        }
      }
      c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sum;
    }
  }
  return c;
}

Eigen::MatrixXd quad_C_values(const MarsModel& model, const PriorSpec& prior, const QuadCOptions& options,
                              std::size_t& evaluations) {
  const std::size_t p = model.dimension();
  const auto& tr = model.input_transform();
  auto to_native = [&](const Eigen::MatrixXd& c) { return tr ? tr->pull_back(c) : c; };
  return std::visit(
      overloaded{
          [&](const ProductPrior& pp) -> Eigen::MatrixXd {
            if (tr && !tr->is_diagonal()) throw InputError("quad_C: product priors need a diagonal transform");
            std::vector<ModelDensity> dens;
            for (std::size_t i = 0; i < p; ++i) {
              const auto k = static_cast<Eigen::Index>(i);
              dens.push_back({Density(pp.marginals[i]), tr ? tr->diagonal_entries()(k) : 1.0,
                              tr ? tr->offset()(k) : 0.0});
            }
            return to_native(quad_C_product(model, dens, options, evaluations));
          },
          [&](const GaussianPrior& g) -> Eigen::MatrixXd {
            const Eigen::MatrixXd a = tr ? tr->matrix() : Eigen::MatrixXd::Identity(g.cov.rows(), g.cov.cols());
            const Eigen::VectorXd mean = tr ? tr->apply(g.mean) : g.mean;
            const Eigen::MatrixXd cov = a * g.cov * a.transpose();
            std::vector<ModelDensity> dens;
            for (std::size_t i = 0; i < p; ++i) {
              const auto k = static_cast<Eigen::Index>(i);
              for (std::size_t j = 0; j < p; ++j) {
                const auto l = static_cast<Eigen::Index>(j);
                if (j != i && std::fabs(cov(k, l)) > 1e-10 * std::sqrt(cov(k, k) * cov(l, l))) {
                  throw InputError("quad_C: Gaussian prior is correlated in model coordinates");
                }
              }
              dens.push_back({Density(TruncNormal{mean(k), std::sqrt(cov(k, k)), -kInf, kInf}), 1.0, 0.0});
            }
            return to_native(quad_C_product(model, dens, options, evaluations));
          },
          [&](const MixturePrior& mix) -> Eigen::MatrixXd {
            Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
            for (const auto& c : mix.components) sum += c.weight * quad_C_values(model, c.prior, options, evaluations);
            return sum;
          },
      },
      prior.value);
}

Eigen::VectorXd gradient_nudged(const MarsModel& model, const Eigen::VectorXd& x) {
  const auto& tr = model.input_transform();
  Eigen::VectorXd z = tr ? tr->apply(x) : x;
  for (int attempt = 0;; ++attempt) {
    try {
      const Eigen::VectorXd g = model.gradient(z);
      return tr ? tr->pull_back_gradient(g) : g;
    } catch (const KnotBoundary& e) {
      if (attempt > 64) throw;
      z(static_cast<Eigen::Index>(e.input())) += 1e-12;
    }
  }
}

}  // namespace

double density(const UnivariateMeasure& m, double x) { return Density(m)(x); }

OracleEstimate quad_truncated_moment(int r, double a, double b, const UnivariateMeasure& m, double tol) {
  if (r < 0 || r > 2) throw InputError("moment order must be 0, 1 or 2");
  if (std::isnan(a) || std::isnan(b)) throw InputError("moment bounds must not be NaN");
  const Density rho(m);
  const Interval range = rho.range();
  const double lo = std::max(a, range.lo);
  const double hi = std::min(b, range.hi);
  if (!(hi > lo)) return scalar_estimate(0.0, 0);
  const auto res = quadrature::integrate(
      [&](double x) {
        double w = rho(x);
        for (int k = 0; k < r; ++k) w *= x;
        return w;
      },
      lo, hi, {tol, tol, 20000}, rho.cuts());
  return scalar_estimate(res.value, res.evaluations);
}

OracleEstimate quad_C(const MarsModel& model, const PriorSpec& prior, const QuadCOptions& options) {
  validate(prior);
  if (prior.dimension() != model.dimension()) throw InputError("prior dimension differs from model dimension");
  OracleEstimate out;
  out.value = quad_C_values(model, prior, options, out.evaluations);
  out.method = OracleEstimate::Method::quadrature;
  return out;
}

OracleEstimate mc_C(const MarsModel& model, const PriorSpec& prior, std::size_t samples, std::uint64_t seed,
                    unsigned threads) {
  if (samples < 2) throw InputError("Monte Carlo needs at least two samples");
  validate(prior);
  if (prior.dimension() != model.dimension()) throw InputError("prior dimension differs from model dimension");
  const PriorSampler sampler(prior);
  const auto p = static_cast<Eigen::Index>(model.dimension());

  constexpr std::size_t kChunk = 8192;
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  struct Partial {
    double count = 0.0;
    Eigen::MatrixXd mean;
    Eigen::MatrixXd m2;
  };
  std::vector<Partial> parts(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    CounterRng rng(seed, c);
    Partial& part = parts[c];
    part.mean = Eigen::MatrixXd::Zero(p, p);
    part.m2 = Eigen::MatrixXd::Zero(p, p);
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(samples, begin + kChunk);
    Eigen::MatrixXd outer(p, p), delta(p, p);
    for (std::size_t s = begin; s < end; ++s) {
      const Eigen::VectorXd g = gradient_nudged(model, sampler.draw(rng));
      outer.noalias() = g * g.transpose();
      part.count += 1.0;
      delta = outer - part.mean;
      part.mean += delta / part.count;
      part.m2 += delta.cwiseProduct(outer - part.mean);
    }
  });

  // Chan et al. pairwise combination, in chunk order.
  Partial total{0.0, Eigen::MatrixXd::Zero(p, p), Eigen::MatrixXd::Zero(p, p)};
  for (const Partial& part : parts) {
    const double n = total.count + part.count;
    const Eigen::MatrixXd delta = part.mean - total.mean;
    total.mean += delta * (part.count / n);
    total.m2 += part.m2 + delta.cwiseAbs2() * (total.count * part.count / n);
    total.count = n;
  }
  OracleEstimate out;
  out.value = total.mean;
  out.std_error = (total.m2 / ((total.count - 1.0) * total.count)).cwiseSqrt();
  out.evaluations = samples;
  out.method = OracleEstimate::Method::monte_carlo;
  return out;
}

}  // namespace activemars
