#include "activemars/cmatrix.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "activemars/digest.hpp"
#include "activemars/errors.hpp"
#include "activemars/parallel.hpp"
#include "overloaded.hpp"

namespace activemars {

CMatrixCheck check(const Eigen::MatrixXd& c) {
  CMatrixCheck out;
  if (c.size() == 0) return out;
  const double scale = c.cwiseAbs().maxCoeff();
  out.asymmetry = scale > 0.0 ? (c - c.transpose()).cwiseAbs().maxCoeff() / scale : 0.0;
  const Eigen::MatrixXd sym = 0.5 * (c + c.transpose());
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, Eigen::EigenvaluesOnly);
  out.min_eigenvalue = eig.eigenvalues().minCoeff();
  out.max_eigenvalue = eig.eigenvalues().maxCoeff();
  out.symmetric = out.asymmetry <= 1e-10;
  out.psd = out.min_eigenvalue >= -1e-8 * std::max(out.max_eigenvalue, 0.0);
  return out;
}

namespace {

// Accumulates the contribution of every ordered basis pair. `pair(m1, m2, k)`
// returns PairIntegrals for input k; `total[k]` is the I2 value of an input
// neither basis uses. Only inputs active in m1 or m2 are visited, and only the
// upper triangle is accumulated.
template <class PairFn>
Eigen::MatrixXd assemble_kernel(std::span<const BasisFunction> basis,
                                std::span<const double> coefficients,
                                const std::vector<double>& total, PairFn&& pair) {
  const std::size_t p = total.size();
  const std::size_t count = basis.size();
  if (coefficients.size() != count) throw InputError("coefficient count differs from basis count");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  std::vector<std::size_t> support;
  std::vector<PairIntegrals> local;
  std::vector<char> in_support(p, 0);

  for (std::size_t m1 = 0; m1 < count; ++m1) {
    if (coefficients[m1] == 0.0 || basis[m1].degree() == 0) continue;
    for (std::size_t m2 = 0; m2 < count; ++m2) {
      if (coefficients[m2] == 0.0 || basis[m2].degree() == 0) continue;
      const double weight = coefficients[m1] * coefficients[m2];

      support.clear();
      for (const HingeTerm& t : basis[m1].terms()) support.push_back(t.input);
      for (const HingeTerm& t : basis[m2].terms()) support.push_back(t.input);
      std::sort(support.begin(), support.end());
      support.erase(std::unique(support.begin(), support.end()), support.end());

      for (std::size_t k : support) in_support[k] = 1;
      double outside = 1.0;
      for (std::size_t k = 0; k < p; ++k) {
        if (!in_support[k]) outside *= total[k];
      }
      for (std::size_t k : support) in_support[k] = 0;
      if (outside == 0.0) continue;

      local.clear();
      for (std::size_t k : support) local.push_back(pair(m1, m2, k));

      const std::size_t s = support.size();
      for (std::size_t a = 0; a < s; ++a) {
        const std::size_t i = support[a];
        const bool first_uses_i = basis[m1].uses(i);
        if (!first_uses_i) continue;
        for (std::size_t b = a; b < s; ++b) {
          const std::size_t j = support[b];
          double v;
          if (a == b) {
            if (local[a].i3 == 0.0) continue;
            v = local[a].i3;
          } else {
            if (!basis[m2].uses(j)) continue;
            v = local[a].i1_forward * local[b].i1_backward;
            if (v == 0.0) continue;
          }
          for (std::size_t k = 0; k < s; ++k) {
            if (k != a && k != b) v *= local[k].i2;
          }
          c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += weight * v * outside;
        }
      }
    }
  }
  c.triangularView<Eigen::StrictlyLower>() = c.transpose();
  return c;
}

std::vector<double> totals(const std::vector<CoordinateMeasure>& measures) {
  std::vector<double> out;
  out.reserve(measures.size());
  for (const auto& m : measures) out.push_back(truncated_moment(0, -kInf, kInf, m));
  return out;
}

PairIntegrals from_cache(const IntegralCache& cache, std::size_t m1, std::size_t m2, std::size_t k) {
  const InputIntegrals& t = cache.inputs[k];
  const auto r = static_cast<Eigen::Index>(m1);
  const auto c = static_cast<Eigen::Index>(m2);
  return {{t.lower(r, c), t.upper(r, c)}, t.i1(r, c), t.i1(c, r), t.i2(r, c), t.i3(r, c)};
}

Eigen::MatrixXd native_from_model(const MarsModel& model, const Eigen::MatrixXd& c_model) {
  if (!model.input_transform()) return c_model;
  return model.input_transform()->pull_back(c_model);
}

CMatrix make_cmatrix(Eigen::MatrixXd values, const MarsModel& model, const PriorSpec& prior) {
  return {std::move(values), prior_digest(prior), model_digest(model), Scale::native};
}

Eigen::MatrixXd assemble_for_measures(const MarsModel& model,
                                      const std::vector<CoordinateMeasure>& measures,
                                      const ComputeOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto elapsed = [](Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };
  const auto& basis = model.basis();
  const auto& coefs = model.coefficients();
  if (options.low_memory) {
    if (options.hadamard_epsilon) {
      throw InputError("the Hadamard approximation needs the integral cache (drop low_memory)");
    }
    const auto t0 = Clock::now();
    Eigen::MatrixXd c = assemble_in_situ(basis, coefs, measures);
    if (options.timings) options.timings->assembly_seconds += elapsed(t0);
    return c;
  }
  auto t0 = Clock::now();
  IntegralCache cache = compute_integrals(basis, measures, options.threads);
  if (options.hadamard_epsilon) cache.materialize_i2_product();
  if (options.timings) options.timings->integrals_seconds += elapsed(t0);
  t0 = Clock::now();
  Eigen::MatrixXd c = options.hadamard_epsilon
                          ? assemble_hadamard_approx(coefs, cache, *options.hadamard_epsilon)
                          : assemble(basis, coefs, cache);
  if (options.timings) options.timings->assembly_seconds += elapsed(t0);
  return c;
}

Eigen::MatrixXd compute_values(const MarsModel& model, const PriorSpec& prior,
                               const ComputeOptions& options);

Eigen::MatrixXd gaussian_values(const MarsModel& model, const GaussianPrior& g,
                                const ComputeOptions& options) {
  Eigen::VectorXd mean = g.mean;
  Eigen::MatrixXd cov = g.cov;
  if (const auto& tr = model.input_transform()) {
    const Eigen::MatrixXd a = tr->matrix();
    mean = tr->apply(g.mean);
    cov = a * g.cov * a.transpose();
  }
  const auto p = cov.rows();
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i + 1; j < p; ++j) {
      if (std::fabs(cov(i, j)) > 1e-10 * std::sqrt(cov(i, i) * cov(j, j))) {
        throw InputError(
            "Gaussian prior is correlated in model coordinates; fit the model on "
            "standardized inputs and record the whitening map as its input transform");
      }
    }
  }
  std::vector<CoordinateMeasure> measures;
  for (Eigen::Index i = 0; i < p; ++i) {
    measures.push_back({TruncNormal{mean(i), std::sqrt(cov(i, i)), -kInf, kInf}, 1.0, 0.0});
  }
  return native_from_model(model, assemble_for_measures(model, measures, options));
}

Eigen::MatrixXd compute_values(const MarsModel& model, const PriorSpec& prior,
                               const ComputeOptions& options) {
  using detail::overloaded;
  return std::visit(
      overloaded{
          [&](const ProductPrior& pp) {
            return native_from_model(
                model, assemble_for_measures(model, model_coordinate_measures(model, pp), options));
          },
          [&](const GaussianPrior& g) { return gaussian_values(model, g, options); },
          [&](const MixturePrior& mix) {
            std::vector<Eigen::MatrixXd> parts(mix.components.size());
            ComputeOptions inner = options;
            inner.threads = 1;
            parallel_for(parts.size(), options.threads, [&](std::size_t k) {
              parts[k] = compute_values(model, mix.components[k].prior, inner);
            });
            const auto p = static_cast<Eigen::Index>(model.dimension());
            Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(p, p);
            for (std::size_t k = 0; k < parts.size(); ++k) sum += mix.components[k].weight * parts[k];
            return sum;
          },
      },
      prior.value);
}

}  // namespace

Eigen::MatrixXd assemble(std::span<const BasisFunction> basis, std::span<const double> coefficients,
                         const IntegralCache& cache) {
  if (cache.basis_count() != basis.size()) throw InputError("integral cache does not match the basis");
  return assemble_kernel(basis, coefficients, totals(cache.measures),
                         [&](std::size_t m1, std::size_t m2, std::size_t k) {
                           return from_cache(cache, m1, m2, k);
                         });
}

Eigen::MatrixXd assemble_in_situ(std::span<const BasisFunction> basis,
                                 std::span<const double> coefficients,
                                 const std::vector<CoordinateMeasure>& measures) {
  return assemble_kernel(basis, coefficients, totals(measures),
                         [&](std::size_t m1, std::size_t m2, std::size_t k) {
                           // Evaluate in the same orientation the cache stores.
                           if (m1 <= m2) return pair_integrals(basis[m1], basis[m2], k, measures[k]);
                           PairIntegrals pi = pair_integrals(basis[m2], basis[m1], k, measures[k]);
                           std::swap(pi.i1_forward, pi.i1_backward);
                           return pi;
                         });
}

Eigen::MatrixXd assemble_hadamard_approx(std::span<const double> coefficients,
                                         const IntegralCache& cache, double epsilon) {
  if (!cache.i2_product) throw InputError("Hadamard assembly needs the materialized I2 product");
  const std::size_t p = cache.dimension();
  const auto m = static_cast<Eigen::Index>(cache.basis_count());
  if (coefficients.size() != cache.basis_count()) {
    throw InputError("coefficient count differs from basis count");
  }
  const Eigen::Map<const Eigen::VectorXd> gamma(coefficients.data(), m);
  const Eigen::MatrixXd& full = *cache.i2_product;
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(m, m);

  std::vector<Eigen::MatrixXd> loo(p);
  for (std::size_t i = 0; i < p; ++i) {
    loo[i] = p == 1 ? ones : Eigen::MatrixXd(full.cwiseQuotient(cache.inputs[i].i2.array().matrix() +
                                                                epsilon * ones));
  }
  auto finite = [](const Eigen::MatrixXd& x) {
    if (!x.allFinite()) {
      throw std::domain_error("Hadamard division produced a non-finite value; increase epsilon");
    }
  };

  const auto dim = static_cast<Eigen::Index>(p);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t i = 0; i < p; ++i) {
    finite(loo[i]);
    const auto ii = static_cast<Eigen::Index>(i);
    c(ii, ii) = gamma.dot(cache.inputs[i].i3.cwiseProduct(loo[i]) * gamma);
    for (std::size_t j = i + 1; j < p; ++j) {
      Eigen::MatrixXd rest;
      if (p == 2) {
        rest = ones;
      } else {
        rest = loo[i].cwiseQuotient(cache.inputs[j].i2 + epsilon * ones);
        finite(rest);
      }
      const Eigen::MatrixXd term =
          cache.inputs[i].i1.cwiseProduct(cache.inputs[j].i1.transpose()).cwiseProduct(rest);
      const auto jj = static_cast<Eigen::Index>(j);
      c(ii, jj) = c(jj, ii) = gamma.dot(term * gamma);
    }
  }
  return c;
}

CMatrix assemble_C(const MarsModel& model, const IntegralCache& cache) {
  if (cache.dimension() != model.dimension()) throw InputError("cache dimension differs from model");
  CMatrix out;
  out.values = assemble(model.basis(), model.coefficients(), cache);
  out.model_digest = model_digest(model);
  out.scale = Scale::native;
  return out;
}

std::vector<CoordinateMeasure> model_coordinate_measures(const MarsModel& model,
                                                         const ProductPrior& prior) {
  const std::size_t p = model.dimension();
  if (prior.marginals.size() != p) {
    throw InputError("prior dimension " + std::to_string(prior.marginals.size()) +
                     " differs from model dimension " + std::to_string(p));
  }
  std::vector<CoordinateMeasure> out;
  out.reserve(p);
  const auto& tr = model.input_transform();
  if (tr && !tr->is_diagonal()) {
    throw InputError("product priors need a diagonal input transform");
  }
  for (std::size_t i = 0; i < p; ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    if (tr) {
      out.push_back({prior.marginals[i], tr->diagonal_entries()(k), tr->offset()(k)});
    } else {
      out.push_back({prior.marginals[i], 1.0, 0.0});
    }
  }
  return out;
}

CMatrix compute_C(const MarsModel& model, const PriorSpec& prior, const ComputeOptions& options) {
  validate(prior);
  if (prior.dimension() != model.dimension()) {
    throw InputError("prior dimension " + std::to_string(prior.dimension()) +
                     " differs from model dimension " + std::to_string(model.dimension()));
  }
  return make_cmatrix(compute_values(model, prior, options), model, prior);
}

CMatrix change_coordinates(const CMatrix& c, const AffineMap& to_current, Scale scale) {
  if (to_current.dimension() != c.dimension()) throw InputError("map dimension differs from C");
  CMatrix out = c;
  out.values = to_current.pull_back(c.values);
  out.scale = scale;
  return out;
}

}  // namespace activemars
