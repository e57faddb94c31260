#include "activemars/integrals.hpp"

#include <algorithm>

#include "activemars/cmatrix.hpp"
#include "activemars/errors.hpp"
#include "activemars/parallel.hpp"

namespace activemars {

IntegrationBounds integration_bounds(const HingeTerm* first, const HingeTerm* second) {
  double lower = -kInf;
  double upper = kInf;
  for (const HingeTerm* t : {first, second}) {
    if (t == nullptr) continue;
    if (t->sign > 0) {
      lower = std::max(lower, t->knot);
    } else {
      upper = std::min(upper, t->knot);
    }
  }
  return {lower, std::max(upper, lower)};
}

IntegrationBounds integration_bounds(const BasisFunction& first, const BasisFunction& second,
                                     std::size_t input) {
  return integration_bounds(first.term_for(input), second.term_for(input));
}

PairIntegrals pair_integrals(const BasisFunction& first, const BasisFunction& second,
                             std::size_t input, const CoordinateMeasure& measure) {
  const HingeTerm* h1 = first.term_for(input);
  const HingeTerm* h2 = second.term_for(input);
  PairIntegrals out{integration_bounds(h1, h2), 0.0, 0.0, 0.0, 0.0};
  const double a = out.bounds.lower;
  const double b = out.bounds.upper;
  if (!(b > a)) return out;

  const double xi0 = truncated_moment(0, a, b, measure);
  if (h1 == nullptr && h2 == nullptr) {
    out.i2 = xi0;
    return out;
  }
  const double xi1 = truncated_moment(1, a, b, measure);
  if (h1 != nullptr && h2 != nullptr) {
    const double s = static_cast<double>(h1->sign * h2->sign);
    const double t1 = h1->knot;
    const double t2 = h2->knot;
    const double xi2 = truncated_moment(2, a, b, measure);
    out.i1_forward = s * (xi1 - t2 * xi0);
    out.i1_backward = s * (xi1 - t1 * xi0);
    out.i2 = s * (xi2 - (t1 + t2) * xi1 + t1 * t2 * xi0);
    out.i3 = s * xi0;
    return out;
  }
  // Exactly one side active; the other contributes h = 1 and no indicator.
  const HingeTerm* h = h1 != nullptr ? h1 : h2;
  const double s = static_cast<double>(h->sign);
  out.i2 = s * (xi1 - h->knot * xi0);
  if (h1 != nullptr) {
    out.i1_forward = s * xi0;
  } else {
    out.i1_backward = s * xi0;
  }
  return out;
}

void IntegralCache::materialize_i2_product() {
  const auto m = static_cast<Eigen::Index>(basis_count());
  Eigen::MatrixXd prod = Eigen::MatrixXd::Ones(m, m);
  for (const InputIntegrals& in : inputs) prod = prod.cwiseProduct(in.i2);
  i2_product = std::move(prod);
}

namespace {

void fill_pair(InputIntegrals& t, const std::vector<BasisFunction>& basis, std::size_t input,
               const CoordinateMeasure& measure, std::size_t m1, std::size_t m2) {
  const PairIntegrals pi = pair_integrals(basis[m1], basis[m2], input, measure);
  const auto r = static_cast<Eigen::Index>(m1);
  const auto c = static_cast<Eigen::Index>(m2);
  t.lower(r, c) = t.lower(c, r) = pi.bounds.lower;
  t.upper(r, c) = t.upper(c, r) = pi.bounds.upper;
  t.i2(r, c) = t.i2(c, r) = pi.i2;
  t.i3(r, c) = t.i3(c, r) = pi.i3;
  t.i1(r, c) = pi.i1_forward;
  t.i1(c, r) = pi.i1_backward;
}

}  // namespace

IntegralCache compute_integrals(const std::vector<BasisFunction>& basis,
                                std::vector<CoordinateMeasure> measures, unsigned threads) {
  IntegralCache cache;
  cache.measures = std::move(measures);
  const std::size_t p = cache.measures.size();
  const auto m = static_cast<Eigen::Index>(basis.size());
  cache.inputs.resize(p);
  parallel_for(p, threads, [&](std::size_t i) {
    InputIntegrals& t = cache.inputs[i];
    t.lower.resize(m, m);
    t.upper.resize(m, m);
    t.i1.resize(m, m);
    t.i2.resize(m, m);
    t.i3.resize(m, m);
    for (std::size_t m1 = 0; m1 < basis.size(); ++m1) {
      for (std::size_t m2 = m1; m2 < basis.size(); ++m2) {
        fill_pair(t, basis, i, cache.measures[i], m1, m2);
      }
    }
  });
  return cache;
}

IntegralCache compute_integrals(const MarsModel& model, const ProductPrior& prior, unsigned threads) {
  return compute_integrals(model.basis(), model_coordinate_measures(model, prior), threads);
}

void refresh_basis(IntegralCache& cache, const std::vector<BasisFunction>& basis, std::size_t m) {
  const std::size_t count = basis.size();
  if (m >= count) throw InputError("refresh_basis: index out of range");
  const auto n = static_cast<Eigen::Index>(count);
  for (std::size_t i = 0; i < cache.inputs.size(); ++i) {
    InputIntegrals& t = cache.inputs[i];
    if (t.i2.rows() != n) {
      for (Eigen::MatrixXd* mat : {&t.lower, &t.upper, &t.i1, &t.i2, &t.i3}) {
        mat->conservativeResize(n, n);
      }
    }
    for (std::size_t other = 0; other < count; ++other) {
      fill_pair(t, basis, i, cache.measures[i], std::min(m, other), std::max(m, other));
    }
  }
  cache.i2_product.reset();
}

}  // namespace activemars
