#include "activemars/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "activemars/special_functions.hpp"
#include "gauss_legendre.hpp"
#include "overloaded.hpp"

namespace activemars {

namespace {

using detail::overloaded;

double ipow(double x, int r) {
  double out = 1.0;
  for (int k = 0; k < r; ++k) out *= x;
  return out;
}

double binomial(int n, int k) {
  static constexpr double table[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
  return table[n][k];
}

void check_args(int r, double a, double b) {
  if (r < 0 || r > 2) throw std::invalid_argument("truncated moment order must be 0, 1 or 2");
  if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("truncated moment bound is NaN");
}

double unit_uniform_moment(int r, double a, double b) {
  const double lo = std::max(a, 0.0);
  const double hi = std::min(b, 1.0);
  if (!(hi > lo)) return 0.0;
  return (ipow(hi, r + 1) - ipow(lo, r + 1)) / (r + 1);
}

// Uniform(lo, hi) is the image of Uniform(0, 1) under u -> lo + w u.
double uniform_moment(int r, double a, double b, const Uniform& u) {
  const double w = u.hi - u.lo;
  const double ua = (a - u.lo) / w;
  const double ub = (b - u.lo) / w;
  if (!(std::min(ub, 1.0) > std::max(ua, 0.0))) return 0.0;
  double sum = 0.0;
  for (int k = 0; k <= r; ++k) {
    sum += binomial(r, k) * ipow(u.lo, r - k) * ipow(w, k) * unit_uniform_moment(k, ua, ub);
  }
  return sum;
}

double beta_moment(int r, double a, double b, const Beta& m) {
  const double lo = std::max(a, 0.0);
  const double hi = std::min(b, 1.0);
  if (!(hi > lo)) return 0.0;
  // B(alpha + r, beta) / B(alpha, beta) as a finite product.
  double factor = 1.0;
  for (int k = 0; k < r; ++k) factor *= (m.alpha + k) / (m.alpha + m.beta + k);
  const double shape = m.alpha + r;
  double mass;
  if (lo >= shape / (shape + m.beta)) {
    mass = special::regularized_incomplete_beta_complement(lo, shape, m.beta) -
           special::regularized_incomplete_beta_complement(hi, shape, m.beta);
  } else {
    mass = special::regularized_incomplete_beta(hi, shape, m.beta) -
           special::regularized_incomplete_beta(lo, shape, m.beta);
  }
  return factor * std::max(mass, 0.0);
}

double gamma_moment(int r, double a, double b, const Gamma& m) {
  const double lo = std::max(a, 0.0);
  const double hi = b;
  if (!(hi > lo)) return 0.0;
  // Gamma(alpha + r) / (Gamma(alpha) beta^r).
  double factor = 1.0;
  for (int k = 0; k < r; ++k) factor *= (m.shape + k) / m.rate;
  const double shape = m.shape + r;
  const double xl = m.rate * lo;
  const double xh = m.rate * hi;
  double mass;
  if (xl >= shape) {
    mass = special::regularized_upper_incomplete_gamma(xl, shape) -
           special::regularized_upper_incomplete_gamma(xh, shape);
  } else {
    mass = special::regularized_lower_incomplete_gamma(xh, shape) -
           special::regularized_lower_incomplete_gamma(xl, shape);
  }
  return factor * std::max(mass, 0.0);
}

// int_lo^hi z^k phi(z) dz for k = 0, 1, 2.
struct NormalPieces {
  double mass;
  double first;
  double second;
};

double z_phi(double z) { return std::isinf(z) ? 0.0 : z * special::std_normal_pdf(z); }

NormalPieces normal_pieces(double lo, double hi) {
  const bool finite = std::isfinite(lo) && std::isfinite(hi);
  if (finite && (hi - lo) * (1.0 + std::max(std::fabs(lo), std::fabs(hi))) <= 4.0) {
    // Narrow interval: differences of Phi and phi would cancel, so integrate
    // the (entire, slowly varying) integrands directly.
    const auto& rule = detail::GaussLegendre<20>::instance();
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    NormalPieces out{0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double z = mid + half * rule.nodes[k];
      const double w = half * rule.weights[k] * special::std_normal_pdf(z);
      out.mass += w;
      out.first += w * z;
      out.second += w * z * z;
    }
    return out;
  }
  const double mass = special::std_normal_mass(lo, hi);
  const double first = special::std_normal_pdf(lo) - special::std_normal_pdf(hi);
  // int z^2 phi = [Phi - z phi] over the interval.
  const double second = mass + z_phi(lo) - z_phi(hi);
  return {mass, first, std::max(second, 0.0)};
}

double trunc_normal_moment(int r, double a, double b, const TruncNormal& t) {
  const double lo = std::max(a, t.lower);
  const double hi = std::max(lo, std::min(b, t.upper));
  if (!(hi > lo)) return 0.0;
  const double za = (lo - t.mu) / t.sigma;
  const double zb = (hi - t.mu) / t.sigma;
  const double norm =
      normal_pieces((t.lower - t.mu) / t.sigma, (t.upper - t.mu) / t.sigma).mass;
  const NormalPieces pc = normal_pieces(za, zb);
  switch (r) {
    case 0:
      return pc.mass / norm;
    case 1:
      return (t.mu * pc.mass + t.sigma * pc.first) / norm;
    default:
      return (t.mu * t.mu * pc.mass + 2.0 * t.sigma * t.mu * pc.first +
              t.sigma * t.sigma * pc.second) /
             norm;
  }
}

}  // namespace

double truncated_moment(int r, double a, double b, const BaseMeasure& m) {
  check_args(r, a, b);
  return std::visit(overloaded{
                        [&](const Uniform& u) { return uniform_moment(r, a, b, u); },
                        [&](const Beta& x) { return beta_moment(r, a, b, x); },
                        [&](const Gamma& x) { return gamma_moment(r, a, b, x); },
                        [&](const TruncNormal& x) { return trunc_normal_moment(r, a, b, x); },
                    },
                    m);
}

double truncated_moment(int r, double a, double b, const UnivariateMeasure& m) {
  check_args(r, a, b);
  return std::visit(overloaded{
                        [&](const UnivariateMixture& mix) {
                          double sum = 0.0;
                          for (const auto& c : mix.components) {
                            sum += c.weight * truncated_moment(r, a, b, c.measure);
                          }
                          return sum;
                        },
                        [&](const auto& base) { return truncated_moment(r, a, b, BaseMeasure{base}); },
                    },
                    m);
}

double truncated_moment(int r, double a, double b, const CoordinateMeasure& m) {
  check_args(r, a, b);
  if (m.scale == 1.0 && m.shift == 0.0) return truncated_moment(r, a, b, m.measure);
  if (m.scale == 0.0 || !std::isfinite(m.scale) || !std::isfinite(m.shift)) {
    throw std::invalid_argument("coordinate measure needs a finite nonzero scale");
  }
  double xa = (a - m.shift) / m.scale;
  double xb = (b - m.shift) / m.scale;
  if (m.scale < 0.0) std::swap(xa, xb);
  double sum = 0.0;
  for (int k = 0; k <= r; ++k) {
    sum += binomial(r, k) * ipow(m.scale, k) * ipow(m.shift, r - k) *
           truncated_moment(k, xa, xb, m.measure);
  }
  return sum;
}

}  // namespace activemars
