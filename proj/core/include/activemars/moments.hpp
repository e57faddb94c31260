#pragma once

#include <type_traits>

#include "activemars/measures.hpp"

namespace activemars {

/// xi(r | a, b, rho) = integral_a^b x^r rho(x) dx for r in {0, 1, 2}.
///
/// Bounds may be infinite and are clamped to the measure's support here, so
/// callers pass raw integration bounds. An empty interval after clamping
/// gives exactly 0.
double truncated_moment(int r, double a, double b, const BaseMeasure& m);
double truncated_moment(int r, double a, double b, const UnivariateMeasure& m);

/// Concrete families (Uniform, Beta, ...) convert to both variants above.
template <class M>
  requires std::is_constructible_v<BaseMeasure, const M&> &&
           (!std::is_same_v<M, BaseMeasure>) && (!std::is_same_v<M, UnivariateMeasure>)
double truncated_moment(int r, double a, double b, const M& m) {
  return truncated_moment(r, a, b, BaseMeasure{m});
}

/// Law of z = scale * x + shift with x ~ measure. scale must be nonzero.
/// Used for models whose inputs were rescaled before fitting.
struct CoordinateMeasure {
  UnivariateMeasure measure;
  double scale = 1.0;
  double shift = 0.0;
};

/// Truncated moment of z = scale * x + shift, expanded binomially in the
/// moments of x over the pulled-back interval.
double truncated_moment(int r, double a, double b, const CoordinateMeasure& m);

}  // namespace activemars
