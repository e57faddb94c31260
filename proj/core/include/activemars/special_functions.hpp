#pragma once

// Special functions backing the truncated-moment kernels. Accuracy target is
// 1e-12 absolute for shape parameters up to 1e4.

namespace activemars::special {

double std_normal_pdf(double z);
double std_normal_cdf(double z);
/// Upper tail 1 - Phi(z), accurate for large positive z.
double std_normal_sf(double z);
/// Phi^{-1}(p) for p in (0, 1).
double std_normal_quantile(double p);

/// Mass of the standard normal on [lo, hi]. Uses whichever tail keeps the
/// subtraction well conditioned; never negative.
double std_normal_mass(double lo, double hi);

/// I_x(a, b).
double regularized_incomplete_beta(double x, double a, double b);
/// 1 - I_x(a, b), computed without forming the difference.
double regularized_incomplete_beta_complement(double x, double a, double b);

/// P(a, x) = gamma(a, x) / Gamma(a).
double regularized_lower_incomplete_gamma(double x, double a);
/// Q(a, x) = 1 - P(a, x).
double regularized_upper_incomplete_gamma(double x, double a);
/// Unregularized lower incomplete gamma: integral_0^x t^{a-1} e^{-t} dt.
double lower_incomplete_gamma(double x, double a);

double log_beta(double a, double b);

}  // namespace activemars::special
