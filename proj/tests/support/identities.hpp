#pragma once

// Reparameterised copies of (model, prior) pairs for change-of-variables
// checks. Each builder returns the same function written in new coordinates
// together with the Jacobian du/dx, so C_x = J^T C_u J must hold.

#include <vector>

#include <Eigen/Dense>

#include "activemars/cmatrix.hpp"
#include "activemars/mars_model.hpp"
#include "activemars/measures.hpp"
#include "activemars/moments.hpp"
#include "support/generators.hpp"

namespace testing {

/// u_{perm(i)} = alpha_i x_i + beta_i with alpha, beta chosen so every knot
/// stays inside [0, 1]. The hinge [s(x_i - t)]_+ becomes
/// [s'(u - alpha t - beta)]_+ / |alpha| with s' = s sign(alpha).
struct ScaledPermutation {
  activemars::MarsModel model_u;
  std::vector<activemars::CoordinateMeasure> measures_u;
  Eigen::MatrixXd jacobian;
};
ScaledPermutation scaled_permutation(Gen& g, const activemars::MarsModel& model,
                                     const activemars::ProductPrior& prior);

/// C of a transform-free model under coordinate measures, straight from the
/// integral tables.
Eigen::MatrixXd closed_form(const activemars::MarsModel& model,
                            const std::vector<activemars::CoordinateMeasure>& measures);

/// Model in whitened coordinates z = A x + b with x ~ N(mean, cov) and
/// A cov A^T diagonal, so the closed form applies with a dense map.
struct GaussianCase {
  activemars::MarsModel model;
  activemars::GaussianPrior prior;
};
GaussianCase gaussian_case(Gen& g, std::size_t p, std::size_t basis_count, const Eigen::MatrixXd& a);

/// The same case after x = B u + c.
GaussianCase reparameterise(const GaussianCase& c, const Eigen::MatrixXd& b, const Eigen::VectorXd& shift);

}  // namespace testing
