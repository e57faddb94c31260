#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "activemars/integrals.hpp"
#include "activemars/mars_model.hpp"
#include "activemars/measures.hpp"

namespace activemars {

enum class Scale { native, unit };

/// E[grad f grad f^T] with provenance.
struct CMatrix {
  Eigen::MatrixXd values;
  std::string prior_digest;
  std::string model_digest;
  Scale scale = Scale::native;

  std::size_t dimension() const { return static_cast<std::size_t>(values.rows()); }
};

/// Symmetry and numerical-PSD diagnostics.
struct CMatrixCheck {
  double asymmetry = 0.0;        // max |C - C^T| / max |C|
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool symmetric = true;         // asymmetry <= 1e-10
  bool psd = true;               // min >= -1e-8 * max
};
CMatrixCheck check(const Eigen::MatrixXd& c);

/// Quadratic-form assembly from a filled cache; the intercept never enters.
Eigen::MatrixXd assemble(std::span<const BasisFunction> basis,
                         std::span<const double> coefficients,
                         const IntegralCache& cache);

/// Same sums with every integral recomputed on the fly (O(p) memory per
/// basis pair instead of O(p M^2)). Bitwise identical to assemble().
Eigen::MatrixXd assemble_in_situ(std::span<const BasisFunction> basis,
                                 std::span<const double> coefficients,
                                 const std::vector<CoordinateMeasure>& measures);

/// Approximate leave-one-out / leave-two-out I2 products by Hadamard division
/// of the full product, each divisor regularised by +epsilon. Requires
/// cache.i2_product. Throws std::domain_error when a division produces a
/// non-finite value (e.g. epsilon = 0 against a zero I2 entry).
Eigen::MatrixXd assemble_hadamard_approx(std::span<const double> coefficients,
                                         const IntegralCache& cache, double epsilon);

/// C for a model under a product prior in model coordinates (no transform).
CMatrix assemble_C(const MarsModel& model, const IntegralCache& cache);

struct ComputeTimings {
  double integrals_seconds = 0.0;
  double assembly_seconds = 0.0;
};

struct ComputeOptions {
  /// Recompute integrals per basis pair instead of caching them.
  bool low_memory = false;
  /// Use the Hadamard-division approximation with this epsilon.
  std::optional<double> hadamard_epsilon;
  /// 0 = default_thread_count().
  unsigned threads = 0;
  /// When set, wall time spent in the integral pass and in assembly is added
  /// here (summed over mixture components).
  ComputeTimings* timings = nullptr;
};

/// Closed-form C in native coordinates.
///
/// Product priors are taken over native inputs and pushed through a diagonal
/// input transform. Gaussian priors are pushed through the transform (or used
/// directly without one) and must then be uncorrelated, which holds when the
/// model was trained on standardize()d inputs. Mixtures are summed component
/// by component in order. Throws InputError on dimension or transform
/// mismatches.
CMatrix compute_C(const MarsModel& model, const PriorSpec& prior,
                  const ComputeOptions& options = {});

/// Coordinate measures seen by the model (z-space) for a product prior.
std::vector<CoordinateMeasure> model_coordinate_measures(const MarsModel& model,
                                                         const ProductPrior& prior);

/// Affine change of variables: given the map u -> x = A u + b from a new
/// coordinate system to the one C was computed in, return A^T C A.
CMatrix change_coordinates(const CMatrix& c, const AffineMap& to_current, Scale scale);

}  // namespace activemars
