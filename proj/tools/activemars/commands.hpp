#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace activemars::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

struct FitArgs {
  std::string data;
  std::string out;
  std::size_t max_basis = 0;
  std::size_t max_interaction = 3;
  std::string header = "auto";
};

struct ComputeCArgs {
  std::string model;
  std::string prior;
  std::string out;
  std::string csv;
  bool low_memory = false;
  std::optional<double> hadamard_eps;
};

struct SubspaceArgs {
  std::string cmatrix;
  std::string dim = "auto";
  std::optional<double> energy;
  bool activity = false;
  std::string project;
  std::string projection_out;
  std::string eigen_csv;
  std::string out;
};

struct PartitionArgs {
  std::string constraints;
  /// Several values print a coverage ladder; the prior comes from the last one.
  std::vector<double> min_volumes{1e-6};
  std::string out;
  std::string boxes_out;
};

struct VerifyArgs {
  std::string model;
  std::string prior;
  std::string cmatrix;
  std::size_t mc_samples = 100000;
  std::uint64_t seed = 1;
  double se_threshold = 3.0;
  double quad_tolerance = 1e-6;
  std::string report;
};

// Each returns an exit code; InputError and friends propagate to main().
int cmd_fit(const FitArgs& args, std::ostream& out);
int cmd_compute_c(const ComputeCArgs& args, std::ostream& out);
int cmd_subspace(const SubspaceArgs& args, std::ostream& out);
int cmd_partition(const PartitionArgs& args, std::ostream& out);
int cmd_verify(const VerifyArgs& args, std::ostream& out);

}  // namespace activemars::cli
