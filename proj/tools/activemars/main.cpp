// activemars: fit surrogates, compute C, extract subspaces, partition
// constrained domains and cross-check against the oracles.
//
// Exit status: 0 success, 1 verification failure, 2 input or usage error.

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "activemars/errors.hpp"
#include "activemars/version.hpp"
#include "commands.hpp"

using namespace activemars::cli;

int main(int argc, char** argv) {
  CLI::App app{"Active subspaces of MARS surrogates in closed form"};
  app.set_version_flag("--version", activemars::kVersion);
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a MARS surrogate to a CSV dataset (inputs, then response)");
  fit_cmd->add_option("data", fit.data, "Dataset CSV")->required();
  fit_cmd->add_option("--out,-o", fit.out, "Model file to write")->required();
  fit_cmd->add_option("--max-basis", fit.max_basis, "Basis cap (0 = automatic)");
  fit_cmd->add_option("--max-interaction", fit.max_interaction, "Inputs per basis function")
      ->check(CLI::PositiveNumber);
  fit_cmd->add_option("--header", fit.header, "Header row: auto, yes or no")
      ->check(CLI::IsMember({"auto", "yes", "no"}));

  ComputeCArgs cc;
  auto* cc_cmd = app.add_subcommand("compute-c", "Closed-form C for a model and prior");
  cc_cmd->add_option("model", cc.model, "Model file")->required();
  cc_cmd->add_option("prior", cc.prior, "Prior file")->required();
  cc_cmd->add_option("--out,-o", cc.out, "C matrix file to write");
  cc_cmd->add_option("--csv", cc.csv, "Also write C as CSV");
  cc_cmd->add_flag("--low-memory", cc.low_memory, "Recompute integrals per basis pair");
  cc_cmd->add_option("--hadamard-eps", cc.hadamard_eps, "Use the Hadamard-division approximation");

  SubspaceArgs ss;
  auto* ss_cmd = app.add_subcommand("subspace", "Eigen-decompose C and choose the active dimension");
  ss_cmd->add_option("cmatrix", ss.cmatrix, "C matrix file (JSON, or CSV by extension)")->required();
  ss_cmd->add_option("--dim", ss.dim, "auto or a dimension k >= 1");
  ss_cmd->add_option("--energy", ss.energy, "With --dim auto: smallest r holding this eigenvalue share")
      ->check(CLI::Range(0.0, 1.0));
  ss_cmd->add_flag("--activity", ss.activity, "Print activity scores");
  auto* project_opt = ss_cmd->add_option("--project", ss.project, "CSV of input rows to project");
  ss_cmd->add_option("--projection-out", ss.projection_out, "Projection CSV (n rows, dim columns)")
      ->needs(project_opt);
  project_opt->needs(ss_cmd->get_option("--projection-out"));
  ss_cmd->add_option("--eigen-csv", ss.eigen_csv, "Eigenvalue table for plotting");
  ss_cmd->add_option("--out,-o", ss.out, "Subspace file to write");

  PartitionArgs pa;
  auto* pa_cmd = app.add_subcommand("partition", "Box partition of a linearly constrained domain");
  pa_cmd->add_option("constraints", pa.constraints, "Constraints file")->required();
  pa_cmd->add_option("--min-volume", pa.min_volumes, "Smallest box kept; several values print a ladder")
      ->expected(1, -1);
  pa_cmd->add_option("--out,-o", pa.out, "Prior file to write (from the last --min-volume)");
  pa_cmd->add_option("--boxes-csv", pa.boxes_out, "Box corners and weights as CSV");

  VerifyArgs ve;
  auto* ve_cmd = app.add_subcommand("verify", "Cross-check C against Monte Carlo and quadrature");
  ve_cmd->add_option("model", ve.model, "Model file")->required();
  ve_cmd->add_option("prior", ve.prior, "Prior file")->required();
  ve_cmd->add_option("--cmatrix", ve.cmatrix, "Check this C instead of recomputing it");
  ve_cmd->add_option("--mc-samples", ve.mc_samples, "Monte Carlo sample count")->check(CLI::Range(2, 1000000000));
  ve_cmd->add_option("--seed", ve.seed, "Monte Carlo seed");
  ve_cmd->add_option("--se-threshold", ve.se_threshold, "Allowed standard-error multiple")
      ->check(CLI::PositiveNumber);
  ve_cmd->add_option("--quad-tolerance", ve.quad_tolerance, "Allowed relative Frobenius gap to quadrature")
      ->check(CLI::PositiveNumber);
  ve_cmd->add_option("--report", ve.report, "Report file (a timing manifest goes next to it)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*fit_cmd) return cmd_fit(fit, std::cout);
    if (*cc_cmd) return cmd_compute_c(cc, std::cout);
    if (*ss_cmd) return cmd_subspace(ss, std::cout);
    if (*pa_cmd) return cmd_partition(pa, std::cout);
    if (*ve_cmd) return cmd_verify(ve, std::cout);
  } catch (const activemars::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}
