#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "activemars/cmatrix.hpp"
#include "activemars/digest.hpp"
#include "activemars/errors.hpp"
#include "activemars/fit.hpp"
#include "activemars/formats.hpp"
#include "activemars/io.hpp"
#include "activemars/oracle.hpp"
#include "activemars/partition.hpp"
#include "activemars/subspace.hpp"
#include "activemars/version.hpp"
#include "manifest.hpp"

namespace activemars::cli {

namespace {

std::string num(double x, const char* f = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string row_string(const Eigen::VectorXd& v, const char* f = "%.6g") {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v(i), f);
  return s + "]";
}

void print_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) out << "  " << row_string(m.row(i).transpose(), "%.10g") << '\n';
}

HeaderMode header_mode(const std::string& s) {
  if (s == "auto") return HeaderMode::automatic;
  if (s == "yes") return HeaderMode::present;
  if (s == "no") return HeaderMode::absent;
  throw InputError("--header must be auto, yes or no");
}

// Min-max map onto [0,1], used when some input column leaves the unit interval.
std::optional<AffineMap> unit_rescaling(const Eigen::MatrixXd& x) {
  const Eigen::VectorXd lo = x.colwise().minCoeff().transpose();
  const Eigen::VectorXd hi = x.colwise().maxCoeff().transpose();
  if ((lo.array() >= 0.0).all() && (hi.array() <= 1.0).all()) return std::nullopt;
  Eigen::VectorXd scale(lo.size());
  for (Eigen::Index j = 0; j < lo.size(); ++j) scale(j) = hi(j) > lo(j) ? 1.0 / (hi(j) - lo(j)) : 1.0;
  return AffineMap::diagonal(scale, -scale.cwiseProduct(lo));
}

Eigen::MatrixXd read_c_values(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return read_matrix_csv(path);
  return read_cmatrix(path).values;
}

std::size_t parse_dim(const std::string& s, std::size_t p) {
  std::size_t used = 0;
  long long k = 0;
  try {
    k = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || k < 1 || static_cast<std::size_t>(k) > p) {
    throw InputError("--dim must be 'auto' or an integer in [1, " + std::to_string(p) + "], got '" + s + "'");
  }
  return static_cast<std::size_t>(k);
}

}  // namespace

int cmd_fit(const FitArgs& args, std::ostream& out) {
  RunManifest manifest("fit");
  manifest.add_input("data", args.data);
  DatasetSpec data = read_dataset_csv(args.data, header_mode(args.header));
  data.validate();

  const std::optional<AffineMap> rescale = unit_rescaling(data.design);
  if (rescale) {
    for (Eigen::Index i = 0; i < data.design.rows(); ++i) {
      data.design.row(i) = rescale->apply(data.design.row(i).transpose()).transpose();
    }
  }
  FitConfig config;
  config.max_basis = args.max_basis;
  config.max_interaction = args.max_interaction;
  MarsModel model = fit_greedy(data, config);
  const double train_rmse = rmse(model, data);
  if (rescale) model = model.with_transform(*rescale);

  manifest.set_config({{"max_basis", args.max_basis},
                       {"max_interaction", args.max_interaction},
                       {"header", args.header},
                       {"input_rescaling", rescale ? "min-max" : "none"}});
  write_model(args.out, model, manifest.to_json());

  out << "rows: " << data.size() << ", inputs: " << data.dimension() << '\n';
  out << "input rescaling: " << (rescale ? "min-max to [0,1]" : "none") << '\n';
  out << "basis functions: " << model.size() << '\n';
  out << "training rmse: " << num(train_rmse) << '\n';
  out << "model written to " << args.out << '\n';
  return kExitOk;
}

int cmd_compute_c(const ComputeCArgs& args, std::ostream& out) {
  RunManifest manifest("compute-c");
  manifest.add_input("model", args.model);
  manifest.add_input("prior", args.prior);
  const MarsModel model = read_model(args.model);
  const PriorSpec prior = read_prior(args.prior);

  ComputeTimings timings;
  ComputeOptions options;
  options.low_memory = args.low_memory;
  options.hadamard_epsilon = args.hadamard_eps;
  options.timings = &timings;
  const CMatrix c = compute_C(model, prior, options);

  manifest.set_config({{"low_memory", args.low_memory},
                       {"hadamard_eps", args.hadamard_eps ? Json(*args.hadamard_eps) : Json(nullptr)}});
  Json doc_manifest = manifest.to_json();
  doc_manifest["integrals_seconds"] = timings.integrals_seconds;
  doc_manifest["assembly_seconds"] = timings.assembly_seconds;
  if (!args.out.empty()) write_cmatrix(args.out, c, doc_manifest);
  if (!args.csv.empty()) write_matrix_csv(args.csv, c.values);

  out << "p = " << c.dimension() << ", basis functions = " << model.size() << '\n';
  out << "C =\n";
  print_matrix(out, c.values);
  out << "time: integrals " << num(timings.integrals_seconds, "%.3f") << " s, assembly "
      << num(timings.assembly_seconds, "%.3f") << " s\n";
  if (!args.out.empty()) out << "matrix written to " << args.out << '\n';
  return kExitOk;
}

int cmd_subspace(const SubspaceArgs& args, std::ostream& out) {
  RunManifest manifest("subspace");
  manifest.add_input("cmatrix", args.cmatrix);
  const Eigen::MatrixXd c = read_c_values(args.cmatrix);
  ActiveSubspace s = decompose(c);
  const std::size_t p = s.dimension();

  std::size_t dim = 0;
  if (args.dim == "auto") {
    DimensionPolicy policy;
    if (args.energy) {
      policy.kind = DimensionPolicy::Kind::energy;
      policy.energy = *args.energy;
    }
    const DimensionChoice choice = choose_dimension(s, policy);
    if (choice.all_zero) out << "warning: C is zero; no active directions\n";
    dim = choice.dim;
  } else {
    dim = parse_dim(args.dim, p);
  }
  s.chosen_dim = dim;
  s.activity_scores = dim > 0 ? activity_scores(s, dim) : Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p));

  out << "eigenvalues: " << row_string(s.eigenvalues) << '\n';
  out << "active dimension: " << dim << '\n';
  for (std::size_t k = 0; k < dim; ++k) {
    out << "w" << k + 1 << " = " << row_string(s.eigenvectors.col(static_cast<Eigen::Index>(k)), "%.3f") << '\n';
  }
  if (args.activity) out << "activity scores: " << row_string(s.activity_scores) << '\n';

  if (!args.project.empty()) {
    if (dim == 0) throw InputError("projection needs an active dimension of at least 1");
    manifest.add_input("project", args.project);
    Eigen::MatrixXd x = read_matrix_csv(args.project);
    if (static_cast<std::size_t>(x.cols()) == p + 1) x.conservativeResize(Eigen::NoChange, x.cols() - 1);
    if (static_cast<std::size_t>(x.cols()) != p) {
      throw InputError("projection data has " + std::to_string(x.cols()) + " columns, expected " +
                       std::to_string(p) + " (or " + std::to_string(p + 1) + " with a response)");
    }
    std::vector<std::string> header;
    for (std::size_t k = 0; k < dim; ++k) header.push_back("active_" + std::to_string(k + 1));
    write_matrix_csv(args.projection_out, project(s, x), header);
    out << "projection (" << x.rows() << " x " << dim << ") written to " << args.projection_out << '\n';
  }
  if (!args.eigen_csv.empty()) {
    Eigen::MatrixXd table(static_cast<Eigen::Index>(p), 3);
    const double top = s.eigenvalues.size() && s.eigenvalues(0) > 0.0 ? std::sqrt(s.eigenvalues(0)) : 1.0;
    for (Eigen::Index i = 0; i < table.rows(); ++i) {
      table(i, 0) = static_cast<double>(i + 1);
      table(i, 1) = s.eigenvalues(i);
      table(i, 2) = std::sqrt(s.eigenvalues(i)) / top;
    }
    write_matrix_csv(args.eigen_csv, table, {"index", "eigenvalue", "sqrt_normalised"});
  }

  manifest.set_config({{"dim", args.dim}, {"energy", args.energy ? Json(*args.energy) : Json(nullptr)}});
  if (!args.out.empty()) {
    Json doc = subspace_to_json(s);
    doc["manifest"] = manifest.to_json();
    write_json_file(args.out, doc);
  }
  return kExitOk;
}

int cmd_partition(const PartitionArgs& args, std::ostream& out) {
  RunManifest manifest("partition");
  manifest.add_input("constraints", args.constraints);
  const LinearConstraintSet constraints = read_constraints(args.constraints);
  if (args.min_volumes.empty()) throw InputError("--min-volume needs a value");
  BoxPartition part;
  for (double v : args.min_volumes) {
    if (!(v > 0.0)) throw InputError("--min-volume must be positive");
    part = partition(constraints, v);
    out << "min volume " << num(v) << ": boxes " << part.boxes.size() << ", covered volume "
        << num(part.covered_volume, "%.6f") << '\n';
  }
  if (part.boxes.empty()) {
    out << "status: empty region\n";
    return kExitInputError;
  }
  manifest.set_config({{"min_volume", args.min_volumes}});
  if (!args.out.empty()) {
    write_prior(args.out, to_prior(part), manifest.to_json());
    out << "prior written to " << args.out << '\n';
  }
  if (!args.boxes_out.empty()) {
    const auto p = static_cast<Eigen::Index>(constraints.dimension());
    Eigen::MatrixXd table(static_cast<Eigen::Index>(part.boxes.size()), 2 * p + 1);
    std::vector<std::string> header;
    for (Eigen::Index j = 0; j < p; ++j) header.push_back("lower_" + std::to_string(j + 1));
    for (Eigen::Index j = 0; j < p; ++j) header.push_back("upper_" + std::to_string(j + 1));
    header.push_back("weight");
    for (std::size_t b = 0; b < part.boxes.size(); ++b) {
      const auto r = static_cast<Eigen::Index>(b);
      table.row(r).head(p) = part.boxes[b].lower.transpose();
      table.row(r).segment(p, p) = part.boxes[b].upper.transpose();
      table(r, 2 * p) = part.weights[b];
    }
    write_matrix_csv(args.boxes_out, table, header);
  }
  return kExitOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  RunManifest manifest("verify");
  manifest.add_input("model", args.model);
  manifest.add_input("prior", args.prior);
  const MarsModel model = read_model(args.model);
  const PriorSpec prior = read_prior(args.prior);
  if (prior.dimension() != model.dimension()) throw InputError("prior dimension differs from model dimension");

  Eigen::MatrixXd c;
  if (args.cmatrix.empty()) {
    c = compute_C(model, prior).values;
  } else {
    manifest.add_input("cmatrix", args.cmatrix);
    c = read_c_values(args.cmatrix);
    if (static_cast<std::size_t>(c.rows()) != model.dimension() || c.cols() != c.rows()) {
      throw InputError("C matrix size does not match the model");
    }
  }
  manifest.set_seed(args.seed);
  manifest.set_config({{"mc_samples", args.mc_samples},
                       {"se_threshold", args.se_threshold},
                       {"quad_tolerance", args.quad_tolerance}});

  const OracleEstimate mc = mc_C(model, prior, args.mc_samples, args.seed);
  const Eigen::MatrixXd& se = *mc.std_error;
  const double scale = std::max(c.cwiseAbs().maxCoeff(), mc.value.cwiseAbs().maxCoeff());

  Json entries = Json::array();
  double worst = 0.0;
  std::size_t beyond = 0;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (Eigen::Index j = i; j < c.cols(); ++j) {
      const double diff = std::abs(c(i, j) - mc.value(i, j));
      double multiple = 0.0;
      if (se(i, j) > 0.0) {
        multiple = diff / se(i, j);
      } else if (diff > 1e-12 * std::max(scale, 1.0)) {
        multiple = std::numeric_limits<double>::infinity();
      }
      worst = std::max(worst, multiple);
      if (multiple > args.se_threshold) {
        ++beyond;
        entries.push_back({{"i", i}, {"j", j}, {"closed_form", c(i, j)}, {"monte_carlo", mc.value(i, j)},
                           {"std_error", se(i, j)}, {"se_multiple", real_to_json(multiple)}});
      }
    }
  }
  const bool mc_pass = beyond == 0;

  Json quad = {{"status", "skipped"}};
  bool quad_pass = true;
  if (model.dimension() <= 8) {
    try {
      const OracleEstimate q = quad_C(model, prior);
      const double denom = std::max(q.value.norm(), std::numeric_limits<double>::min());
      const double rel = (c - q.value).norm() / denom;
      quad_pass = rel <= args.quad_tolerance;
      quad = {{"status", quad_pass ? "pass" : "fail"},
              {"relative_frobenius", rel},
              {"scaled_error", subspace_error(c, q.value)}};
    } catch (const InputError& e) {
      quad = {{"status", "not applicable"}, {"reason", e.what()}};
    }
  }
  const bool pass = mc_pass && quad_pass;

  const Json report = {{"version", kFormatVersion},
                       {"result", pass ? "PASS" : "FAIL"},
                       {"model_digest", model_digest(model)},
                       {"prior_digest", prior_digest(prior)},
                       {"source", args.cmatrix.empty() ? "closed form" : "file"},
                       {"monte_carlo",
                        {{"samples", args.mc_samples},
                         {"seed", args.seed},
                         {"scaled_error", subspace_error(c, mc.value)},
                         {"max_se_multiple", real_to_json(worst)},
                         {"entries_beyond_threshold", beyond},
                         {"failing_entries", entries}}},
                       {"quadrature", quad},
                       {"manifest", manifest.to_json(false)}};

  out << "source: " << report["source"].get<std::string>() << '\n';
  out << "monte carlo: N=" << args.mc_samples << " seed=" << args.seed
      << " scaled error=" << num(report["monte_carlo"]["scaled_error"].get<double>(), "%.6e")
      << " max SE multiple=" << num(worst, "%.4f") << '\n';
  for (const auto& e : entries) {
    out << "  entry (" << e["i"].get<long>() << "," << e["j"].get<long>()
        << "): closed=" << num(e["closed_form"].get<double>(), "%.10g")
        << " mc=" << num(e["monte_carlo"].get<double>(), "%.10g")
        << " se=" << num(e["std_error"].get<double>(), "%.3e")
        << " multiple=" << num(json_to_real(e["se_multiple"]), "%.2f") << '\n';
  }
  out << "quadrature: " << quad["status"].get<std::string>();
  if (quad.contains("relative_frobenius")) out << " relative error=" << num(quad["relative_frobenius"].get<double>(), "%.3e");
  out << '\n';
  out << "result: " << (pass ? "PASS" : "FAIL") << '\n';

  if (!args.report.empty()) {
    write_json_file(args.report, report);
    write_json_file(args.report + ".manifest.json", manifest.to_json());
  }
  return pass ? kExitOk : kExitVerificationFailed;
}

}  // namespace activemars::cli
