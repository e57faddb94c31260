#include "activemars/formats.hpp"

#include <string>

#include "activemars/errors.hpp"
#include "activemars/version.hpp"
#include "json_util.hpp"

namespace activemars {

using detail::matrix_to_json;
using detail::square_from_json;
using detail::vector_from_json;
using detail::vector_to_json;

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed ") + what + ": " + e.what());
  }
}

}  // namespace

Json cmatrix_to_json(const CMatrix& c) {
  return {{"version", kFormatVersion},
          {"p", c.dimension()},
          {"scale", c.scale == Scale::unit ? "unit" : "native"},
          {"values", matrix_to_json(c.values)},
          {"prior_digest", c.prior_digest},
          {"model_digest", c.model_digest}};
}

CMatrix cmatrix_from_json(const Json& doc) {
  check_version(doc);
  return guarded("C matrix file", [&] {
    CMatrix c;
    const auto p = doc.at("p").get<std::size_t>();
    c.values = square_from_json(doc.at("values"), p, "values");
    const auto scale = doc.value("scale", std::string("native"));
    if (scale != "native" && scale != "unit") throw InputError("scale must be 'native' or 'unit'");
    c.scale = scale == "unit" ? Scale::unit : Scale::native;
    c.prior_digest = doc.value("prior_digest", std::string());
    c.model_digest = doc.value("model_digest", std::string());
    if (!c.values.allFinite()) throw InputError("C matrix has non-finite entries");
    return c;
  });
}

void write_cmatrix(const std::filesystem::path& path, const CMatrix& c, const Json& manifest) {
  Json doc = cmatrix_to_json(c);
  if (!manifest.is_null()) doc["manifest"] = manifest;
  write_json_file(path, doc);
}

CMatrix read_cmatrix(const std::filesystem::path& path) { return cmatrix_from_json(read_json_file(path)); }

Json subspace_to_json(const ActiveSubspace& s) {
  return {{"version", kFormatVersion},
          {"p", s.dimension()},
          {"eigenvalues", vector_to_json(s.eigenvalues)},
          {"eigenvectors", matrix_to_json(s.eigenvectors)},
          {"chosen_dim", s.chosen_dim},
          {"activity_scores", vector_to_json(s.activity_scores)}};
}

ActiveSubspace subspace_from_json(const Json& doc) {
  check_version(doc);
  return guarded("subspace file", [&] {
    ActiveSubspace s;
    s.eigenvalues = vector_from_json(doc.at("eigenvalues"), "eigenvalues");
    const auto p = static_cast<std::size_t>(s.eigenvalues.size());
    s.eigenvectors = square_from_json(doc.at("eigenvectors"), p, "eigenvectors");
    s.chosen_dim = doc.at("chosen_dim").get<std::size_t>();
    s.activity_scores = vector_from_json(doc.at("activity_scores"), "activity_scores");
    if (s.chosen_dim > p || static_cast<std::size_t>(s.activity_scores.size()) != p) {
      throw InputError("subspace file is inconsistent");
    }
    return s;
  });
}

Json partition_to_json(const BoxPartition& partition) {
  Json boxes = Json::array();
  for (std::size_t l = 0; l < partition.boxes.size(); ++l) {
    boxes.push_back({{"lower", vector_to_json(partition.boxes[l].lower)},
                     {"upper", vector_to_json(partition.boxes[l].upper)},
                     {"weight", partition.weights[l]}});
  }
  return {{"version", kFormatVersion},
          {"boxes", std::move(boxes)},
          {"covered_volume", partition.covered_volume},
          {"min_volume", partition.min_volume},
          {"split_dims", partition.split_dims}};
}

BoxPartition partition_from_json(const Json& doc) {
  check_version(doc);
  return guarded("partition file", [&] {
    BoxPartition out;
    for (const Json& b : doc.at("boxes")) {
      out.boxes.push_back({vector_from_json(b.at("lower"), "lower"), vector_from_json(b.at("upper"), "upper")});
      out.weights.push_back(b.at("weight").get<double>());
    }
    out.covered_volume = doc.at("covered_volume").get<double>();
    out.min_volume = doc.at("min_volume").get<double>();
    out.split_dims = doc.value("split_dims", std::vector<std::size_t>{});
    return out;
  });
}

Json constraints_to_json(const LinearConstraintSet& constraints) {
  Json rows = Json::array();
  for (const auto& r : constraints.rows) {
    rows.push_back({{"coeffs", vector_to_json(r.coeffs)}, {"rhs", r.rhs}});
  }
  return {{"version", kFormatVersion},
          {"p", constraints.dimension()},
          {"lower", vector_to_json(constraints.lower)},
          {"upper", vector_to_json(constraints.upper)},
          {"constraints", std::move(rows)}};
}

LinearConstraintSet constraints_from_json(const Json& doc) {
  check_version(doc);
  LinearConstraintSet out = guarded("constraint file", [&] {
    const auto p = doc.at("p").get<std::size_t>();
    if (p == 0) throw InputError("constraint file needs p >= 1");
    LinearConstraintSet cs = LinearConstraintSet::unit_box(p);
    if (doc.contains("lower")) cs.lower = vector_from_json(doc["lower"], "lower");
    if (doc.contains("upper")) cs.upper = vector_from_json(doc["upper"], "upper");
    for (const Json& r : doc.value("constraints", Json::array())) {
      cs.rows.push_back({vector_from_json(r.at("coeffs"), "coeffs"), json_to_real(r.at("rhs"))});
    }
    for (const Json& pair : doc.value("order", Json::array())) {
      const auto i = pair.at(0).get<std::size_t>();
      const auto j = pair.at(1).get<std::size_t>();
      if (i >= p || j >= p) throw InputError("order constraint index out of range");
      cs.add_order(i, j);
    }
    return cs;
  });
  out.validate();
  return out;
}

LinearConstraintSet read_constraints(const std::filesystem::path& path) {
  return constraints_from_json(read_json_file(path));
}

}  // namespace activemars
