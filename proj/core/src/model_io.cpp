#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "activemars/errors.hpp"
#include "activemars/io.hpp"
#include "activemars/version.hpp"
#include "json_util.hpp"

namespace activemars {

using detail::matrix_to_json;
using detail::square_from_json;
using detail::vector_from_json;

namespace detail {

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(real_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::VectorXd vector_from_json(const Json& v, const char* what) {
  if (!v.is_array()) throw InputError(std::string(what) + " must be an array");
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = json_to_real(v[i]);
  return out;
}

// Nested rows, or a flat row-major array of n*n numbers.
Eigen::MatrixXd square_from_json(const Json& v, std::size_t n, const char* what) {
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd out(dim, dim);
  if (!v.is_array()) throw InputError(std::string(what) + " must be an array");
  if (v.size() == n * n && (n == 0 || !v[0].is_array())) {
    for (std::size_t k = 0; k < n * n; ++k) {
      out(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = json_to_real(v[k]);
    }
    return out;
  }
  if (v.size() != n) throw InputError(std::string(what) + " has the wrong number of rows");
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = v[i];
    if (!row.is_array() || row.size() != n) {
      throw InputError(std::string(what) + " has a row of the wrong length");
    }
    for (std::size_t j = 0; j < n; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = json_to_real(row[j]);
    }
  }
  return out;
}

}  // namespace detail

double json_to_real(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw InputError("expected a number, got " + v.dump());
}

Json real_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? Json("inf") : Json("-inf");
  if (std::isnan(v)) throw InputError("cannot serialize NaN");
  return v;
}

void check_version(const Json& doc) {
  if (!doc.is_object() || !doc.contains("version")) {
    throw InputError("document has no version field");
  }
  const Json& v = doc["version"];
  int major = -1;
  if (v.is_number_integer()) {
    major = v.get<int>();
  } else if (v.is_string()) {
    major = std::atoi(v.get<std::string>().c_str());
  }
  if (major != kFormatVersion) {
    throw InputError("unsupported format version " + v.dump() + " (expected " +
                     std::to_string(kFormatVersion) + ")");
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

Json model_to_json(const MarsModel& model) {
  Json doc;
  doc["version"] = kFormatVersion;
  doc["p"] = model.dimension();
  doc["intercept"] = model.intercept();
  doc["coefficients"] = model.coefficients();
  Json basis = Json::array();
  for (const BasisFunction& b : model.basis()) {
    Json terms = Json::array();
    for (const HingeTerm& t : b.terms()) {
      terms.push_back({{"index", t.input}, {"sign", t.sign}, {"knot", t.knot}});
    }
    basis.push_back(std::move(terms));
  }
  doc["basis"] = std::move(basis);
  if (const auto& tr = model.input_transform()) {
    doc["input_transform"] = {{"matrix", matrix_to_json(tr->matrix())},
                              {"offset", std::vector<double>(tr->offset().data(),
                                                             tr->offset().data() +
                                                                 tr->offset().size())}};
  }
  return doc;
}

MarsModel model_from_json(const Json& doc) {
  check_version(doc);
  try {
    const auto p = doc.at("p").get<std::size_t>();
    const double intercept = json_to_real(doc.at("intercept"));
    std::vector<double> coefficients;
    for (const Json& c : doc.at("coefficients")) coefficients.push_back(json_to_real(c));
    std::vector<BasisFunction> basis;
    for (const Json& terms : doc.at("basis")) {
      if (!terms.is_array()) throw InputError("each basis entry must be an array of terms");
      std::vector<HingeTerm> hinge;
      for (const Json& t : terms) {
        const double knot = json_to_real(t.at("knot"));
        if (!(knot >= 0.0 && knot <= 1.0)) throw InputError("knot out of [0,1]");
        hinge.push_back({t.at("index").get<std::size_t>(), t.at("sign").get<int>(), knot});
      }
      basis.emplace_back(std::move(hinge));
    }
    std::optional<AffineMap> transform;
    if (doc.contains("input_transform") && !doc["input_transform"].is_null()) {
      const Json& tr = doc["input_transform"];
      Eigen::VectorXd offset = vector_from_json(tr.at("offset"), "input_transform.offset");
      Eigen::MatrixXd a = square_from_json(tr.at("matrix"), static_cast<std::size_t>(offset.size()),
                                           "input_transform.matrix");
      if (a.isDiagonal(0.0)) {
        transform = AffineMap::diagonal(a.diagonal(), std::move(offset));
      } else {
        transform = AffineMap(std::move(a), std::move(offset));
      }
    }
    return MarsModel(p, intercept, std::move(coefficients), std::move(basis), std::move(transform));
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed model file: ") + e.what());
  }
}

void write_model(const std::filesystem::path& path, const MarsModel& model, const Json& manifest) {
  Json doc = model_to_json(model);
  if (!manifest.is_null()) doc["manifest"] = manifest;
  write_json_file(path, doc);
}

MarsModel read_model(const std::filesystem::path& path) { return model_from_json(read_json_file(path)); }

// CSV ----------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& field, double& out) {
  if (field.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(field.c_str(), &end);
  return errno == 0 && end == field.c_str() + field.size();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) fields.push_back(trim(f));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path, HeaderMode header) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  std::size_t width = 0;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(trim(line));
    std::vector<double> values(fields.size());
    bool numeric = true;
    for (std::size_t k = 0; k < fields.size(); ++k) numeric = numeric && parse_number(fields[k], values[k]);
    if (first) {
      first = false;
      width = fields.size();
      const bool is_header = header == HeaderMode::present ||
                             (header == HeaderMode::automatic && !numeric);
      if (is_header) continue;
    }
    if (!numeric) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": non-numeric field");
    }
    if (fields.size() != width) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(width) + " fields");
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw InputError(path.string() + ": empty CSV (no data rows)");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

DatasetSpec read_dataset_csv(const std::filesystem::path& path, HeaderMode header) {
  const Eigen::MatrixXd m = read_matrix_csv(path, header);
  if (m.cols() < 2) throw InputError(path.string() + ": need at least one input and a response");
  DatasetSpec data{m.leftCols(m.cols() - 1), m.col(m.cols() - 1)};
  data.validate();
  return data;
}

void write_matrix_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out.precision(17);
  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  if (!header.empty()) out << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
    out << '\n';
  }
}

}  // namespace activemars
