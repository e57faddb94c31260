#include <filesystem>
#include <fstream>

#include "activemars/errors.hpp"
#include "activemars/io.hpp"
#include "activemars/version.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace activemars;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "activemars_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream(path) << text;
}

fs::path data_dir() { return fs::path(ACTIVEMARS_SOURCE_DIR) / "data"; }

const char* kModel = R"({
  "version": 1, "p": 2, "intercept": 0.5, "coefficients": [1.5],
  "basis": [[{"index": 0, "sign": 1, "knot": 0.25}, {"index": 1, "sign": -1, "knot": 0.75}]]
})";

}  // namespace

TEST_SUITE("io") {

TEST_CASE("model round trip") {
  testing::Gen g(30);
  for (int k = 0; k < 30; ++k) {
    const std::size_t p = static_cast<std::size_t>(g.integer(1, 6));
    MarsModel m = testing::random_model(g, p, static_cast<std::size_t>(g.integer(0, 12)), 3);
    if (g.coin()) {
      if (g.coin()) {
        m = m.with_transform(AffineMap(testing::random_invertible(g, p), Eigen::VectorXd::Constant(static_cast<Eigen::Index>(p), 0.1)));
      } else {
        m = m.with_transform(AffineMap::diagonal(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(p), 0.3),
                                                 Eigen::VectorXd::Constant(static_cast<Eigen::Index>(p), -0.2)));
      }
    }
    CHECK(model_from_json(model_to_json(m)) == m);
    const fs::path path = scratch("model.json");
    write_model(path, m, Json{{"command", "test"}});
    CHECK(read_model(path) == m);
  }
}

TEST_CASE("model load errors") {
  Json doc = Json::parse(kModel);
  CHECK_NOTHROW(model_from_json(doc));

  Json bad_knot = doc;
  bad_knot["basis"][0][0]["knot"] = 1.5;
  CHECK_THROWS_WITH_AS(model_from_json(bad_knot), doctest::Contains("knot out of [0,1]"), InputError);

  Json bad_count = doc;
  bad_count["coefficients"] = {1.0, 2.0};
  CHECK_THROWS_AS(model_from_json(bad_count), InputError);

  Json bad_version = doc;
  bad_version["version"] = 2;
  CHECK_THROWS_WITH_AS(model_from_json(bad_version), doctest::Contains("version"), InputError);

  Json missing = doc;
  missing.erase("intercept");
  CHECK_THROWS_AS(model_from_json(missing), InputError);

  const fs::path garbage = scratch("garbage.json");
  write_text(garbage, "{ not json");
  CHECK_THROWS_AS(read_model(garbage), InputError);
  CHECK_THROWS_AS(read_model(scratch("does-not-exist.json")), InputError);
}

TEST_CASE("prior round trip") {
  testing::Gen g(31);
  for (int k = 0; k < 30; ++k) {
    const std::size_t p = static_cast<std::size_t>(g.integer(1, 5));
    PriorSpec prior = testing::random_product_prior(g, p);
    if (k % 3 == 1) prior = GaussianPrior{Eigen::VectorXd::Constant(static_cast<Eigen::Index>(p), 0.3), testing::random_spd(g, p)};
    if (k % 3 == 2) prior = MixturePrior{{{0.25, prior}, {0.75, PriorSpec{testing::random_product_prior(g, p)}}}};
    const Json j = prior_to_json(prior);
    CHECK(prior_to_json(prior_from_json(j)) == j);
  }
}

TEST_CASE("prior load errors") {
  const Json weights = Json::parse(R"({"version": 1, "type": "mixture", "components": [
    {"weight": 0.5, "prior": {"type": "product", "marginals": [{"dist": "uniform", "params": {"lo": 0, "hi": 1}}]}},
    {"weight": 0.4, "prior": {"type": "product", "marginals": [{"dist": "uniform", "params": {"lo": 0, "hi": 1}}]}}
  ]})");
  CHECK_THROWS_AS(prior_from_json(weights), InputError);
  CHECK_THROWS_AS(prior_from_json(Json::parse(R"({"version": 1, "type": "cauchy"})")), InputError);
  CHECK_THROWS_AS(prior_from_json(Json::parse(
                      R"({"version": 1, "type": "product", "marginals": [{"dist": "beta", "params": {"alpha": 1}}]})")),
                  InputError);
  CHECK_THROWS_AS(prior_from_json(Json::parse(
                      R"({"version": 1, "type": "mvn", "mean": [0, 0], "cov": [1, 0, 0]})")),
                  InputError);
  // Flat row-major covariance is accepted.
  const PriorSpec flat = prior_from_json(Json::parse(R"({"version": 1, "type": "mvn", "mean": [0, 0], "cov": [2, 0.5, 0.5, 1]})"));
  CHECK(std::get<GaussianPrior>(flat.value).cov(0, 1) == 0.5);
}

TEST_CASE("shipped prior examples load") {
  for (const char* name : {"product.json", "mvn.json", "mixture.json", "unit_square.json"}) {
    CAPTURE(name);
    CHECK_NOTHROW(read_prior(data_dir() / "priors" / name));
  }
  CHECK(read_prior(data_dir() / "priors" / "product.json").dimension() == 5);
}

TEST_CASE("infinite values in JSON") {
  CHECK(json_to_real(Json("inf")) == kInf);
  CHECK(json_to_real(Json("-inf")) == -kInf);
  CHECK(real_to_json(-kInf) == Json("-inf"));
  CHECK(json_to_real(Json(2.5)) == 2.5);
  CHECK_THROWS_AS(json_to_real(Json("nan")), InputError);
}

TEST_CASE("dataset CSV") {
  const fs::path with_header = scratch("with_header.csv");
  write_text(with_header, "x1,x2,y\n0.1,0.2,1.0\n0.3,0.4,2.0\n");
  const DatasetSpec a = read_dataset_csv(with_header);
  CHECK(a.size() == 2);
  CHECK(a.dimension() == 2);
  CHECK(a.response(1) == 2.0);

  const fs::path no_header = scratch("no_header.csv");
  write_text(no_header, "0.1,0.2,1.0\n0.3,0.4,2.0\n");
  const DatasetSpec b = read_dataset_csv(no_header);
  CHECK(b.size() == 2);
  CHECK(b.design(0, 1) == 0.2);

  CHECK(read_dataset_csv(no_header, HeaderMode::present).size() == 1);
  CHECK_THROWS_AS(read_dataset_csv(with_header, HeaderMode::absent), InputError);

  const fs::path empty = scratch("empty.csv");
  write_text(empty, "");
  CHECK_THROWS_WITH_AS(read_dataset_csv(empty), doctest::Contains("empty"), InputError);

  const fs::path header_only = scratch("header_only.csv");
  write_text(header_only, "x1,x2,y\n");
  CHECK_THROWS_WITH_AS(read_dataset_csv(header_only), doctest::Contains("empty"), InputError);

  const fs::path ragged = scratch("ragged.csv");
  write_text(ragged, "0.1,0.2,1.0\n0.3,2.0\n");
  CHECK_THROWS_AS(read_dataset_csv(ragged), InputError);

  const fs::path one_col = scratch("one_col.csv");
  write_text(one_col, "1\n2\n");
  CHECK_THROWS_AS(read_dataset_csv(one_col), InputError);
}

TEST_CASE("matrix CSV round trip") {
  Eigen::MatrixXd m(3, 2);
  m << 1.0 / 3.0, -2e-300, 1e300, 0.1, 7.0, -0.0;
  const fs::path path = scratch("matrix.csv");
  write_matrix_csv(path, m, {"a", "b"});
  CHECK(read_matrix_csv(path) == m);
}

TEST_CASE("version check") {
  CHECK_NOTHROW(check_version(Json{{"version", kFormatVersion}}));
  CHECK_THROWS_AS(check_version(Json{{"version", kFormatVersion + 1}}), InputError);
  CHECK_THROWS_AS(check_version(Json::object()), InputError);
}

}  // TEST_SUITE
