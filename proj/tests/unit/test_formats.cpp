#include <filesystem>

#include "activemars/errors.hpp"
#include "activemars/formats.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace activemars;
namespace fs = std::filesystem;

namespace {

fs::path data_dir() { return fs::path(ACTIVEMARS_SOURCE_DIR) / "data"; }

}  // namespace

TEST_SUITE("formats") {

TEST_CASE("C matrix round trip") {
  testing::Gen g(100);
  const MarsModel m = testing::random_model(g, 4, 6, 2);
  const CMatrix c = compute_C(m, iid_prior(4, Beta{2.0, 3.0}));
  const CMatrix back = cmatrix_from_json(cmatrix_to_json(c));
  CHECK(back.values == c.values);
  CHECK(back.model_digest == c.model_digest);
  CHECK(back.prior_digest == c.prior_digest);
  CHECK(back.scale == c.scale);

  const fs::path path = fs::temp_directory_path() / "activemars_cmatrix.json";
  write_cmatrix(path, c, Json{{"command", "test"}});
  CHECK(read_cmatrix(path).values == c.values);
}

TEST_CASE("C matrix errors") {
  Json doc = cmatrix_to_json(CMatrix{Eigen::Matrix2d::Identity(), "a", "b", Scale::unit});
  CHECK(cmatrix_from_json(doc).scale == Scale::unit);
  Json bad = doc;
  bad["scale"] = "metric";
  CHECK_THROWS_AS(cmatrix_from_json(bad), InputError);
  bad = doc;
  bad["p"] = 3;
  CHECK_THROWS_AS(cmatrix_from_json(bad), InputError);
  bad = doc;
  bad["version"] = 99;
  CHECK_THROWS_AS(cmatrix_from_json(bad), InputError);
}

TEST_CASE("subspace round trip") {
  testing::Gen g(101);
  ActiveSubspace s = decompose(testing::random_spd(g, 5));
  s.chosen_dim = 2;
  const ActiveSubspace back = subspace_from_json(subspace_to_json(s));
  CHECK(back.eigenvalues == s.eigenvalues);
  CHECK(back.eigenvectors == s.eigenvectors);
  CHECK(back.activity_scores == s.activity_scores);
  CHECK(back.chosen_dim == 2);
}

TEST_CASE("partition round trip") {
  LinearConstraintSet cs = LinearConstraintSet::unit_box(2);
  cs.add_order(1, 0);
  const BoxPartition part = partition(cs, 1e-3);
  const BoxPartition back = partition_from_json(partition_to_json(part));
  REQUIRE(back.boxes.size() == part.boxes.size());
  for (std::size_t k = 0; k < part.boxes.size(); ++k) {
    CHECK(back.boxes[k].lower == part.boxes[k].lower);
    CHECK(back.boxes[k].upper == part.boxes[k].upper);
    CHECK(back.weights[k] == part.weights[k]);
  }
  CHECK(back.covered_volume == part.covered_volume);
  CHECK(back.split_dims == part.split_dims);
}

TEST_CASE("constraint files") {
  const LinearConstraintSet tri = read_constraints(data_dir() / "constraints" / "triangle.json");
  CHECK(tri.dimension() == 2);
  CHECK(tri.rows.size() == 1);
  CHECK(tri.lower == Eigen::Vector2d::Zero());

  const LinearConstraintSet chain = read_constraints(data_dir() / "constraints" / "chain.json");
  CHECK(chain.dimension() == 5);
  CHECK(chain.rows.size() == 4);

  const LinearConstraintSet back = constraints_from_json(constraints_to_json(chain));
  CHECK(back.rows.size() == chain.rows.size());
  CHECK(back.upper == chain.upper);

  CHECK_THROWS_AS(constraints_from_json(Json::parse(R"({"version": 1, "p": 2, "constraints": [{"coeffs": [1], "rhs": 0}]})")),
                  InputError);
  CHECK_THROWS_AS(constraints_from_json(Json::parse(R"({"version": 1, "p": 2, "order": [[0, 2]]})")), InputError);
}

}  // TEST_SUITE
