#include <cmath>
#include <cstdint>

#include "activemars/fit.hpp"
#include "doctest.h"
#include "support/benchmark_functions.hpp"
#include "support/generators.hpp"

using namespace activemars;

namespace {

double first_input(const Eigen::VectorXd& x) { return x(0); }

}  // namespace

TEST_SUITE("fit") {

TEST_CASE("linear function on a grid") {
  DatasetSpec d;
  d.design.resize(100, 1);
  d.response.resize(100);
  for (int i = 0; i < 100; ++i) {
    d.design(i, 0) = i / 99.0;
    d.response(i) = i / 99.0;
  }
  FitConfig cfg;
  cfg.max_interaction = 1;
  const MarsModel m = fit_greedy(d, cfg);
  CHECK(m.size() <= 2);
  CHECK(rmse(m, d) <= 1e-6);
}

TEST_CASE("quadratic benchmark held-out accuracy") {
  const DatasetSpec train = testing::make_dataset(testing::quadratic_benchmark, 500, 2, 1);
  const DatasetSpec test = testing::make_dataset(testing::quadratic_benchmark, 2000, 2, 99);
  FitConfig cfg;
  cfg.max_interaction = 2;
  const MarsModel m = fit_greedy(train, cfg);
  MESSAGE("basis functions: " << m.size() << ", held-out rmse: " << rmse(m, test));
  CHECK(rmse(m, test) <= 0.01);
  CHECK(m.max_interaction() <= 2);
}

// Many forward steps with interaction parents: the basis list reallocates
// while mirrored pairs are appended.
TEST_CASE("interaction fits across seeds") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    for (std::size_t j : {2u, 3u}) {
      const DatasetSpec d = testing::make_dataset(testing::ridge_benchmark, 300, 6, seed);
      FitConfig cfg;
      cfg.max_interaction = j;
      const MarsModel m = fit_greedy(d, cfg);
      CHECK(m.max_interaction() <= j);
      CHECK(std::isfinite(rmse(m, d)));
      for (const auto& b : m.basis()) {
        for (const auto& t : b.terms()) {
          CHECK(t.input < 6);
          CHECK((t.sign == 1 || t.sign == -1));
          CHECK(t.knot >= 0.0);
          CHECK(t.knot <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("constant response") {
  DatasetSpec d;
  d.design = Eigen::MatrixXd::Random(30, 3).cwiseAbs();
  d.response = Eigen::VectorXd::Constant(30, 4.25);
  const MarsModel m = fit_greedy(d);
  CHECK(m.size() == 0);
  CHECK(m.intercept() == doctest::Approx(4.25).epsilon(1e-15));
}

TEST_CASE("single row") {
  DatasetSpec d{Eigen::MatrixXd::Constant(1, 2, 0.5), Eigen::VectorXd::Constant(1, 3.0)};
  const MarsModel m = fit_greedy(d);
  CHECK(m.size() == 0);
  CHECK(m.intercept() == 3.0);
}

TEST_CASE("interaction cap is respected") {
  for (std::size_t J : {1u, 2u, 3u}) {
    const DatasetSpec d = testing::make_dataset(testing::ridge_benchmark, 200, 6, 7);
    FitConfig cfg;
    cfg.max_interaction = J;
    cfg.max_basis = 30;
    const MarsModel m = fit_greedy(d, cfg);
    CHECK(m.max_interaction() <= J);
    for (const auto& b : m.basis())
      for (const auto& t : b.terms()) {
        CHECK(t.knot >= 0.0);
        CHECK(t.knot <= 1.0);
      }
  }
}

TEST_CASE("basis cap is respected") {
  const DatasetSpec d = testing::make_dataset(testing::ridge_benchmark, 200, 6, 8);
  FitConfig cfg;
  cfg.max_basis = 6;
  CHECK(fit_greedy(d, cfg).size() <= 6);
}

TEST_CASE("deterministic") {
  const DatasetSpec d = testing::make_dataset(testing::quadratic_benchmark, 300, 3, 5);
  CHECK(fit_greedy(d) == fit_greedy(d));
}

TEST_CASE("inert inputs stay out of a linear fit") {
  const DatasetSpec d = testing::make_dataset(first_input, 200, 4, 3);
  const MarsModel m = fit_greedy(d);
  for (const auto& b : m.basis())
    for (const auto& t : b.terms()) CHECK(t.input == 0);
}

TEST_CASE("rmse") {
  const MarsModel m(1, 1.0, {}, {});
  DatasetSpec d{Eigen::MatrixXd::Zero(2, 1), Eigen::Vector2d(0.0, 2.0)};
  CHECK(rmse(m, d) == doctest::Approx(1.0));
}

}  // TEST_SUITE
