#include <cmath>

#include "activemars/cmatrix.hpp"
#include "activemars/errors.hpp"
#include "activemars/moments.hpp"
#include "activemars/oracle.hpp"
#include "activemars/quadrature.hpp"
#include "activemars/sampling.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace activemars;
using doctest::Approx;

TEST_SUITE("oracle") {

TEST_CASE("adaptive quadrature") {
  CHECK(quadrature::integrate([](double x) { return x * x; }, 0.0, 1.0).value == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(quadrature::integrate([](double x) { return std::exp(-x); }, 0.0, kInf).value == Approx(1.0).epsilon(1e-13));
  CHECK(quadrature::integrate([](double x) { return std::exp(-x * x); }, -kInf, kInf).value ==
        Approx(std::sqrt(M_PI)).epsilon(1e-13));
  CHECK(quadrature::integrate([](double x) { return std::fabs(x - 0.3); }, 0.0, 1.0, {}, {0.3}).value ==
        Approx(0.29).epsilon(1e-14));
  CHECK(quadrature::integrate([](double) { return 1.0; }, 0.5, 0.5).value == 0.0);
  quadrature::Options tight;
  tight.max_subdivisions = 3;
  CHECK_THROWS_AS(quadrature::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, tight),
                  ConvergenceError);
}

TEST_CASE("densities integrate to one") {
  testing::Gen g(90);
  for (auto f : testing::kFamilies) {
    for (int k = 0; k < 5; ++k) {
      const auto m = testing::random_measure(g, f);
      CAPTURE(testing::family_name(f));
      CHECK(quad_truncated_moment(0, -kInf, kInf, m).scalar() == Approx(1.0).epsilon(1e-11));
      CHECK(quad_truncated_moment(1, 0.3, 0.3, m).scalar() == 0.0);
    }
  }
  CHECK(density(UnivariateMeasure{Uniform{0.0, 2.0}}, 1.0) == 0.5);
  CHECK(density(UnivariateMeasure{Gamma{2.0, 1.0}}, -1.0) == 0.0);
}

TEST_CASE("estimate metadata") {
  const MarsModel m(2, 0.0, {1.0}, {BasisFunction({{0, 1, 0.5}})});
  const OracleEstimate q = quad_C(m, iid_prior(2, Uniform{}));
  CHECK(q.method == OracleEstimate::Method::quadrature);
  CHECK_FALSE(q.std_error.has_value());
  CHECK(q.evaluations > 0);
  const OracleEstimate mc = mc_C(m, iid_prior(2, Uniform{}), 1000, 1);
  CHECK(mc.method == OracleEstimate::Method::monte_carlo);
  CHECK(mc.std_error.has_value());
  CHECK(mc.evaluations == 1000);
  CHECK(quad_C(MarsModel(2, 3.0, {}, {}), iid_prior(2, Beta{2, 2})).value == Eigen::MatrixXd::Zero(2, 2));
}

TEST_CASE("Monte Carlo is reproducible across thread counts") {
  testing::Gen g(91);
  const MarsModel m = testing::random_model(g, 3, 8, 2);
  const PriorSpec prior = MixturePrior{{{0.3, PriorSpec{testing::random_product_prior(g, 3)}},
                                        {0.7, PriorSpec{GaussianPrior{Eigen::Vector3d(0.5, 0.5, 0.5), testing::random_spd(g, 3) * 0.01}}}}};
  const OracleEstimate a = mc_C(m, prior, 30000, 42, 1);
  const OracleEstimate b = mc_C(m, prior, 30000, 42, 3);
  CHECK(a.value == b.value);
  CHECK(*a.std_error == *b.std_error);
  const OracleEstimate c = mc_C(m, prior, 30000, 43, 1);
  CHECK(a.value != c.value);
}

TEST_CASE("Monte Carlo error shrinks like one over root N") {
  testing::Gen g(92);
  const MarsModel m = testing::random_model(g, 3, 8, 2);
  const ProductPrior prior = testing::random_unit_prior(g, 3);
  const Eigen::MatrixXd exact = compute_C(m, prior).values;
  // Root-mean-square error over a few seeds, so one lucky draw cannot decide.
  auto rms_error = [&](std::size_t n) {
    double sum = 0.0;
    for (std::uint64_t seed = 0; seed < 6; ++seed) sum += (mc_C(m, prior, n, 1000 + seed).value - exact).squaredNorm();
    return std::sqrt(sum / 6);
  };
  const double small = rms_error(10000);
  const double large = rms_error(1000000);
  MESSAGE("rms error at 1e4: " << small << ", at 1e6: " << large);
  CHECK(large <= 0.2 * small);
}

TEST_CASE("Monte Carlo on a Gaussian prior with a dense transform") {
  testing::Gen g(93);
  const Eigen::Matrix2d a{{2.0, 1.0}, {-1.0, 3.0}};
  const Eigen::Matrix2d a_inv = a.inverse();
  const GaussianPrior prior{a_inv * Eigen::Vector2d(0.5, 0.5), a_inv * Eigen::Vector2d(0.04, 0.01).asDiagonal() * a_inv.transpose()};
  const MarsModel m = testing::random_model(g, 2, 6, 2).with_transform(AffineMap(a, Eigen::Vector2d::Zero()));
  const Eigen::MatrixXd exact = compute_C(m, prior).values;
  const OracleEstimate mc = mc_C(m, prior, 400000, 5);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j)
      CHECK(std::fabs(mc.value(i, j) - exact(i, j)) <= 4 * (*mc.std_error)(i, j) + 1e-14);
}

TEST_CASE("quadrature C covers Gaussian and mixture priors") {
  testing::Gen g(94);
  const MarsModel m = testing::random_model(g, 3, 8, 3);
  const GaussianPrior gp{Eigen::Vector3d(0.4, 0.5, 0.6), Eigen::Vector3d(0.04, 0.09, 0.01).asDiagonal()};
  CHECK((quad_C(m, gp).value - compute_C(m, gp).values).norm() <= 1e-8);
  const PriorSpec mix = MixturePrior{{{0.4, PriorSpec{gp}}, {0.6, PriorSpec{testing::random_unit_prior(g, 3)}}}};
  CHECK((quad_C(m, mix).value - compute_C(m, mix).values).norm() <= 1e-8);
}

TEST_CASE("sampler moments") {
  testing::Gen g(95);
  for (auto f : testing::kFamilies) {
    const auto m = testing::random_measure(g, f);
    CounterRng rng(7, static_cast<std::uint64_t>(f));
    const int n = 200000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += sample(m, rng);
    const double mean = truncated_moment(1, -kInf, kInf, m);
    const double var = truncated_moment(2, -kInf, kInf, m) - mean * mean;
    CAPTURE(testing::family_name(f));
    CHECK(std::fabs(sum / n - mean) <= 5 * std::sqrt(var / n));
  }
}

TEST_CASE("argument errors") {
  const MarsModel m(2, 0.0, {1.0}, {BasisFunction({{0, 1, 0.5}})});
  CHECK_THROWS_AS(mc_C(m, iid_prior(2, Uniform{}), 1, 0), InputError);
  CHECK_THROWS_AS(mc_C(m, iid_prior(3, Uniform{}), 100, 0), InputError);
  CHECK_THROWS_AS(quad_C(m, iid_prior(3, Uniform{})), InputError);
  CHECK_THROWS_AS(quad_truncated_moment(5, 0.0, 1.0, Uniform{}), InputError);
}

}  // TEST_SUITE
