#include <algorithm>
#include <cmath>

#include "activemars/affine_map.hpp"
#include "activemars/errors.hpp"
#include "activemars/measures.hpp"
#include "activemars/moments.hpp"
#include "activemars/oracle.hpp"
#include "activemars/special_functions.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace activemars;
using doctest::Approx;

namespace {

Interval bounds_of(const UnivariateMeasure& m) { return support(m); }

double finite_lo(const Interval& s) { return std::isfinite(s.lo) ? s.lo : -4.0; }
double finite_hi(const Interval& s) { return std::isfinite(s.hi) ? s.hi : 4.0; }

}  // namespace

TEST_SUITE("priors") {

TEST_CASE("total mass is one for every family") {
  testing::Gen g(1);
  for (auto f : testing::kFamilies) {
    for (int k = 0; k < 20; ++k) {
      const auto m = testing::random_measure(g, f);
      CAPTURE(testing::family_name(f));
      CHECK(std::fabs(truncated_moment(0, -kInf, kInf, m) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("uniform examples") {
  CHECK(truncated_moment(1, 0.0, 1.0, Uniform{}) == Approx(0.5).epsilon(1e-15));
  CHECK(truncated_moment(2, 0.0, 1.0, Uniform{}) == Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(truncated_moment(0, 0.25, 0.75, Uniform{}) == Approx(0.5).epsilon(1e-15));
  // General interval: density 1/2 on [1, 3].
  CHECK(truncated_moment(1, -kInf, 2.0, Uniform{1.0, 3.0}) == Approx(0.75).epsilon(1e-14));
  CHECK(truncated_moment(2, 0.0, 5.0, Uniform{1.0, 3.0}) == Approx(13.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("Beta(1,1) is Uniform(0,1)") {
  testing::Gen g(2);
  for (int k = 0; k < 20; ++k) {
    const auto [a, b] = testing::random_bounds(g, 0.0, 1.0);
    for (int r = 0; r <= 2; ++r) {
      CHECK(std::fabs(truncated_moment(r, a, b, Beta{1.0, 1.0}) -
                      truncated_moment(r, a, b, Uniform{0.0, 1.0})) <= 1e-12);
    }
  }
}

TEST_CASE("gamma second raw moment") {
  CHECK(truncated_moment(2, 0.0, kInf, Gamma{2.0, 3.0}) == Approx(6.0 / 9.0).epsilon(1e-12));
  CHECK(truncated_moment(1, -kInf, kInf, Gamma{2.5, 1.5}) == Approx(2.5 / 1.5).epsilon(1e-12));
  // mpmath reference.
  CHECK(truncated_moment(2, 0.5, 2.0, Gamma{2.5, 1.5}) == Approx(1.0003329677105881491).epsilon(1e-12));
}

TEST_CASE("truncated normal reference value") {
  const TruncNormal tn{0.5, 0.3, 0.0, 1.0};
  // mpmath, 30 digits.
  CHECK(truncated_moment(1, 0.2, 1.4, tn) == Approx(0.48597511665755618471).epsilon(1e-12));
  CHECK(truncated_moment(2, 0.2, 1.4, tn) == Approx(0.30501077870551498129).epsilon(1e-12));
  const auto q = quad_truncated_moment(1, 0.2, 1.4, tn, 1e-13);
  CHECK(std::fabs(truncated_moment(1, 0.2, 1.4, tn) - q.scalar()) <= 1e-10);
}

TEST_CASE("closed form matches quadrature for every family") {
  for (auto f : testing::kFamilies) {
    testing::Gen g(100 + static_cast<int>(f));
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const auto m = testing::random_measure(g, f);
      const Interval s = bounds_of(m);
      const auto [a, b] = testing::random_bounds(g, finite_lo(s), finite_hi(s));
      const int r = g.integer(0, 2);
      const double got = truncated_moment(r, a, b, m);
      const double want = quad_truncated_moment(r, a, b, m, 1e-12).scalar();
      worst = std::max(worst, std::fabs(got - want));
    }
    CAPTURE(testing::family_name(f));
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("additivity and monotonicity") {
  testing::Gen g(3);
  for (int k = 0; k < 200; ++k) {
    const auto m = testing::random_measure(g, static_cast<testing::Family>(g.integer(0, 4)));
    const Interval s = bounds_of(m);
    double pts[3] = {g.uniform(finite_lo(s) - 0.2, finite_hi(s) + 0.2),
                     g.uniform(finite_lo(s) - 0.2, finite_hi(s) + 0.2),
                     g.uniform(finite_lo(s) - 0.2, finite_hi(s) + 0.2)};
    std::sort(pts, pts + 3);
    for (int r = 0; r <= 2; ++r) {
      const double whole = truncated_moment(r, pts[0], pts[2], m);
      const double split = truncated_moment(r, pts[0], pts[1], m) + truncated_moment(r, pts[1], pts[2], m);
      CHECK(std::fabs(whole - split) <= 1e-12 * std::max(1.0, std::fabs(whole)));
    }
    CHECK(truncated_moment(0, pts[0], pts[2], m) >= truncated_moment(0, pts[0], pts[1], m));
    CHECK(truncated_moment(0, pts[0], pts[2], m) >= truncated_moment(0, pts[1], pts[2], m));
  }
}

TEST_CASE("empty and reversed intervals give exactly zero") {
  CHECK(truncated_moment(1, 0.5, 0.5, Beta{2.0, 3.0}) == 0.0);
  CHECK(truncated_moment(2, 0.8, 0.2, Uniform{}) == 0.0);
  CHECK(truncated_moment(0, 2.0, 3.0, Uniform{}) == 0.0);
  CHECK(truncated_moment(0, -3.0, -1.0, Gamma{2.0, 1.0}) == 0.0);
  CHECK(truncated_moment(1, 2.0, 3.0, TruncNormal{0.0, 1.0, -1.0, 1.0}) == 0.0);
}

TEST_CASE("truncated normal cancellation far in the tail") {
  for (double centre : {-30.0, -12.0, -7.5, 7.5, 12.0, 30.0}) {
    for (double width : {1e-6, 1e-9, 1e-12}) {
      const TruncNormal tn{0.0, 1.0, -kInf, kInf};
      const double a = centre, b = centre + width;
      for (int r = 0; r <= 2; ++r) {
        const double v = truncated_moment(r, a, b, tn);
        CAPTURE(centre);
        CAPTURE(width);
        CHECK(std::isfinite(v));
        if (r != 1 || centre > 0) CHECK(v >= 0.0);
      }
      CHECK((truncated_moment(0, a, b, tn) > 0.0 || std::fabs(centre) >= 30.0));
    }
  }
  CHECK(truncated_moment(0, 7.0, 7.0 + 1e-6, TruncNormal{}) ==
        Approx(9.1346884369162417075e-18).epsilon(1e-8));
  CHECK(truncated_moment(0, -30.0 - 1e-6, -30.0, TruncNormal{}) ==
        Approx(1.4736240304073240011e-202).epsilon(1e-8));
  // Within 8 sigma, where the two CDFs agree to 12 digits.
  const TruncNormal wide{2.0, 0.5, -kInf, kInf};
  const double v = truncated_moment(0, 2.0 + 7.9 * 0.5, 2.0 + 7.9 * 0.5 + 1e-7, wide);
  CHECK(std::isfinite(v));
  CHECK(v > 0.0);
}

TEST_CASE("coordinate measures") {
  testing::Gen g(4);
  for (int k = 0; k < 100; ++k) {
    const auto m = testing::random_measure(g, static_cast<testing::Family>(g.integer(0, 4)));
    const double scale = g.coin() ? g.uniform(0.3, 3.0) : -g.uniform(0.3, 3.0);
    const double shift = g.uniform(-1.0, 1.0);
    const CoordinateMeasure cm{m, scale, shift};
    const Interval s = bounds_of(m);
    const double x1 = g.uniform(finite_lo(s), finite_hi(s));
    const double x2 = g.uniform(finite_lo(s), finite_hi(s));
    const double a = std::min(scale * x1, scale * x2) + shift;
    const double b = std::max(scale * x1, scale * x2) + shift;
    const double lo = std::min(x1, x2), hi = std::max(x1, x2);
    const double m0 = truncated_moment(0, lo, hi, m);
    const double m1 = truncated_moment(1, lo, hi, m);
    const double m2 = truncated_moment(2, lo, hi, m);
    CHECK(truncated_moment(0, a, b, cm) == Approx(m0).epsilon(1e-12));
    CHECK(std::fabs(truncated_moment(1, a, b, cm) - (scale * m1 + shift * m0)) <= 1e-12);
    CHECK(std::fabs(truncated_moment(2, a, b, cm) -
                    (scale * scale * m2 + 2 * scale * shift * m1 + shift * shift * m0)) <= 1e-11);
  }
}

TEST_CASE("argument errors") {
  CHECK_THROWS_AS(truncated_moment(3, 0.0, 1.0, Uniform{}), std::invalid_argument);
  CHECK_THROWS_AS(truncated_moment(-1, 0.0, 1.0, Uniform{}), std::invalid_argument);
  CHECK_THROWS_AS(truncated_moment(0, std::nan(""), 1.0, Uniform{}), std::invalid_argument);
}

TEST_CASE("measure validation") {
  CHECK_THROWS_AS(validate(BaseMeasure{Uniform{1.0, 0.0}}), InputError);
  CHECK_THROWS_AS(validate(BaseMeasure{Beta{0.0, 1.0}}), InputError);
  CHECK_THROWS_AS(validate(BaseMeasure{Gamma{1.0, -1.0}}), InputError);
  CHECK_THROWS_AS(validate(BaseMeasure{TruncNormal{0.0, 1.0, 1.0, 1.0}}), InputError);
  CHECK_THROWS_AS(validate(BaseMeasure{TruncNormal{0.0, 0.0}}), InputError);
  CHECK_THROWS_AS(validate(UnivariateMeasure{UnivariateMixture{{{0.5, Uniform{}}, {0.4, Beta{}}}}}),
                  InputError);
  CHECK_THROWS_AS(validate(UnivariateMeasure{UnivariateMixture{{{1.2, Uniform{}}, {-0.2, Beta{}}}}}),
                  InputError);
  CHECK_NOTHROW(validate(UnivariateMeasure{UnivariateMixture{{{0.5, Uniform{}}, {0.5, Beta{}}}}}));

  GaussianPrior bad{Eigen::VectorXd::Zero(2), Eigen::Matrix2d{{1.0, 2.0}, {2.0, 1.0}}};
  CHECK_THROWS_AS(validate(PriorSpec{bad}), InputError);
  GaussianPrior asym{Eigen::VectorXd::Zero(2), Eigen::Matrix2d{{1.0, 0.1}, {0.0, 1.0}}};
  CHECK_THROWS_AS(validate(PriorSpec{asym}), InputError);

  MixturePrior mixed_dims{{{0.5, PriorSpec{iid_prior(2, Uniform{})}}, {0.5, PriorSpec{iid_prior(3, Uniform{})}}}};
  CHECK_THROWS_AS(validate(PriorSpec{mixed_dims}), InputError);
  MixturePrior short_weights{{{0.5, PriorSpec{iid_prior(2, Uniform{})}}, {0.4, PriorSpec{iid_prior(2, Beta{})}}}};
  CHECK_THROWS_AS(validate(PriorSpec{short_weights}), InputError);
}

TEST_CASE("standardize") {
  SUBCASE("identity") {
    const auto s = standardize({Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(3, 3)});
    CHECK((s.map.matrix() - Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-15);
    CHECK(s.map.offset().norm() == 0.0);
    CHECK(s.measure.marginals.size() == 3);
  }
  SUBCASE("diagonal") {
    Eigen::MatrixXd cov = Eigen::Vector2d(4.0, 9.0).asDiagonal();
    const auto s = standardize({Eigen::Vector2d(1.0, -3.0), cov});
    Eigen::MatrixXd want = Eigen::Vector2d(0.5, 1.0 / 3.0).asDiagonal();
    CHECK((s.map.matrix() - want).norm() <= 1e-15);
    CHECK((s.map.offset() - Eigen::Vector2d(-0.5, 1.0)).norm() <= 1e-15);
  }
  SUBCASE("random SPD") {
    testing::Gen g(5);
    for (int k = 0; k < 10; ++k) {
      const Eigen::MatrixXd cov = testing::random_spd(g, 5);
      Eigen::VectorXd mu(5);
      for (int i = 0; i < 5; ++i) mu(i) = g.uniform(-2.0, 2.0);
      const auto s = standardize({mu, cov});
      const Eigen::MatrixXd a = s.map.matrix();
      CHECK((a * cov * a.transpose() - Eigen::MatrixXd::Identity(5, 5)).norm() <= 1e-10);
      CHECK(s.map.apply(mu).norm() <= 1e-12);
      CHECK((a - a.transpose()).norm() <= 1e-12);
    }
  }
  SUBCASE("not SPD") {
    CHECK_THROWS_AS(standardize({Eigen::VectorXd::Zero(2), Eigen::Matrix2d{{1.0, 2.0}, {2.0, 1.0}}}),
                    InputError);
  }
}

TEST_CASE("support and iid prior") {
  CHECK(support(BaseMeasure{Gamma{2.0, 1.0}}).lo == 0.0);
  CHECK(support(BaseMeasure{Gamma{2.0, 1.0}}).hi == kInf);
  const Interval mix = support(UnivariateMeasure{UnivariateMixture{{{0.5, Uniform{-1.0, 0.0}}, {0.5, Beta{}}}}});
  CHECK(mix.lo == -1.0);
  CHECK(mix.hi == 1.0);
  CHECK(PriorSpec{iid_prior(4, Beta{2.0, 2.0})}.dimension() == 4);
}

}  // TEST_SUITE
