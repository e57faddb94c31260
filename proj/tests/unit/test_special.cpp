#include <cmath>
#include <limits>

#include "activemars/errors.hpp"
#include "activemars/special_functions.hpp"
#include "doctest.h"
#include "support/generators.hpp"

#ifdef ACTIVEMARS_HAVE_BOOST_MATH
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#endif

using namespace activemars::special;
using doctest::Approx;

TEST_SUITE("special") {

TEST_CASE("textbook identities") {
  CHECK(regularized_incomplete_beta(0.5, 2.0, 2.0) == Approx(0.5).epsilon(1e-15));
  CHECK(std_normal_cdf(0.0) == 0.5);
  const double inf = std::numeric_limits<double>::infinity();
  for (double a : {0.3, 1.0, 2.5, 17.0, 150.0}) {
    CHECK(lower_incomplete_gamma(inf, a) / std::tgamma(a) == Approx(1.0).epsilon(1e-13));
    CHECK(regularized_lower_incomplete_gamma(inf, a) == 1.0);
  }
  CHECK(regularized_incomplete_beta(0.0, 2.0, 3.0) == 0.0);
  CHECK(regularized_incomplete_beta(1.0, 2.0, 3.0) == 1.0);
  CHECK(std_normal_pdf(0.0) == Approx(0.3989422804014327).epsilon(1e-15));
}

// Reference values computed with mpmath at 40 significant digits.
TEST_CASE("high-precision reference values") {
  struct Beta { double x, a, b, want; };
  for (const Beta& c : {Beta{0.3, 2.5, 4.0, 0.35219758590676721388},
                        Beta{0.9, 30.0, 20.0, 0.99999998430545400064},
                        Beta{0.5, 0.5, 0.5, 0.5},
                        Beta{0.4, 200.0, 300.0, 0.50242861631993199569}}) {
    CAPTURE(c.x);
    CHECK(regularized_incomplete_beta(c.x, c.a, c.b) == Approx(c.want).epsilon(1e-13));
  }
  CHECK(regularized_incomplete_beta(0.01, 200.0, 300.0) == Approx(1.525336387634633745e-257).epsilon(1e-10));
  CHECK(regularized_incomplete_beta_complement(0.9, 30.0, 20.0) ==
        Approx(1.0 - 0.99999998430545400064).epsilon(1e-7));

  CHECK(regularized_lower_incomplete_gamma(3.0, 2.5) == Approx(0.69378108158672159912).epsilon(1e-14));
  CHECK(regularized_lower_incomplete_gamma(100.0, 120.0) == Approx(0.028230393964865692742).epsilon(1e-12));
  CHECK(regularized_lower_incomplete_gamma(0.1, 0.5) == Approx(0.34527915398142297956).epsilon(1e-14));
  CHECK(regularized_upper_incomplete_gamma(50.0, 10.0) == Approx(1.2596084591660907506e-12).epsilon(1e-11));
  CHECK(lower_incomplete_gamma(2.0, 3.0) == Approx(0.64664716763387308106).epsilon(1e-14));

  CHECK(std_normal_cdf(-10.0) == Approx(7.619853024160526066e-24).epsilon(1e-13));
  CHECK(std_normal_cdf(1.5) == Approx(0.933192798731141934).epsilon(1e-15));
  CHECK(std_normal_quantile(1e-10) == Approx(-6.3613409024040562047).epsilon(1e-14));
  CHECK(std_normal_mass(7.0, 7.0 + 1e-6) == Approx(9.1346884369162417075e-18).epsilon(1e-9));
}

TEST_CASE("normal tails and quantile round trip") {
  testing::Gen g(11);
  for (int k = 0; k < 200; ++k) {
    const double z = g.uniform(-8.0, 8.0);
    CHECK(std_normal_cdf(z) + std_normal_sf(z) == Approx(1.0).epsilon(1e-15));
    CHECK(std_normal_sf(z) == Approx(std_normal_cdf(-z)).epsilon(1e-14));
    const double p = g.uniform(1e-12, 1.0 - 1e-12);
    CHECK(std_normal_cdf(std_normal_quantile(p)) == Approx(p).epsilon(1e-13));
  }
  CHECK(std_normal_mass(3.0, 2.0) == 0.0);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(regularized_incomplete_beta(0.5, -1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(regularized_lower_incomplete_gamma(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(std_normal_quantile(1.5), std::domain_error);
  CHECK_THROWS_AS(regularized_incomplete_beta(std::nan(""), 1.0, 2.0), std::domain_error);
}

#ifdef ACTIVEMARS_HAVE_BOOST_MATH
TEST_CASE("cross-check against Boost.Math") {
  testing::Gen g(2024);
  for (int k = 0; k < 400; ++k) {
    const double a = std::exp(g.uniform(std::log(0.05), std::log(1e4)));
    const double b = std::exp(g.uniform(std::log(0.05), std::log(1e4)));
    const double x = g.uniform();
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(x);
    CHECK(std::fabs(regularized_incomplete_beta(x, a, b) - boost::math::ibeta(a, b, x)) <= 1e-12);
    CHECK(std::fabs(regularized_incomplete_beta_complement(x, a, b) - boost::math::ibetac(a, b, x)) <= 1e-12);

    const double s = std::exp(g.uniform(std::log(0.05), std::log(1e4)));
    const double y = s * std::exp(g.uniform(-3.0, 1.5));
    CAPTURE(s);
    CAPTURE(y);
    CHECK(std::fabs(regularized_lower_incomplete_gamma(y, s) - boost::math::gamma_p(s, y)) <= 1e-12);
    CHECK(std::fabs(regularized_upper_incomplete_gamma(y, s) - boost::math::gamma_q(s, y)) <= 1e-12);
  }
  const boost::math::normal_distribution<double> n;
  for (int k = 0; k < 200; ++k) {
    const double z = g.uniform(-37.0, 37.0);
    CHECK(std_normal_cdf(z) == Approx(boost::math::cdf(n, z)).epsilon(1e-13));
    CHECK(std_normal_sf(z) == Approx(boost::math::cdf(boost::math::complement(n, z))).epsilon(1e-13));
  }
}
#endif

}  // TEST_SUITE
