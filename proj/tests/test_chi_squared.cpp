// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// Reference values frozen from an independent statistics package.

#include <catch2/catch_amalgamated.hpp>

#include "nnts/nnts.hpp"

using namespace nnts;

TEST_CASE("regularized upper incomplete gamma against frozen references") {
  struct Row {
    double a, x, q;
  };
  const Row rows[] = {
      {0.5, 0.25, 0.47950012218695346},
      {1.0, 1.0, 0.36787944117144232},
      {4.5, 3.0, 0.7399182920946537},
      {9.0, 9.0, 0.45565260432241873},
      {9.0, 20.0, 0.0020872590491350188},
      {71.5, 50.0, 0.9975523648168782},
      {71.5, 91.0, 0.015263527823904192},
      {2.0, 0.001, 0.99999950033320837},
      {50.0, 200.0, 1.6927979958857088e-37},
  };
  for (const Row& r : rows) {
    CHECK(regularized_gamma_q(r.a, r.x) == Catch::Approx(r.q).epsilon(1e-12));
    CHECK(regularized_gamma_p(r.a, r.x) == Catch::Approx(1.0 - r.q).margin(1e-12));
  }
}

TEST_CASE("gamma function edges") {
  CHECK(regularized_gamma_p(3.0, 0.0) == 0.0);
  CHECK(regularized_gamma_q(3.0, 0.0) == 1.0);
  CHECK_THROWS_AS(regularized_gamma_p(0.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(regularized_gamma_p(-1.0, 1.0), ArgumentError);
  CHECK_THROWS_AS(regularized_gamma_p(1.0, -0.5), ArgumentError);
}

TEST_CASE("chi-squared survival function") {
  CHECK(chi_squared_sf(18.0, 18) == Catch::Approx(0.45565260432241894).epsilon(1e-12));
  CHECK(chi_squared_sf(30.0, 8) == Catch::Approx(0.00021137850346676174).epsilon(1e-10));
  CHECK(chi_squared_sf(0.0, 5) == 1.0);
  CHECK(chi_squared_sf(-3.0, 5) == 1.0);
  CHECK_THROWS_AS(chi_squared_sf(1.0, 0), ArgumentError);
}

TEST_CASE("quantile inverts the distribution") {
  CHECK(chi_squared_quantile(0.99, 143) == Catch::Approx(185.2555368445496).epsilon(1e-9));
  for (int df : {1, 4, 18, 60}) {
    for (double prob : {0.05, 0.5, 0.95, 0.999}) {
      const double x = chi_squared_quantile(prob, df);
      CHECK(chi_squared_sf(x, df) == Catch::Approx(1.0 - prob).margin(1e-9));
    }
  }
  CHECK_THROWS_AS(chi_squared_quantile(1.0, 3), ArgumentError);
  CHECK_THROWS_AS(chi_squared_quantile(-0.1, 3), ArgumentError);
}
