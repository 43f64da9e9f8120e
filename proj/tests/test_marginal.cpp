// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace nnts;

TEST_CASE("keeping every variable returns the model itself") {
  RngState rng(31);
  MnntsParams p = random_params(DimVector({2, 1}), rng);
  MarginalMixture m = marginal(p, std::vector<int>{0, 1});
  REQUIRE(m.probs.size() == 1);
  CHECK(m.probs[0] == 1.0);
  REQUIRE(m.components.size() == 1);
  for (std::size_t i = 0; i < p.c.size(); ++i)
    CHECK(std::abs(m.components[0].c[i] - p.c[i]) < 1e-14);
}

TEST_CASE("component count is the kept parameter length") {
  RngState rng(33);
  MnntsParams p = random_params(DimVector({2, 1, 1}), rng);
  CHECK(marginal(p, std::vector<int>{0}).probs.size() == 3);
  CHECK(marginal(p, std::vector<int>{1}).probs.size() == 2);
  CHECK(marginal(p, std::vector<int>{0, 2}).probs.size() == 6);
  for (const MnntsParams& comp : marginal(p, std::vector<int>{0, 2}).components) {
    CHECK(comp.dims.m == std::vector<int>{2, 1});
    CHECK_NOTHROW(comp.validate());
  }
}

TEST_CASE("mixing probabilities are a distribution") {
  RngState rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    MnntsParams p = random_params(DimVector({3, 2, 1}), rng);
    for (std::vector<int> keep : {std::vector<int>{0}, {2}, {0, 1}, {1, 2}}) {
      MarginalMixture m = marginal(p, keep);
      double sum = 0.0;
      for (double q : m.probs) {
        CHECK(q >= 0.0);
        sum += q;
      }
      CHECK(sum == Catch::Approx(1.0).margin(1e-10));
      for (std::size_t k = 0; k + 1 < m.probs.size(); ++k) CHECK(m.probs[k] >= m.probs[k + 1]);
    }
  }
}

TEST_CASE("mixture density equals the integrated joint") {
  RngState rng(37);
  for (int trial = 0; trial < 4; ++trial) {
    MnntsParams p = random_params(DimVector({2, 2, 1}), rng);
    for (std::vector<int> keep : {std::vector<int>{1}, {0, 2}}) {
      MarginalMixture m = marginal(p, keep);
      for (int rep = 0; rep < 6; ++rep) {
        std::vector<double> at = testutil::random_point(rng, static_cast<int>(keep.size()));
        const double mixture = mixture_density(m, AnglePoint(at));
        const double oracle = testutil::quadrature_marginal(p, keep, at, 8);
        CHECK(mixture == Catch::Approx(oracle).margin(1e-9));
      }
    }
  }
}

TEST_CASE("marginal mixture integrates to one") {
  RngState rng(39);
  MnntsParams p = random_params(DimVector({2, 2, 2}), rng);
  MarginalMixture m = marginal(p, std::vector<int>{0, 1});
  const double total = testutil::torus_integral(
      [&](const std::vector<double>& t) { return mixture_density(m, AnglePoint(t)); }, 2, 8);
  CHECK(total == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("keep order does not matter, output order is ascending") {
  RngState rng(41);
  MnntsParams p = random_params(DimVector({2, 1, 2}), rng);
  MarginalMixture a = marginal(p, std::vector<int>{2, 0});
  MarginalMixture b = marginal(p, std::vector<int>{0, 2});
  CHECK(a.keep_dims.m == b.keep_dims.m);
  REQUIRE(a.probs.size() == b.probs.size());
  for (std::size_t k = 0; k < a.probs.size(); ++k)
    CHECK(a.probs[k] == Catch::Approx(b.probs[k]).margin(1e-14));
  AnglePoint x(testutil::random_point(rng, 2));
  CHECK(mixture_density(a, x) == Catch::Approx(mixture_density(b, x)).margin(1e-13));
}

TEST_CASE("truncation keeps the leading component") {
  RngState rng(43);
  MnntsParams p = random_params(DimVector({3, 3}), rng);
  MarginalMixture full = marginal(p, std::vector<int>{0});
  MarginalMixture cut = marginal(p, std::vector<int>{0}, 0.9);  // brutal threshold
  REQUIRE(cut.probs.size() >= 1);
  CHECK(cut.probs[0] == Catch::Approx(full.probs[0]).margin(1e-15));
  MarginalMixture mild = marginal(p, std::vector<int>{0}, 1e-6);
  CHECK(mild.probs.size() <= full.probs.size());
  for (std::size_t k = 1; k < mild.probs.size(); ++k) CHECK(mild.probs[k] >= 1e-6);
}

TEST_CASE("product models concentrate the mixture on one component") {
  RngState rng(45);
  MnntsParams a = random_params(DimVector({2}), rng);
  MnntsParams b = random_params(DimVector({1, 2}), rng);
  MnntsParams prod = product_model(std::vector<MnntsParams>{a, b});
  MarginalMixture m = marginal(prod, std::vector<int>{0});
  CHECK(m.probs[0] == Catch::Approx(1.0).margin(1e-10));
  // and the single live component is the factor itself
  AnglePoint x(testutil::random_point(rng, 1));
  CHECK(mixture_density(m, x) == Catch::Approx(density(a, x)).margin(1e-10));
}

TEST_CASE("subset validation") {
  RngState rng(47);
  MnntsParams p = random_params(DimVector({1, 1}), rng);
  CHECK_THROWS_AS(marginal(p, std::vector<int>{}), ArgumentError);
  CHECK_THROWS_AS(marginal(p, std::vector<int>{2}), ArgumentError);
  CHECK_THROWS_AS(marginal(p, std::vector<int>{-1}), ArgumentError);
  CHECK_THROWS_AS(marginal(p, std::vector<int>{0, 0}), ArgumentError);
}
