// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace nnts;

TEST_CASE("generator reproduces the published splitmix64 stream") {
  RngState rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFull);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ull);
  CHECK(rng.next() == 0x06C45D188009454Full);
  CHECK(rng.next() == 0xF88BB8A8724C81ECull);
  CHECK(rng.next() == 0x1B39896A51A8749Bull);
}

TEST_CASE("uniform covers [0,1) and normal has the right first moments") {
  RngState rng(99);
  double sum = 0.0, sumsq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == Catch::Approx(0.5).margin(0.01));
  sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sumsq += z * z;
  }
  CHECK(sum / n == Catch::Approx(0.0).margin(0.03));
  CHECK(sumsq / n == Catch::Approx(1.0).margin(0.05));
}

TEST_CASE("split streams are decoupled and reproducible") {
  RngState a(42);
  RngState s0 = a.split(0);
  RngState s1 = a.split(1);
  CHECK(s0.next() != s1.next());
  RngState b(42);
  CHECK(b.split(0).next() == RngState(42).split(0).next());
  // splitting does not advance the parent
  RngState c(42);
  const auto before = RngState(42).next();
  (void)c.split(7);
  CHECK(c.next() == before);
}

TEST_CASE("random models are valid and seeded deterministically") {
  RngState r1(7), r2(7);
  MnntsParams p1 = random_params(DimVector({2, 3}), r1);
  MnntsParams p2 = random_params(DimVector({2, 3}), r2);
  CHECK_NOTHROW(p1.validate());
  REQUIRE(p1.c.size() == p2.c.size());
  for (std::size_t i = 0; i < p1.c.size(); ++i) CHECK(p1.c[i] == p2.c[i]);
}

TEST_CASE("univariate sampler matches its distribution function") {
  RngState rng(111);
  for (int trial = 0; trial < 3; ++trial) {
    MnntsParams p = random_params(DimVector({3}), rng);
    RngState draw = rng.split(trial);
    std::vector<double> xs = sample_univariate(p, draw, 4000);
    std::vector<double> u(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) u[i] = cdf_univariate(p, xs[i]);
    const double ks = testutil::ks_statistic(u);
    CHECK(ks < 1.6276 / std::sqrt(4000.0));  // 1% critical value
  }
}

TEST_CASE("bivariate sampler matches exact cell probabilities") {
  RngState rng(115);
  MnntsParams p = random_params(DimVector({2, 2}), rng);
  const long n = 4000;
  AngularDataset data = sample(p, rng, n);
  const int bins = 4;
  std::vector<double> counts(bins * bins, 0.0);
  for (long r = 0; r < n; ++r) {
    const int i = std::min(bins - 1, static_cast<int>(data.at(r, 0) / two_pi * bins));
    const int j = std::min(bins - 1, static_cast<int>(data.at(r, 1) / two_pi * bins));
    counts[i * bins + j] += 1.0;
  }
  double chi2 = 0.0;
  const double w = two_pi / bins;
  for (int i = 0; i < bins; ++i)
    for (int j = 0; j < bins; ++j) {
      const double prob =
          testutil::cell_probability_2d(p, i * w, (i + 1) * w, j * w, (j + 1) * w);
      REQUIRE(prob > 0.0);
      const double expect = prob * n;
      chi2 += (counts[i * bins + j] - expect) * (counts[i * bins + j] - expect) / expect;
    }
  // 15 degrees of freedom; fails only at far below the 1% level
  CHECK(chi2 < chi_squared_quantile(0.999, bins * bins - 1));
}

TEST_CASE("sampling is reproducible and seed-sensitive") {
  RngState rng(200);
  MnntsParams p = random_params(DimVector({1, 2}), rng);
  RngState a(5), b(5), c(6);
  AngularDataset da = sample(p, a, 100);
  AngularDataset db = sample(p, b, 100);
  AngularDataset dc = sample(p, c, 100);
  CHECK(da.angles == db.angles);
  CHECK(da.angles != dc.angles);
  CHECK(da.var_names == std::vector<std::string>{"v1", "v2"});
  for (double x : da.angles) {
    CHECK(x >= 0.0);
    CHECK(x < two_pi);
  }
}

TEST_CASE("general sampler on one variable replays the univariate path") {
  RngState rng(210);
  MnntsParams p = random_params(DimVector({3}), rng);
  RngState s1(77), s2(77);
  AngularDataset via_chain = sample(p, s1, 50);
  std::vector<double> direct = sample_univariate(p, s2, 50);
  for (long r = 0; r < 50; ++r) CHECK(via_chain.at(r, 0) == direct[r]);
}

TEST_CASE("sample argument validation") {
  RngState rng(220);
  MnntsParams p = random_params(DimVector({2}), rng);
  CHECK_THROWS_AS(sample(p, rng, 0), ArgumentError);
  CHECK_THROWS_AS(sample_univariate(p, rng, -3), ArgumentError);
  MnntsParams p2 = random_params(DimVector({1, 1}), rng);
  CHECK_THROWS_AS(sample_univariate(p2, rng, 5), ArgumentError);
}
