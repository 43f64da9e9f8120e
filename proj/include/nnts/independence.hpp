// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// Independence across a split of the variables is exactly a Kronecker
// factorization of the coefficient vector: the marginal of either side then
// has a single nonzero mixing probability. The likelihood-ratio test compares
// a joint fit against per-block fits; free parameters per fitted vector are
// 2 prod(M_s + 1) - 2 (complex sphere constraint and the phase convention).

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "nnts/chi_squared.hpp"
#include "nnts/core.hpp"
#include "nnts/dataset.hpp"
#include "nnts/errors.hpp"
#include "nnts/estimation.hpp"
#include "nnts/marginal.hpp"

namespace nnts {

struct IndependenceTestResult {
  double lr_statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  double loglik_full = 0.0;
  double loglik_indep = 0.0;
  bool approximate = false;  // estimator did not maximize the likelihood (md)
  bool clipped = false;      // statistic came out negative and was clipped to 0
};

// Joint parameters of independent blocks: dims concatenate, coefficients
// Kronecker-multiply. The result is on the sphere with nonnegative leading
// coefficient automatically; the joint density factorizes pointwise.
inline MnntsParams product_model(std::span<const MnntsParams> blocks) {
  if (blocks.size() < 2) throw ArgumentError("product model needs at least two blocks");
  std::vector<int> orders;
  ComplexVec c{cplx(1.0, 0.0)};
  bool unfixed = false;
  for (const MnntsParams& b : blocks) {
    orders.insert(orders.end(), b.dims.m.begin(), b.dims.m.end());
    c = kronecker(c, b.c);
    unfixed = unfixed || b.phase_unfixed;
  }
  MnntsParams out;
  out.dims = DimVector(std::move(orders));
  out.c = std::move(c);
  out.phase_unfixed = unfixed;
  return out;
}

inline int free_parameter_count(const DimVector& dims) {
  return static_cast<int>(2 * dims.total_length() - 2);
}

namespace detail {
inline void check_partition(std::span<const int> set_a, std::span<const int> set_b, int n) {
  std::vector<int> all(set_a.begin(), set_a.end());
  all.insert(all.end(), set_b.begin(), set_b.end());
  if (set_a.empty() || set_b.empty()) throw ArgumentError("both sides of the split must be nonempty");
  std::sort(all.begin(), all.end());
  if (static_cast<int>(all.size()) != n) throw ArgumentError("split does not cover the variables");
  for (int v = 0; v < n; ++v)
    if (all[v] != v) throw ArgumentError("split is not a partition of the variables");
}
}  // namespace detail

// Largest mixing probability of the set_a marginal; equals 1 exactly when the
// model factorizes across the split. Symmetric in the two sides.
inline double independence_score(const MnntsParams& p, std::span<const int> set_a,
                                 std::span<const int> set_b) {
  detail::check_partition(set_a, set_b, p.n_vars());
  return marginal(p, set_a).probs.at(0);
}

struct LrTestOptions {
  Estimator estimator = Estimator::ml;
  int max_iter = 1000;
  double tol = 1e-8;
};

inline IndependenceTestResult lr_test(const AngularDataset& data, const DimVector& dims,
                                      std::span<const int> set_a, std::span<const int> set_b,
                                      const LrTestOptions& opts = {}) {
  if (data.n_vars != dims.n_vars()) throw ArgumentError("dataset columns do not match dimensions");
  detail::check_partition(set_a, set_b, dims.n_vars());
  if (data.n_obs < 2) throw DataError("independence test needs at least two observations");

  auto sorted = [](std::span<const int> s) {
    std::vector<int> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    return v;
  };
  const std::vector<int> a = sorted(set_a);
  const std::vector<int> b = sorted(set_b);
  auto sub_dims = [&](const std::vector<int>& vars) {
    std::vector<int> orders(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) orders[i] = dims.m[vars[i]];
    return DimVector(orders);
  };
  const DimVector da = sub_dims(a);
  const DimVector db = sub_dims(b);
  const AngularDataset data_a = data.select_columns(a);
  const AngularDataset data_b = data.select_columns(b);

  FitReport fit_a, fit_b, fit_full;
  if (opts.estimator == Estimator::md) {
    fit_a = fit_md(data_a, da);
    fit_b = fit_md(data_b, db);
    fit_full = fit_md(data, dims);
  } else {
    MlOptions mo;
    mo.max_iter = opts.max_iter;
    mo.tol = opts.tol;
    fit_a = fit_ml(data_a, da, mo);
    fit_b = fit_ml(data_b, db, mo);
    // Initialize the joint fit at the better of the MD fit and the product of
    // the block fits; starting no worse than the independent model keeps the
    // statistic nonnegative up to roundoff.
    const MnntsParams blocks[] = {fit_a.params, fit_b.params};
    MnntsParams prod_ab = product_model(blocks);
    std::vector<int> back(dims.n_vars());
    {
      std::vector<int> concat = a;
      concat.insert(concat.end(), b.begin(), b.end());
      // prod_ab's variable j is original variable concat[j]; undo that order.
      for (int v = 0; v < dims.n_vars(); ++v) {
        auto it = std::find(concat.begin(), concat.end(), v);
        back[v] = static_cast<int>(it - concat.begin());
      }
    }
    MnntsParams prod = permute_vars(prod_ab, back);
    const MnntsParams md = fit_md(data, dims).params;
    MlOptions full_opts = mo;
    full_opts.init = log_likelihood(prod, data).value >= log_likelihood(md, data).value ? prod : md;
    fit_full = fit_ml(data, dims, full_opts);
  }

  IndependenceTestResult res;
  res.loglik_full = fit_full.loglik;
  res.loglik_indep = fit_a.loglik + fit_b.loglik;
  res.approximate = opts.estimator == Estimator::md;
  double stat = 2.0 * (res.loglik_full - res.loglik_indep);
  if (stat < 0.0) {
    res.clipped = true;
    stat = 0.0;
  }
  res.lr_statistic = stat;
  res.df = free_parameter_count(dims) - free_parameter_count(da) - free_parameter_count(db);
  res.p_value = chi_squared_sf(res.lr_statistic, res.df);
  return res;
}

}  // namespace nnts
