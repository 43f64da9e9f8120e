// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// Marginals of arbitrary variable subsets. Integrating the squared inner
// product over the dropped block leaves a Hermitian quadratic form whose
// spectral decomposition expresses the marginal as a finite mixture of
// lower-dimensional densities of the same family.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "nnts/core.hpp"
#include "nnts/density.hpp"
#include "nnts/errors.hpp"
#include "nnts/hermitian.hpp"

namespace nnts {

struct MarginalMixture {
  DimVector keep_dims;
  std::vector<double> probs;  // descending, clipped at 0, sum 1
  std::vector<MnntsParams> components;
};

namespace detail {
inline std::vector<int> checked_subset(std::span<const int> vars, int n, const char* what) {
  if (vars.empty()) throw ArgumentError(std::string(what) + " set is empty");
  std::vector<int> v(vars.begin(), vars.end());
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0 || v[i] >= n) throw ArgumentError(std::string(what) + " index out of range");
    if (i > 0 && v[i] == v[i - 1]) throw ArgumentError(std::string(what) + " index repeated");
  }
  return v;
}

inline std::vector<int> complement(const std::vector<int>& sorted, int n) {
  std::vector<int> out;
  std::size_t i = 0;
  for (int v = 0; v < n; ++v) {
    if (i < sorted.size() && sorted[i] == v)
      ++i;
    else
      out.push_back(v);
  }
  return out;
}
}  // namespace detail

// Marginal of the kept variables (indices 0-based; result is expressed in
// their ascending order). Mixing probabilities are the (2*pi)^{|keep|}-scaled
// eigenvalues of C = (2*pi)^{|out|} B B^H where B is the coefficient vector
// reshaped with the kept block leading; they sum to 1 by the trace identity.
// Setting truncate_below >= 0 drops trailing components with smaller
// probability (the leading component is always kept; the truncated mixture
// is an approximation and is not renormalized).
inline MarginalMixture marginal(const MnntsParams& p, std::span<const int> keep,
                                double truncate_below = -1.0) {
  const int n = p.n_vars();
  std::vector<int> kp = detail::checked_subset(keep, n, "keep");

  MarginalMixture out;
  if (static_cast<int>(kp.size()) == n) {
    out.keep_dims = p.dims;
    out.probs = {1.0};
    out.components = {p};
    return out;
  }

  std::vector<int> rest = detail::complement(kp, n);
  std::vector<int> perm = kp;
  perm.insert(perm.end(), rest.begin(), rest.end());
  MnntsParams pp = permute_vars(p, perm);

  std::vector<int> keep_orders(kp.size()), out_orders(rest.size());
  for (std::size_t i = 0; i < kp.size(); ++i) keep_orders[i] = p.dims.m[kp[i]];
  for (std::size_t i = 0; i < rest.size(); ++i) out_orders[i] = p.dims.m[rest[i]];
  DimVector keep_dims(keep_orders);
  const long K = keep_dims.total_length();
  const long L = pp.dims.total_length() / K;

  const double out_scale = std::pow(two_pi, static_cast<double>(rest.size()));
  HermitianMatrix C(static_cast<int>(K));
  for (long r = 0; r < K; ++r) {
    for (long r2 = r; r2 < K; ++r2) {
      cplx s = 0.0;
      for (long l = 0; l < L; ++l) s += pp.c[r * L + l] * std::conj(pp.c[r2 * L + l]);
      s *= out_scale;
      if (r == r2) s = cplx(s.real(), 0.0);
      C.at(static_cast<int>(r), static_cast<int>(r2)) = s;
      C.at(static_cast<int>(r2), static_cast<int>(r)) = std::conj(s);
    }
  }

  HermitianEig eig = hermitian_eig(C);
  const double keep_scale = std::pow(two_pi, static_cast<double>(kp.size()));
  out.keep_dims = keep_dims;
  for (int k = 0; k < eig.dim; ++k) {
    double prob = keep_scale * eig.values[k];
    if (truncate_below >= 0.0 && k > 0 && prob < truncate_below) break;
    out.probs.push_back(std::max(0.0, prob));
    out.components.push_back(MnntsParams::from_unnormalized(keep_dims, eig.column(k)));
  }
  return out;
}

inline double mixture_density(const MarginalMixture& m, const AnglePoint& x) {
  if (m.probs.size() != m.components.size() || m.probs.empty())
    throw ArgumentError("malformed mixture");
  if (x.size() != m.keep_dims.n_vars()) throw ArgumentError("point dimension does not match mixture");
  double f = 0.0;
  for (std::size_t k = 0; k < m.probs.size(); ++k) f += m.probs[k] * density(m.components[k], x);
  return f;
}

}  // namespace nnts
