// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// Conditional distributions. Fixing a block of variables contracts the
// coefficient vector against that block's moment vector; the contracted
// vector, renormalized, parametrizes the conditional, which stays in the
// family. The defining identity, f(free | fixed) * f_fixed(fixed) =
// f(free, fixed), is what the tests pin down.

#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "nnts/core.hpp"
#include "nnts/density.hpp"
#include "nnts/errors.hpp"

namespace nnts {

// Which variables are fixed, and at which angles (0-based; wrapped on use).
struct ConditionalSpec {
  std::map<int, double> given;
};

// Parameters of the free block given the fixed angles. The free variables
// keep their ascending original order. Throws DegenerateError when the fixed
// block's own density at the conditioning point is below 1e-12: there the
// conditional is a 0/0 limit and any output would be noise.
inline MnntsParams conditional(const MnntsParams& p, const ConditionalSpec& spec) {
  const int n = p.n_vars();
  if (spec.given.empty()) throw ArgumentError("conditioning set is empty");
  if (static_cast<int>(spec.given.size()) >= n)
    throw ArgumentError("conditioning must leave at least one free variable");
  for (const auto& [v, angle] : spec.given) {
    if (v < 0 || v >= n) throw ArgumentError("conditioning index out of range");
    (void)angle;
  }

  std::vector<int> free_vars;
  for (int v = 0; v < n; ++v)
    if (!spec.given.count(v)) free_vars.push_back(v);

  std::vector<int> perm = free_vars;
  for (const auto& [v, angle] : spec.given) {
    perm.push_back(v);
    (void)angle;
  }
  MnntsParams pp = permute_vars(p, perm);

  ComplexVec ec{cplx(1.0, 0.0)};
  for (const auto& [v, angle] : spec.given) ec = kronecker(ec, trig_moments(angle, p.dims.m[v]));

  std::vector<int> free_orders(free_vars.size());
  for (std::size_t i = 0; i < free_vars.size(); ++i) free_orders[i] = p.dims.m[free_vars[i]];
  DimVector free_dims(free_orders);
  const long KF = free_dims.total_length();
  const long L = static_cast<long>(ec.size());

  ComplexVec contracted(KF);
  double nrm2 = 0.0;
  for (long r = 0; r < KF; ++r) {
    cplx s = 0.0;
    for (long j = 0; j < L; ++j) s += pp.c[r * L + j] * std::conj(ec[j]);
    contracted[r] = s;
    nrm2 += std::norm(s);
  }

  // ||contracted||^2 * (2*pi)^{|free|} is exactly the fixed block's marginal
  // density at the conditioning point; no mixture evaluation needed.
  const double f_fixed = std::pow(two_pi, static_cast<double>(free_vars.size())) * nrm2;
  if (f_fixed < 1e-12)
    throw DegenerateError("conditioning point has near-zero marginal density");

  return MnntsParams::from_unnormalized(free_dims, contracted);
}

}  // namespace nnts
