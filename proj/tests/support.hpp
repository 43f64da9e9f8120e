// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// Shared test oracles. The uniform grid sum is exact for trigonometric
// polynomials of per-axis degree below the point count, which makes it an
// independent check for every integral identity in the library.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "nnts/nnts.hpp"

namespace testutil {

using nnts::cplx;
using nnts::two_pi;

// Rectangle rule over [0,2pi)^n with `points` nodes per axis, nodes at 2pi*j/points.
template <class F>
double torus_integral(const F& f, int n_vars, int points) {
  std::vector<int> idx(n_vars, 0);
  std::vector<double> theta(n_vars);
  const double step = two_pi / points;
  double sum = 0.0;
  for (;;) {
    for (int s = 0; s < n_vars; ++s) theta[s] = step * idx[s];
    sum += f(theta);
    int s = n_vars - 1;
    while (s >= 0 && ++idx[s] == points) idx[s--] = 0;
    if (s < 0) break;
  }
  return sum * std::pow(step, n_vars);
}

inline double integrate_density(const nnts::MnntsParams& p, int points) {
  return torus_integral(
      [&](const std::vector<double>& t) { return nnts::density(p, nnts::AnglePoint(t)); },
      p.n_vars(), points);
}

// Marginal density of the `keep` variables (ascending) at `kept`, integrating
// the joint over the remaining axes. Oracle for the eigensystem marginal.
inline double quadrature_marginal(const nnts::MnntsParams& p, const std::vector<int>& keep,
                                  const std::vector<double>& kept, int points) {
  const int n = p.n_vars();
  std::vector<int> out;
  for (int j = 0; j < n; ++j)
    if (std::find(keep.begin(), keep.end(), j) == keep.end()) out.push_back(j);
  if (out.empty()) return nnts::density(p, nnts::AnglePoint(kept));
  std::vector<double> full(n);
  for (std::size_t j = 0; j < keep.size(); ++j) full[keep[j]] = kept[j];
  return torus_integral(
      [&](const std::vector<double>& t) {
        for (std::size_t j = 0; j < out.size(); ++j) full[out[j]] = t[j];
        return nnts::density(p, nnts::AnglePoint(full));
      },
      static_cast<int>(out.size()), points);
}

// Two-sided Kolmogorov-Smirnov statistic of values in [0,1] against uniform.
inline double ks_statistic(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max(d, u[i] - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - u[i]);
  }
  return d;
}

// integral of e^{i d t} over [a,b]
inline cplx phase_integral(int d, double a, double b) {
  if (d == 0) return cplx(b - a, 0.0);
  const cplx i(0.0, 1.0);
  return (std::exp(i * (d * b)) - std::exp(i * (d * a))) / (i * static_cast<double>(d));
}

// Exact probability of the rectangle [a1,b1]x[a2,b2] under a bivariate model.
inline double cell_probability_2d(const nnts::MnntsParams& p, double a1, double b1, double a2,
                                  double b2) {
  const int m1 = p.dims.m[0] + 1;
  const int m2 = p.dims.m[1] + 1;
  cplx sum = 0.0;
  for (int k1 = 0; k1 < m1; ++k1)
    for (int k2 = 0; k2 < m2; ++k2)
      for (int l1 = 0; l1 < m1; ++l1)
        for (int l2 = 0; l2 < m2; ++l2) {
          const cplx ck = p.c[static_cast<std::size_t>(k1) * m2 + k2];
          const cplx cl = p.c[static_cast<std::size_t>(l1) * m2 + l2];
          sum += std::conj(ck) * cl * phase_integral(k1 - l1, a1, b1) *
                 phase_integral(k2 - l2, a2, b2);
        }
  return sum.real();
}

inline std::vector<double> random_point(nnts::RngState& rng, int n) {
  std::vector<double> t(n);
  for (double& v : t) v = two_pi * rng.uniform();
  return t;
}

}  // namespace testutil
