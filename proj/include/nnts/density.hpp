// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// Density evaluation. The density is f(theta) = |<c, e(theta)>|^2 with
// e(theta) the Kronecker product of per-variable trigonometric moment
// vectors (1, e^{i theta}, ..., e^{iM theta}); <.,.> conjugates c.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "nnts/core.hpp"
#include "nnts/dataset.hpp"
#include "nnts/errors.hpp"

namespace nnts {

// A point on the hypertorus; components reduced to [0, 2*pi) on construction.
struct AnglePoint {
  std::vector<double> theta;

  AnglePoint() = default;
  explicit AnglePoint(std::vector<double> t) : theta(std::move(t)) {
    for (double& a : theta) a = wrap_angle(a);
  }

  int size() const { return static_cast<int>(theta.size()); }
};

using TrigMomentVector = ComplexVec;

// (1, e^{i theta}, ..., e^{iM theta}); one trig call, then repeated products.
inline TrigMomentVector trig_moments(double theta, int M) {
  if (M < 0) throw ArgumentError("trig_moments needs M >= 0");
  TrigMomentVector e(M + 1);
  e[0] = 1.0;
  const cplx w = std::polar(1.0, wrap_angle(theta));
  for (int k = 1; k <= M; ++k) e[k] = e[k - 1] * w;
  return e;
}

// Kronecker product of the per-variable moment vectors, in coefficient order.
inline ComplexVec moment_vector(const AnglePoint& x, const DimVector& dims) {
  if (x.size() != dims.n_vars()) throw ArgumentError("point dimension does not match model");
  ComplexVec e = trig_moments(x.theta[0], dims.m[0]);
  for (int s = 1; s < dims.n_vars(); ++s) e = kronecker(e, trig_moments(x.theta[s], dims.m[s]));
  return e;
}

inline double density(const MnntsParams& p, const AnglePoint& x) {
  ComplexVec e = moment_vector(x, p.dims);
  cplx s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) s += std::conj(p.c[i]) * e[i];
  return std::norm(s);
}

// Same value through the explicit double sum over coefficient pairs,
// f = sum_{k,m} conj(c_k) c_m e^{i(k-m).theta}, without building the moment
// vector. Quadratic cost; meant for cross-checking the fast form.
inline double sum_form_density(const MnntsParams& p, const AnglePoint& x) {
  if (x.size() != p.n_vars()) throw ArgumentError("point dimension does not match model");
  const int n = p.n_vars();
  std::vector<int> k(n, 0), m(n, 0);
  double f = 0.0;
  long ik = 0;
  do {
    std::fill(m.begin(), m.end(), 0);
    long im = 0;
    do {
      double phase = 0.0;
      for (int s = 0; s < n; ++s) phase += (k[s] - m[s]) * x.theta[s];
      f += (std::conj(p.c[ik]) * p.c[im] * std::polar(1.0, phase)).real();
      ++im;
    } while (advance_multi_index(m, p.dims));
    ++ik;
  } while (advance_multi_index(k, p.dims));
  return f;
}

struct LogLikelihood {
  double value = 0.0;
  long underflow_count = 0;  // rows floored at densities <= 1e-300
};

inline LogLikelihood log_likelihood(const MnntsParams& p, const AngularDataset& data) {
  if (data.n_vars != p.n_vars()) throw ArgumentError("dataset columns do not match model");
  if (data.n_obs < 1) throw ArgumentError("log-likelihood needs at least one observation");
  LogLikelihood out;
  std::vector<double> row(data.n_vars);
  for (long r = 0; r < data.n_obs; ++r) {
    for (int j = 0; j < data.n_vars; ++j) row[j] = data.at(r, j);
    double f = density(p, AnglePoint(row));
    if (f <= 1e-300) {
      out.value += std::log(1e-300);
      ++out.underflow_count;
    } else {
      out.value += std::log(f);
    }
  }
  return out;
}

// Univariate distribution function on [0, 2*pi]:
//   F(theta) = sum_k |c_k|^2 theta
//            + 2 sum_{k<m} Re[ conj(c_k) c_m (e^{i(k-m)theta} - 1) / (i(k-m)) ].
// Term-by-term antiderivative of the density; F(0) = 0, F(2*pi) = 1.
inline double cdf_univariate(const MnntsParams& p, double theta) {
  if (p.n_vars() != 1) throw ArgumentError("cdf is defined for univariate models only");
  if (theta < -1e-9 || theta > two_pi + 1e-9)
    throw ArgumentError("cdf argument outside [0, 2*pi]");
  theta = std::clamp(theta, 0.0, two_pi);
  const int K = static_cast<int>(p.c.size());
  double F = 0.0;
  for (int k = 0; k < K; ++k) F += std::norm(p.c[k]);
  F *= theta;
  for (int k = 0; k < K; ++k) {
    for (int m = k + 1; m < K; ++m) {
      const int d = k - m;
      const cplx term =
          std::conj(p.c[k]) * p.c[m] * (std::polar(1.0, d * theta) - 1.0) / cplx(0.0, d);
      F += 2.0 * term.real();
    }
  }
  return std::clamp(F, 0.0, 1.0);
}

}  // namespace nnts
