// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// Fitting. MD: normalized mean of the observed moment vectors, closed form.
// ML: projected gradient ascent on the constraint sphere with a backtracking
// line search; monotone in the log-likelihood by construction, initialized at
// the MD fit unless told otherwise.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nnts/core.hpp"
#include "nnts/dataset.hpp"
#include "nnts/density.hpp"
#include "nnts/errors.hpp"

namespace nnts {

enum class Estimator { md, ml };

struct FitReport {
  MnntsParams params;
  Estimator method = Estimator::md;
  double loglik = 0.0;
  long underflow_count = 0;
  int iterations = 0;
  bool converged = true;
  std::optional<double> grad_norm;    // ML only: Riemannian gradient norm at exit
  std::vector<double> loglik_trace;   // ML only: after init and each accepted step
};

namespace detail {

struct MomentCache {
  const AngularDataset* data = nullptr;
  const DimVector* dims = nullptr;
  long n_obs = 0;
  long K = 0;
  bool cached = false;
  ComplexVec rows;  // n_obs x K when cached

  MomentCache(const AngularDataset& d, const DimVector& dm)
      : data(&d), dims(&dm), n_obs(d.n_obs), K(dm.total_length()) {
    cached = static_cast<double>(n_obs) * static_cast<double>(K) <= 4e6;
    if (cached) {
      rows.resize(static_cast<std::size_t>(n_obs) * K);
      std::vector<double> row(d.n_vars);
      for (long r = 0; r < n_obs; ++r) {
        for (int j = 0; j < d.n_vars; ++j) row[j] = d.at(r, j);
        ComplexVec e = moment_vector(AnglePoint(row), dm);
        std::copy(e.begin(), e.end(), rows.begin() + static_cast<std::size_t>(r) * K);
      }
    }
  }

  // Calls fn(r, pointer to the r-th moment vector) for every observation.
  template <class F>
  void for_each(F&& fn) const {
    if (cached) {
      for (long r = 0; r < n_obs; ++r) fn(r, rows.data() + static_cast<std::size_t>(r) * K);
    } else {
      std::vector<double> row(data->n_vars);
      for (long r = 0; r < n_obs; ++r) {
        for (int j = 0; j < data->n_vars; ++j) row[j] = data->at(r, j);
        ComplexVec e = moment_vector(AnglePoint(row), *dims);
        fn(r, e.data());
      }
    }
  }
};

inline double floored_log(double f, long& underflows) {
  if (f <= 1e-300) {
    ++underflows;
    return std::log(1e-300);
  }
  return std::log(f);
}

}  // namespace detail

// Log-likelihood of an arbitrary (not necessarily normalized) coefficient
// vector, and optionally its Euclidean gradient 2 sum_r e_r conj(s_r)/|s_r|^2
// with s_r = <c, e_r>. The gradient, read as (re, im) pairs, is the exact
// gradient with respect to the real parametrization; rows with floored
// densities contribute no gradient.
inline double ml_loglik_gradient(const ComplexVec& c, const DimVector& dims,
                                 const AngularDataset& data, ComplexVec* grad,
                                 long* underflows = nullptr) {
  if (data.n_vars != dims.n_vars()) throw ArgumentError("dataset columns do not match model");
  if (static_cast<long>(c.size()) != dims.total_length())
    throw ArgumentError("coefficient count does not match dimension vector");
  detail::MomentCache cache(data, dims);
  const long K = cache.K;
  if (grad) {
    grad->assign(K, cplx(0.0, 0.0));
  }
  double ll = 0.0;
  long uf = 0;
  cache.for_each([&](long, const cplx* e) {
    cplx s = 0.0;
    for (long i = 0; i < K; ++i) s += std::conj(c[i]) * e[i];
    const double f = std::norm(s);
    ll += detail::floored_log(f, uf);
    if (grad && f > 1e-300) {
      const cplx w = 2.0 * std::conj(s) / f;
      for (long i = 0; i < K; ++i) (*grad)[i] += w * e[i];
    }
  });
  if (underflows) *underflows = uf;
  return ll;
}

inline FitReport fit_md(const AngularDataset& data, const DimVector& dims) {
  if (data.n_vars != dims.n_vars()) throw ArgumentError("dataset columns do not match model");
  if (data.n_obs < 1) throw DataError("fit needs at least one observation");
  const long K = dims.total_length();
  ComplexVec acc(K, cplx(0.0, 0.0));
  std::vector<double> row(data.n_vars);
  for (long r = 0; r < data.n_obs; ++r) {
    for (int j = 0; j < data.n_vars; ++j) row[j] = data.at(r, j);
    ComplexVec e = moment_vector(AnglePoint(row), dims);
    for (long i = 0; i < K; ++i) acc[i] += e[i];
  }
  double nrm2 = 0.0;
  for (cplx& z : acc) {
    z /= static_cast<double>(data.n_obs);
    nrm2 += std::norm(z);
  }
  if (std::sqrt(nrm2) < 1e-14)
    throw DegenerateError("mean resultant vanishes; moment estimator undefined");

  FitReport rep;
  rep.method = Estimator::md;
  rep.params = MnntsParams::from_unnormalized(dims, acc);
  LogLikelihood ll = log_likelihood(rep.params, data);
  rep.loglik = ll.value;
  rep.underflow_count = ll.underflow_count;
  return rep;
}

struct MlOptions {
  std::optional<MnntsParams> init;  // default: the MD fit
  int max_iter = 1000;
  double tol = 1e-8;  // on the Riemannian gradient norm
};

inline FitReport fit_ml(const AngularDataset& data, const DimVector& dims,
                        const MlOptions& opts = {}) {
  if (data.n_vars != dims.n_vars()) throw ArgumentError("dataset columns do not match model");
  if (data.n_obs < 1) throw DataError("fit needs at least one observation");
  if (!(opts.tol > 0.0)) throw ArgumentError("tolerance must be positive");
  if (opts.max_iter < 0) throw ArgumentError("max_iter must be >= 0");

  MnntsParams start;
  if (opts.init) {
    if (opts.init->dims != dims) throw ArgumentError("init parameters do not match dimensions");
    opts.init->validate();
    start = *opts.init;
  } else {
    start = fit_md(data, dims).params;
  }

  detail::MomentCache cache(data, dims);
  const long K = cache.K;
  const double radius = std::pow(two_pi, -0.5 * dims.n_vars());

  auto eval_ll = [&](const ComplexVec& c, long& uf) {
    double ll = 0.0;
    uf = 0;
    cache.for_each([&](long, const cplx* e) {
      cplx s = 0.0;
      for (long i = 0; i < K; ++i) s += std::conj(c[i]) * e[i];
      ll += detail::floored_log(std::norm(s), uf);
    });
    return ll;
  };
  auto eval_grad = [&](const ComplexVec& c, ComplexVec& g, long& uf) {
    double ll = 0.0;
    uf = 0;
    g.assign(K, cplx(0.0, 0.0));
    cache.for_each([&](long, const cplx* e) {
      cplx s = 0.0;
      for (long i = 0; i < K; ++i) s += std::conj(c[i]) * e[i];
      const double f = std::norm(s);
      ll += detail::floored_log(f, uf);
      if (f > 1e-300) {
        const cplx w = 2.0 * std::conj(s) / f;
        for (long i = 0; i < K; ++i) g[i] += w * e[i];
      }
    });
    return ll;
  };

  ComplexVec c = start.c;
  ComplexVec g, gr, cand;
  long uf = 0;
  double ll = 0.0;
  double gnorm = 0.0;
  double prev_alpha = 1.0;
  int accepted = 0;
  int stalled = 0;
  bool converged = false;
  FitReport rep;
  rep.method = Estimator::ml;

  for (int iter = 0; iter <= opts.max_iter; ++iter) {
    ll = eval_grad(c, g, uf);
    if (!std::isfinite(ll)) throw NumericError("non-finite log-likelihood at iteration " +
                                               std::to_string(iter));
    if (iter == 0) rep.loglik_trace.push_back(ll);

    // Riemannian gradient: remove the radial component (in the real inner
    // product) so steps move along the sphere.
    cplx cg = 0.0;
    double gnorm2 = 0.0;
    for (long i = 0; i < K; ++i) cg += std::conj(c[i]) * g[i];
    const double coeff = cg.real() / (radius * radius);
    gr.resize(K);
    for (long i = 0; i < K; ++i) {
      gr[i] = g[i] - coeff * c[i];
      gnorm2 += std::norm(gr[i]);
    }
    gnorm = std::sqrt(gnorm2);
    if (!std::isfinite(gnorm)) throw NumericError("non-finite gradient at iteration " +
                                                  std::to_string(iter));
    if (gnorm < opts.tol) {
      converged = true;
      break;
    }
    if (iter == opts.max_iter) break;

    // Backtracking line search on the retraction c(a) = renormalize(c + a*gr),
    // warm-started from twice the last accepted step.
    double alpha = iter == 0 ? 1.0 : std::min(1.0, 2.0 * prev_alpha);
    bool ok = false;
    double ll_new = 0.0;
    for (int bt = 0; bt < 80; ++bt) {
      cand.resize(K);
      double cnrm2 = 0.0;
      for (long i = 0; i < K; ++i) {
        cand[i] = c[i] + alpha * gr[i];
        cnrm2 += std::norm(cand[i]);
      }
      const double rescale = radius / std::sqrt(cnrm2);
      for (long i = 0; i < K; ++i) cand[i] *= rescale;
      long uf2 = 0;
      const double llc = eval_ll(cand, uf2);
      if (std::isfinite(llc) && llc >= ll + 1e-4 * alpha * gnorm2) {
        ok = true;
        ll_new = llc;
        break;
      }
      alpha *= 0.5;
    }
    if (!ok) break;  // no admissible step; report the gradient norm as is
    c = cand;
    prev_alpha = alpha;
    ++accepted;
    rep.loglik_trace.push_back(ll_new);
    // Secondary stop: two consecutive accepted steps gaining less than the
    // numerical resolution of the log-likelihood. The step size doubles
    // between them, so this only happens where double precision cannot
    // certify further progress; that is convergence too.
    if (ll_new - ll <= 1e-12 * (1.0 + std::fabs(ll_new))) {
      if (++stalled >= 2) {
        converged = true;
        ll = ll_new;
        break;
      }
    } else {
      stalled = 0;
    }
  }

  rep.params = MnntsParams::from_unnormalized(dims, c);  // fixes the phase; density unchanged
  LogLikelihood fin = log_likelihood(rep.params, data);
  rep.loglik = fin.value;
  rep.underflow_count = fin.underflow_count;
  rep.iterations = accepted;
  rep.converged = converged;
  rep.grad_norm = gnorm;
  return rep;
}

}  // namespace nnts
