// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// Deterministic sampling. The generator is splitmix64, written out constant
// by constant so streams are reproducible across languages: state advances
// by 0x9E3779B97F4A7C15 and the output mixing is
//   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//   z ^= z >> 27; z *= 0x94D049BB133111EB;
//   z ^= z >> 31.
// Univariate draws invert the distribution function by bisection; joint
// draws walk the chain rule through marginal mixtures and conditionals.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nnts/conditional.hpp"
#include "nnts/core.hpp"
#include "nnts/dataset.hpp"
#include "nnts/density.hpp"
#include "nnts/errors.hpp"
#include "nnts/marginal.hpp"

namespace nnts {

struct RngState {
  std::uint64_t state = 0;

  explicit RngState(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (two uniforms per draw).
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(two_pi * u2);
  }

  // Independent child stream k; does not advance this stream.
  RngState split(std::uint64_t k) const {
    std::uint64_t z = state ^ ((k + 1) * 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return RngState(z ^ (z >> 31));
  }
};

// Coefficients drawn standard complex normal, then projected to the sphere:
// uniform over the parameter space up to phase.
inline MnntsParams random_params(const DimVector& dims, RngState& rng) {
  ComplexVec c(dims.total_length());
  for (cplx& z : c) {
    const double re = rng.normal();
    const double im = rng.normal();
    z = cplx(re, im);
  }
  return MnntsParams::from_unnormalized(dims, c);
}

namespace detail {

// Monotone bisection for F(theta) = u on [0, 2*pi]; 60 halvings leave a
// bracket of width 2*pi*2^-60, far below the 1e-10 target on |F - u|.
inline double invert_cdf(const MnntsParams& p, double u) {
  double lo = 0.0;
  double hi = two_pi;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf_univariate(p, mid) < u)
      lo = mid;
    else
      hi = mid;
  }
  return wrap_angle(0.5 * (lo + hi));
}

// One draw from a univariate mixture. A single-component mixture consumes no
// selection uniform, so a univariate joint draw replays sample_univariate.
inline double draw_mixture(const MarginalMixture& mix, RngState& rng) {
  std::size_t pick = 0;
  if (mix.probs.size() > 1) {
    double total = 0.0;
    for (double q : mix.probs) total += q;
    double u = rng.uniform() * total;
    for (; pick + 1 < mix.probs.size(); ++pick) {
      u -= mix.probs[pick];
      if (u < 0.0) break;
    }
  }
  return invert_cdf(mix.components[pick], rng.uniform());
}

}  // namespace detail

inline std::vector<double> sample_univariate(const MnntsParams& p, RngState& rng, long count) {
  if (p.n_vars() != 1) throw ArgumentError("sample_univariate needs a univariate model");
  if (count < 1) throw ArgumentError("sample count must be >= 1");
  std::vector<double> out(count);
  for (long i = 0; i < count; ++i) out[i] = detail::invert_cdf(p, rng.uniform());
  return out;
}

inline AngularDataset sample(const MnntsParams& p, RngState& rng, long count) {
  if (count < 1) throw ArgumentError("sample count must be >= 1");
  const int n = p.n_vars();
  std::vector<std::string> names(n);
  for (int j = 0; j < n; ++j) names[j] = "v" + std::to_string(j + 1);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(count) * n);

  const std::vector<int> lead{0};
  for (long i = 0; i < count; ++i) {
    MnntsParams q = p;
    for (int j = 0; j < n; ++j) {
      MarginalMixture mix = marginal(q, lead);
      if (j == n - 1) {
        values.push_back(detail::draw_mixture(mix, rng));
        break;
      }
      bool advanced = false;
      for (int attempt = 0; attempt < 100; ++attempt) {
        const double theta = detail::draw_mixture(mix, rng);
        try {
          ConditionalSpec spec;
          spec.given[0] = theta;
          MnntsParams qnext = conditional(q, spec);
          q = std::move(qnext);
          values.push_back(theta);
          advanced = true;
          break;
        } catch (const DegenerateError&) {
          // landed on a near-zero slice; redraw this coordinate
        }
      }
      if (!advanced)
        throw NumericError("sampling stalled on a degenerate conditional after 100 retries");
    }
  }
  return AngularDataset::from_angles(std::move(names), std::move(values));
}

}  // namespace nnts
