// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// Parameter-vector data model and the multi-index / Kronecker algebra shared
// by every other header: linear_index is the single source of truth for the
// ordering of coefficients (row-major, first variable slowest).

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nnts/errors.hpp"

namespace nnts {

using cplx = std::complex<double>;
using ComplexVec = std::vector<cplx>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Reduce an angle to [0, 2*pi). Exact for inputs already in range.
inline double wrap_angle(double a) {
  double r = std::fmod(a, two_pi);
  if (r < 0.0) r += two_pi;
  if (r >= two_pi) r = 0.0;  // fmod result + two_pi can round up to two_pi
  return r;
}

// Numbers of trigonometric terms (M_1, ..., M_n), one per circular variable.
// An associated coefficient vector has prod(M_s + 1) entries.
struct DimVector {
  std::vector<int> m;

  DimVector() = default;
  explicit DimVector(std::vector<int> orders) : m(std::move(orders)) { validate(); }

  int n_vars() const { return static_cast<int>(m.size()); }

  long total_length() const {
    long t = 1;
    for (int v : m) t *= v + 1;
    return t;
  }

  void validate() const {
    if (m.empty()) throw ArgumentError("dimension vector needs at least one variable");
    double t = 1.0;
    for (int v : m) {
      if (v < 0) throw ArgumentError("negative term count in dimension vector");
      t *= v + 1.0;
    }
    if (t > 1e8) throw ArgumentError("parameter vector would exceed 1e8 entries");
  }

  friend bool operator==(const DimVector&, const DimVector&) = default;
};

// stride[s] = prod_{t>s} (M_t + 1); linear index = sum_s k_s * stride[s].
inline std::vector<long> index_strides(const DimVector& dims) {
  int n = dims.n_vars();
  std::vector<long> stride(n);
  long acc = 1;
  for (int s = n - 1; s >= 0; --s) {
    stride[s] = acc;
    acc *= dims.m[s] + 1;
  }
  return stride;
}

// Rank of a multi-index in the global coefficient order (k_1 varies slowest).
inline long linear_index(std::span<const int> k, const DimVector& dims) {
  if (static_cast<int>(k.size()) != dims.n_vars())
    throw ArgumentError("multi-index length does not match dimension vector");
  long idx = 0;
  long acc = 1;
  for (int s = dims.n_vars() - 1; s >= 0; --s) {
    if (k[s] < 0 || k[s] > dims.m[s])
      throw ArgumentError("multi-index component " + std::to_string(s) + " out of range");
    idx += k[s] * acc;
    acc *= dims.m[s] + 1;
  }
  return idx;
}

// Odometer step through multi-indices in linear_index order. Returns false
// (and leaves k all-zero) after the last index wraps around.
inline bool advance_multi_index(std::vector<int>& k, const DimVector& dims) {
  for (int s = dims.n_vars() - 1; s >= 0; --s) {
    if (k[s] < dims.m[s]) {
      ++k[s];
      return true;
    }
    k[s] = 0;
  }
  return false;
}

// (a (x) b)[i*len(b)+j] = a[i]*b[j].
inline ComplexVec kronecker(const ComplexVec& a, const ComplexVec& b) {
  ComplexVec out(a.size() * b.size());
  std::size_t pos = 0;
  for (const cplx& x : a)
    for (const cplx& y : b) out[pos++] = x * y;
  return out;
}

// Scale onto the constraint sphere ||c||^2 = (2*pi)^-n and rotate the global
// phase so the leading coefficient is real nonnegative. When the leading
// coefficient is (relatively) zero the phase is left alone and *phase_fixed
// reports false. Density values are unchanged by the rotation.
inline ComplexVec normalize(const ComplexVec& c, int n_vars, bool* phase_fixed = nullptr) {
  if (c.empty()) throw ArgumentError("cannot normalize an empty vector");
  if (n_vars < 1) throw ArgumentError("normalize needs n_vars >= 1");
  double nrm2 = 0.0;
  for (const cplx& z : c) nrm2 += std::norm(z);
  if (!(nrm2 > 0.0) || !std::isfinite(nrm2))
    throw DegenerateError("cannot normalize a zero or non-finite parameter vector");
  const double radius = std::pow(two_pi, -0.5 * n_vars);
  const double scale = radius / std::sqrt(nrm2);
  const double lead = std::abs(c[0]);
  bool fixed = lead / std::sqrt(nrm2) >= 1e-14;
  cplx rot = fixed ? std::conj(c[0]) / lead : cplx(1.0, 0.0);
  ComplexVec out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i] * rot * scale;
  if (fixed) out[0] = cplx(lead * scale, 0.0);  // kill the rotation's rounding residue
  if (phase_fixed) *phase_fixed = fixed;
  return out;
}

// A distribution of the family: coefficient vector c on the sphere
// ||c||^2 = (2*pi)^-n with c[0] real nonnegative (unless phase_unfixed).
struct MnntsParams {
  DimVector dims;
  ComplexVec c;
  bool phase_unfixed = false;

  int n_vars() const { return dims.n_vars(); }

  void validate() const {
    dims.validate();
    if (static_cast<long>(c.size()) != dims.total_length())
      throw ArgumentError("coefficient count does not match dimension vector");
    double nrm2 = 0.0;
    for (const cplx& z : c) nrm2 += std::norm(z);
    if (std::abs(nrm2 - std::pow(two_pi, -n_vars())) > 1e-12)
      throw ArgumentError("coefficient vector is off the constraint sphere");
    if (!phase_unfixed && (std::abs(c[0].imag()) > 1e-12 || c[0].real() < -1e-12))
      throw ArgumentError("leading coefficient violates the nonnegative-real convention");
  }

  static MnntsParams from_unnormalized(DimVector dims, const ComplexVec& raw) {
    if (static_cast<long>(raw.size()) != dims.total_length())
      throw ArgumentError("coefficient count does not match dimension vector");
    MnntsParams p;
    p.dims = std::move(dims);
    bool fixed = true;
    p.c = normalize(raw, p.dims.n_vars(), &fixed);
    p.phase_unfixed = !fixed;
    return p;
  }
};

inline std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) inv[perm[j]] = static_cast<int>(j);
  return inv;
}

// Parameters of the reordered random vector: new variable j is old variable
// perm[j]. Coefficients are moved, never recomputed, so the sphere and phase
// invariants carry over exactly.
inline MnntsParams permute_vars(const MnntsParams& p, std::span<const int> perm) {
  const int n = p.n_vars();
  if (static_cast<int>(perm.size()) != n) throw ArgumentError("permutation length mismatch");
  std::vector<char> seen(n, 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) throw ArgumentError("not a permutation of the variables");
    seen[v] = 1;
  }
  std::vector<int> orders(n);
  for (int j = 0; j < n; ++j) orders[j] = p.dims.m[perm[j]];
  DimVector dims2(std::move(orders));
  std::vector<long> stride2 = index_strides(dims2);

  MnntsParams out;
  out.dims = std::move(dims2);
  out.c.resize(p.c.size());
  out.phase_unfixed = p.phase_unfixed;
  std::vector<int> k(n, 0);
  long idx = 0;
  do {
    long idx2 = 0;
    for (int j = 0; j < n; ++j) idx2 += static_cast<long>(k[perm[j]]) * stride2[j];
    out.c[idx2] = p.c[idx];
    ++idx;
  } while (advance_multi_index(k, p.dims));
  return out;
}

}  // namespace nnts
