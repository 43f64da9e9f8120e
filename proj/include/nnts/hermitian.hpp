// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// Dense Hermitian eigendecomposition by cyclic Jacobi with complex rotations.
// Matrices here are small (marginalization blocks, typically dim <= 64), so
// unconditional stability and deterministic output matter more than speed.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "nnts/core.hpp"
#include "nnts/errors.hpp"

namespace nnts {

struct HermitianMatrix {
  int dim = 0;
  ComplexVec a;  // row-major, dim*dim entries

  HermitianMatrix() = default;
  explicit HermitianMatrix(int d) : dim(d), a(static_cast<std::size_t>(d) * d) {
    if (d < 1) throw ArgumentError("matrix dimension must be >= 1");
  }

  cplx& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
  const cplx& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }

  // A[i][j] = conj(A[j][i]) within tol elementwise, real diagonal.
  void validate(double tol = 1e-12) const {
    if (dim < 1 || a.size() != static_cast<std::size_t>(dim) * dim)
      throw ArgumentError("malformed Hermitian matrix storage");
    for (int i = 0; i < dim; ++i) {
      if (std::abs(at(i, i).imag()) > tol)
        throw ArgumentError("matrix diagonal is not real within tolerance");
      for (int j = i + 1; j < dim; ++j)
        if (std::abs(at(i, j) - std::conj(at(j, i))) > tol)
          throw ArgumentError("matrix is not Hermitian within tolerance");
    }
  }
};

struct HermitianEig {
  int dim = 0;
  std::vector<double> values;  // descending
  ComplexVec vectors;          // row-major dim*dim; column k is eigenvector k

  cplx vec(int i, int k) const { return vectors[static_cast<std::size_t>(i) * dim + k]; }

  ComplexVec column(int k) const {
    ComplexVec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = vec(i, k);
    return v;
  }
};

// Full decomposition A = V diag(values) V^H. Output is deterministic: fixed
// cyclic sweep order, eigenvalues sorted descending with ties kept in sweep
// order, and each eigenvector rotated so its largest-magnitude entry (first
// such entry on ties) is real positive.
inline HermitianEig hermitian_eig(const HermitianMatrix& input) {
  input.validate();
  const int n = input.dim;
  // Work on an exactly Hermitian copy so rotations preserve symmetry to the bit.
  ComplexVec A = input.a;
  auto at = [&](int i, int j) -> cplx& { return A[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) {
    at(i, i) = cplx(at(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      cplx avg = 0.5 * (at(i, j) + std::conj(at(j, i)));
      at(i, j) = avg;
      at(j, i) = std::conj(avg);
    }
  }
  ComplexVec V(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0));
  auto vat = [&](int i, int j) -> cplx& { return V[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) vat(i, i) = 1.0;

  double fro2 = 0.0;
  for (const cplx& z : A) fro2 += std::norm(z);
  const double threshold = 1e-13 * std::sqrt(fro2);

  auto off_norm = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += std::norm(at(i, j));
    return std::sqrt(s);
  };

  double off = off_norm();
  for (int sweep = 0; sweep < 100 && off > threshold; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double gamma = std::abs(at(p, q));
        if (gamma == 0.0) continue;
        const cplx u = at(p, q) / gamma;
        const double alpha = at(p, p).real();
        const double beta = at(q, q).real();
        const double tau = (beta - alpha) / (2.0 * gamma);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // Unitary J: J_pp = c, J_pq = s, J_qp = -s*conj(u), J_qq = c*conj(u).
        // A <- J^H A J applied as all columns first, then all rows.
        for (int k = 0; k < n; ++k) {
          const cplx akp = at(k, p);
          const cplx akq = at(k, q);
          at(k, p) = c * akp - s * std::conj(u) * akq;
          at(k, q) = s * akp + c * std::conj(u) * akq;
        }
        for (int k = 0; k < n; ++k) {
          const cplx apk = at(p, k);
          const cplx aqk = at(q, k);
          at(p, k) = c * apk - s * u * aqk;
          at(q, k) = s * apk + c * u * aqk;
        }
        // The 2x2 target is known in closed form; write it exactly.
        at(p, p) = cplx(alpha - t * gamma, 0.0);
        at(q, q) = cplx(beta + t * gamma, 0.0);
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          const cplx vkp = vat(k, p);
          const cplx vkq = vat(k, q);
          vat(k, p) = c * vkp - s * std::conj(u) * vkq;
          vat(k, q) = s * vkp + c * std::conj(u) * vkq;
        }
      }
    }
    off = off_norm();
  }
  if (off > threshold)
    throw NumericError("Jacobi eigensolver did not converge: off-diagonal residual " +
                       std::to_string(off));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return at(i, i).real() > at(j, j).real(); });

  HermitianEig out;
  out.dim = n;
  out.values.resize(n);
  out.vectors.resize(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    const int src = order[k];
    out.values[k] = at(src, src).real();
    int imax = 0;
    double amax = -1.0;
    for (int i = 0; i < n; ++i) {
      double m = std::abs(vat(i, src));
      if (m > amax) {
        amax = m;
        imax = i;
      }
    }
    cplx rot = amax > 0.0 ? std::conj(vat(imax, src)) / amax : cplx(1.0, 0.0);
    for (int i = 0; i < n; ++i)
      out.vectors[static_cast<std::size_t>(i) * n + k] = vat(i, src) * rot;
    out.vectors[static_cast<std::size_t>(imax) * n + k] = cplx(amax, 0.0);
  }
  return out;
}

}  // namespace nnts
