// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// Descriptive circular statistics. The median minimizes the mean arc
// distance over the data points themselves (ties -> smallest angle); the
// quartiles are the medians of the two arcs the median splits the data into.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "nnts/core.hpp"
#include "nnts/errors.hpp"

namespace nnts {

struct CircularSummary {
  double mean_direction = 0.0;   // radians in [0, 2*pi)
  double resultant_length = 0.0; // in [0, 1]
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
};

namespace detail {

// Arc distance on the circle: pi - |pi - |a - b||, in [0, pi].
inline double arc_distance(double a, double b) {
  return pi - std::fabs(pi - std::fabs(wrap_angle(a) - wrap_angle(b)));
}

// Candidate minimizing the mean arc distance; candidates are the points
// themselves, sorted so exact ties resolve to the smallest angle.
inline double arc_median(std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  double best = pts.front();
  double best_cost = -1.0;
  for (double cand : pts) {
    double cost = 0.0;
    for (double x : pts) cost += arc_distance(cand, x);
    if (best_cost < 0.0 || cost < best_cost) {
      best_cost = cost;
      best = cand;
    }
  }
  return best;
}

// Signed deviation from the median, in (-pi, pi].
inline double signed_delta(double x, double m) {
  double d = wrap_angle(x - m);
  if (d > pi) d -= two_pi;
  return d;
}

}  // namespace detail

inline CircularSummary circular_summary(std::span<const double> column) {
  if (column.empty()) throw DataError("summary of an empty column");
  CircularSummary s;
  cplx resultant = 0.0;
  std::vector<double> pts;
  pts.reserve(column.size());
  for (double a : column) {
    const double w = wrap_angle(a);
    pts.push_back(w);
    resultant += std::polar(1.0, w);
  }
  s.resultant_length = std::min(1.0, std::abs(resultant) / static_cast<double>(column.size()));
  s.mean_direction = wrap_angle(std::arg(resultant));
  s.median = detail::arc_median(pts);

  std::vector<double> below, above;
  for (double x : pts) {
    const double d = detail::signed_delta(x, s.median);
    if (d < 0.0)
      below.push_back(x);
    else if (d > 0.0)
      above.push_back(x);
  }
  s.q1 = below.empty() ? s.median : detail::arc_median(below);
  s.q3 = above.empty() ? s.median : detail::arc_median(above);
  return s;
}

// Correlation of sines of deviations from the circular means; in [-1, 1].
inline double circular_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("columns have different lengths");
  if (a.size() < 2) throw ArgumentError("correlation needs at least two observations");
  cplx ra = 0.0, rb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ra += std::polar(1.0, a[i]);
    rb += std::polar(1.0, b[i]);
  }
  const double ma = std::arg(ra);
  const double mb = std::arg(rb);
  double num = 0.0, da2 = 0.0, db2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double sa = std::sin(a[i] - ma);
    const double sb = std::sin(b[i] - mb);
    num += sa * sb;
    da2 += sa * sa;
    db2 += sb * sb;
  }
  if (da2 <= 0.0 || db2 <= 0.0)
    throw DegenerateError("zero sine dispersion; circular correlation undefined");
  return std::clamp(num / std::sqrt(da2 * db2), -1.0, 1.0);
}

}  // namespace nnts
