// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nnts/core.hpp"
#include "nnts/errors.hpp"

namespace nnts {

enum class AngleUnit { radians, degrees };

// Observed angles, row-major n_obs x n_vars, already reduced to [0, 2*pi).
struct AngularDataset {
  std::vector<std::string> var_names;
  int n_vars = 0;
  long n_obs = 0;
  std::vector<double> angles;
  AngleUnit source_unit = AngleUnit::radians;

  static AngularDataset from_angles(std::vector<std::string> names, std::vector<double> values,
                                    AngleUnit source = AngleUnit::radians) {
    AngularDataset d;
    d.var_names = std::move(names);
    d.n_vars = static_cast<int>(d.var_names.size());
    d.source_unit = source;
    if (d.n_vars == 0) throw ArgumentError("dataset needs at least one variable");
    if (values.size() % d.n_vars != 0)
      throw ArgumentError("value count is not a multiple of the variable count");
    d.n_obs = static_cast<long>(values.size()) / d.n_vars;
    d.angles = std::move(values);
    for (double& a : d.angles) {
      if (!std::isfinite(a)) throw DataError("non-finite angle in dataset");
      a = wrap_angle(a);
    }
    return d;
  }

  double at(long r, int c) const { return angles[static_cast<std::size_t>(r) * n_vars + c]; }

  std::vector<double> column(int c) const {
    if (c < 0 || c >= n_vars) throw ArgumentError("column index out of range");
    std::vector<double> v(n_obs);
    for (long r = 0; r < n_obs; ++r) v[r] = at(r, c);
    return v;
  }

  AngularDataset select_columns(std::span<const int> cols) const {
    AngularDataset d;
    d.n_vars = static_cast<int>(cols.size());
    if (d.n_vars == 0) throw ArgumentError("column selection is empty");
    d.n_obs = n_obs;
    d.source_unit = source_unit;
    d.var_names.reserve(cols.size());
    for (int c : cols) {
      if (c < 0 || c >= n_vars) throw ArgumentError("column index out of range");
      d.var_names.push_back(var_names[c]);
    }
    d.angles.resize(static_cast<std::size_t>(n_obs) * d.n_vars);
    for (long r = 0; r < n_obs; ++r)
      for (int j = 0; j < d.n_vars; ++j)
        d.angles[static_cast<std::size_t>(r) * d.n_vars + j] = at(r, cols[j]);
    return d;
  }
};

}  // namespace nnts
