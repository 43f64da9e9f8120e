// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// File formats. Datasets are plain CSV (header row, comma-separated, LF);
// angles may arrive in degrees but are radians everywhere past ingestion.
// Models are versioned JSON with separate re/im arrays; doubles survive a
// write/read round trip bit-exactly in both formats.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nnts/core.hpp"
#include "nnts/dataset.hpp"
#include "nnts/errors.hpp"

namespace nnts {

struct IngestReport {
  AngularDataset data;
  long rows_dropped = 0;                          // rows with missing cells
  std::vector<std::pair<double, double>> ranges;  // per-column min/max, radians
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

inline std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline IngestReport ingest_csv(const std::string& path, AngleUnit unit,
                               const std::string& missing_token = "NA") {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + " is empty");
  std::vector<std::string> names = detail::split_csv_line(line);
  for (std::string& n : names) n = detail::trim(n);
  const int n_vars = static_cast<int>(names.size());

  std::vector<double> values;
  long dropped = 0;
  long row_no = 1;  // header was row 1
  std::vector<double> row(n_vars);
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty()) continue;
    std::vector<std::string> fields = detail::split_csv_line(line);
    if (static_cast<int>(fields.size()) != n_vars)
      throw DataError(path + " row " + std::to_string(row_no) + ": expected " +
                      std::to_string(n_vars) + " fields, got " + std::to_string(fields.size()));
    bool missing = false;
    for (int c = 0; c < n_vars; ++c) {
      const std::string cell = detail::trim(fields[c]);
      if (cell == missing_token) {
        missing = true;
        continue;
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size() || cell.empty() || !std::isfinite(v))
        throw DataError(path + " row " + std::to_string(row_no) + " column " +
                        std::to_string(c + 1) + ": cannot parse \"" + cell + "\"");
      row[c] = v;
    }
    if (missing) {
      ++dropped;
      continue;
    }
    for (int c = 0; c < n_vars; ++c) {
      double v = row[c];
      if (unit == AngleUnit::degrees) v = v / 180.0 * pi;
      values.push_back(wrap_angle(v));
    }
  }
  if (values.empty()) throw DataError(path + " has no usable rows");

  IngestReport rep;
  rep.rows_dropped = dropped;
  rep.data = AngularDataset::from_angles(std::move(names), std::move(values), unit);
  rep.ranges.resize(n_vars);
  for (int c = 0; c < n_vars; ++c) {
    double lo = rep.data.at(0, c), hi = lo;
    for (long r = 1; r < rep.data.n_obs; ++r) {
      lo = std::min(lo, rep.data.at(r, c));
      hi = std::max(hi, rep.data.at(r, c));
    }
    rep.ranges[c] = {lo, hi};
  }
  return rep;
}

// %.17g per cell: shortest text that reproduces every double exactly.
inline void write_csv(const AngularDataset& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  for (int c = 0; c < d.n_vars; ++c) {
    if (c) out << ',';
    out << d.var_names[c];
  }
  out << '\n';
  char buf[40];
  for (long r = 0; r < d.n_obs; ++r) {
    for (int c = 0; c < d.n_vars; ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", d.at(r, c));
      if (c) out << ',';
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw DataError("failed writing " + path);
}

struct ModelMetadata {
  std::string method;  // "md", "ml", or what produced the file
  std::optional<double> loglik;
  std::optional<long> n_obs;
  std::vector<std::string> var_names;
};

inline constexpr int model_format_version = 1;

inline void save_model(const MnntsParams& p, const ModelMetadata& meta, const std::string& path) {
  p.validate();
  nlohmann::json j;
  j["format_version"] = model_format_version;
  j["dims"] = p.dims.m;
  std::vector<double> re(p.c.size()), im(p.c.size());
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    re[i] = p.c[i].real();
    im[i] = p.c[i].imag();
  }
  j["c_re"] = re;
  j["c_im"] = im;
  j["phase_unfixed"] = p.phase_unfixed;
  nlohmann::json m = nlohmann::json::object();
  if (!meta.method.empty()) m["method"] = meta.method;
  if (meta.loglik) m["loglik"] = *meta.loglik;
  if (meta.n_obs) m["n_obs"] = *meta.n_obs;
  if (!meta.var_names.empty()) m["var_names"] = meta.var_names;
  j["metadata"] = m;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << j.dump(2) << '\n';
  if (!out) throw DataError("failed writing " + path);
}

struct LoadedModel {
  MnntsParams params;
  ModelMetadata meta;
  int format_version = 0;
};

inline LoadedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  LoadedModel out;
  try {
    out.format_version = j.at("format_version").get<int>();
    if (out.format_version != model_format_version)
      throw DataError(path + ": unsupported format version " +
                      std::to_string(out.format_version));
    out.params.dims = DimVector(j.at("dims").get<std::vector<int>>());
    const auto re = j.at("c_re").get<std::vector<double>>();
    const auto im = j.at("c_im").get<std::vector<double>>();
    if (re.size() != im.size()) throw DataError(path + ": c_re and c_im lengths differ");
    out.params.c.resize(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) out.params.c[i] = cplx(re[i], im[i]);
    out.params.phase_unfixed = j.value("phase_unfixed", false);
    if (j.contains("metadata")) {
      const auto& m = j.at("metadata");
      out.meta.method = m.value("method", std::string());
      if (m.contains("loglik")) out.meta.loglik = m.at("loglik").get<double>();
      if (m.contains("n_obs")) out.meta.n_obs = m.at("n_obs").get<long>();
      if (m.contains("var_names"))
        out.meta.var_names = m.at("var_names").get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  } catch (const ArgumentError& e) {
    throw DataError(path + ": " + e.what());
  }
  try {
    out.params.validate();
  } catch (const Error& e) {
    throw DataError(path + ": invalid model: " + e.what());
  }
  return out;
}

}  // namespace nnts
