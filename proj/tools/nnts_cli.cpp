// Part of nnts, nonnegative trigonometric sum distributions on the torus.
// Distributed under the MIT license; see LICENSE for details.
//
// Command-line toolkit. Variable indices on the command line are 1-based;
// angles are radians unless --unit degrees. Exit codes: 0 ok, 2 usage,
// 3 data error, 4 numeric error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nnts/nnts.hpp"

namespace {

using namespace nnts;

double parse_number(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty())
    throw ArgumentError(std::string("cannot parse ") + what + " \"" + s + "\"");
  return v;
}

long parse_integer(const std::string& s, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty())
    throw ArgumentError(std::string("cannot parse ") + what + " \"" + s + "\"");
  return v;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

DimVector parse_dims(const std::string& s, int expect_vars = -1) {
  std::vector<int> orders;
  for (const std::string& part : split_on(s, ',')) {
    long v = parse_integer(part, "term count");
    if (v < 0 || v > 1000) throw ArgumentError("term count out of range in --m");
    orders.push_back(static_cast<int>(v));
  }
  if (expect_vars > 0 && static_cast<int>(orders.size()) == 1 && expect_vars > 1)
    orders.assign(expect_vars, orders[0]);
  DimVector d(orders);
  if (expect_vars > 0 && d.n_vars() != expect_vars)
    throw ArgumentError("--m lists " + std::to_string(d.n_vars()) + " variables, expected " +
                        std::to_string(expect_vars));
  return d;
}

// 1-based on the command line, 0-based inside.
std::vector<int> parse_var_list(const std::string& s, int n_vars, const char* what) {
  std::vector<int> vars;
  for (const std::string& part : split_on(s, ',')) {
    long v = parse_integer(part, what);
    if (v < 1 || v > n_vars)
      throw ArgumentError(std::string(what) + " index " + std::to_string(v) +
                          " out of range 1.." + std::to_string(n_vars));
    vars.push_back(static_cast<int>(v - 1));
  }
  return vars;
}

double to_radians(double v, AngleUnit unit) {
  return unit == AngleUnit::degrees ? v / 180.0 * pi : v;
}

AngleUnit parse_unit(const std::string& s) {
  if (s == "radians") return AngleUnit::radians;
  if (s == "degrees") return AngleUnit::degrees;
  throw ArgumentError("unknown unit \"" + s + "\"");
}

// "2=1.57,3=0.5" -> {var -> angle}, converting per unit.
std::map<int, double> parse_assignments(const std::string& s, int n_vars, AngleUnit unit) {
  std::map<int, double> out;
  for (const std::string& part : split_on(s, ',')) {
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw ArgumentError("expected var=angle, got \"" + part + "\"");
    long v = parse_integer(part.substr(0, eq), "variable");
    if (v < 1 || v > n_vars)
      throw ArgumentError("variable index " + std::to_string(v) + " out of range 1.." +
                          std::to_string(n_vars));
    if (out.count(static_cast<int>(v - 1)))
      throw ArgumentError("variable " + std::to_string(v) + " fixed twice");
    out[static_cast<int>(v - 1)] =
        wrap_angle(to_radians(parse_number(part.substr(eq + 1), "angle"), unit));
  }
  if (out.empty()) throw ArgumentError("no assignments given");
  return out;
}

std::vector<std::string> model_var_names(const LoadedModel& m) {
  const int n = m.params.n_vars();
  if (static_cast<int>(m.meta.var_names.size()) == n) return m.meta.var_names;
  std::vector<std::string> names(n);
  for (int j = 0; j < n; ++j) names[j] = "v" + std::to_string(j + 1);
  return names;
}

struct FitArgs {
  std::string input, m, method = "md", unit = "radians", missing = "NA", output = "model.json";
  int max_iter = 1000;
  double tol = 1e-8;
};

int run_fit(const FitArgs& a) {
  const AngleUnit unit = parse_unit(a.unit);
  IngestReport rep = ingest_csv(a.input, unit, a.missing);
  DimVector dims = parse_dims(a.m, rep.data.n_vars);
  std::printf("read %ld rows x %d vars from %s (%ld dropped for missing cells)\n",
              rep.data.n_obs, rep.data.n_vars, a.input.c_str(), rep.rows_dropped);
  FitReport fit;
  if (a.method == "md") {
    fit = fit_md(rep.data, dims);
  } else if (a.method == "ml") {
    MlOptions mo;
    mo.max_iter = a.max_iter;
    mo.tol = a.tol;
    fit = fit_ml(rep.data, dims, mo);
    std::printf("iterations = %d, converged = %s, grad norm = %.3g\n", fit.iterations,
                fit.converged ? "yes" : "no", fit.grad_norm.value_or(0.0));
  } else {
    throw ArgumentError("unknown method \"" + a.method + "\"");
  }
  std::printf("loglik = %.10f\n", fit.loglik);
  if (fit.underflow_count > 0)
    std::printf("warning: %ld observations at floored density\n", fit.underflow_count);
  ModelMetadata meta;
  meta.method = a.method;
  meta.loglik = fit.loglik;
  meta.n_obs = rep.data.n_obs;
  meta.var_names = rep.data.var_names;
  save_model(fit.params, meta, a.output);
  std::printf("wrote %ld-coefficient model to %s\n", dims.total_length(), a.output.c_str());
  return 0;
}

struct DensityArgs {
  std::string model, vars, fix, unit = "radians", out = "grid.csv";
  int grid = 100;
};

int run_density(const DensityArgs& a) {
  LoadedModel m = load_model(a.model);
  const int n = m.params.n_vars();
  if (a.grid < 2) throw ArgumentError("--grid must be >= 2");
  std::vector<int> vars = parse_var_list(a.vars, n, "--vars");
  if (vars.size() < 1 || vars.size() > 2) throw ArgumentError("--vars takes 1 or 2 variables");
  if (vars.size() == 2 && vars[0] == vars[1]) throw ArgumentError("--vars repeats a variable");

  MnntsParams work = m.params;
  std::vector<int> present(n);  // original index of each variable of `work`
  for (int j = 0; j < n; ++j) present[j] = j;
  if (!a.fix.empty()) {
    std::map<int, double> fixed = parse_assignments(a.fix, n, parse_unit(a.unit));
    for (int v : vars)
      if (fixed.count(v)) throw ArgumentError("--fix overlaps --vars");
    ConditionalSpec spec;
    spec.given = fixed;
    work = conditional(m.params, spec);
    present.clear();
    for (int j = 0; j < n; ++j)
      if (!fixed.count(j)) present.push_back(j);
  }
  // Positions of the requested variables inside `work`, ascending.
  std::vector<int> sorted_vars = vars;
  std::sort(sorted_vars.begin(), sorted_vars.end());
  std::vector<int> keep_pos;
  for (int v : sorted_vars) {
    auto it = std::find(present.begin(), present.end(), v);
    keep_pos.push_back(static_cast<int>(it - present.begin()));
  }
  MarginalMixture mix = marginal(work, keep_pos);

  const std::vector<std::string> names = model_var_names(m);
  std::ofstream out(a.out, std::ios::binary);
  if (!out) throw DataError("cannot write " + a.out);
  char buf[40];
  auto put = [&](double v, bool last) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << (last ? '\n' : ',');
  };
  const double step = two_pi / a.grid;
  if (vars.size() == 1) {
    out << names[vars[0]] << ",density\n";
    for (int i = 0; i < a.grid; ++i) {
      const double t = step * i;
      put(t, false);
      put(mixture_density(mix, AnglePoint({t})), true);
    }
  } else {
    out << names[vars[0]] << ',' << names[vars[1]] << ",density\n";
    const bool swapped = vars[0] > vars[1];  // mixture point order is ascending
    for (int i = 0; i < a.grid; ++i) {
      for (int j = 0; j < a.grid; ++j) {
        const double t1 = step * i;
        const double t2 = step * j;
        put(t1, false);
        put(t2, false);
        const AnglePoint x(swapped ? std::vector<double>{t2, t1} : std::vector<double>{t1, t2});
        put(mixture_density(mix, x), true);
      }
    }
  }
  if (!out) throw DataError("failed writing " + a.out);
  std::string shape = std::to_string(a.grid);
  if (vars.size() == 2) shape += "x" + std::to_string(a.grid);
  std::printf("wrote %s grid of %s to %s\n", shape.c_str(),
              a.fix.empty() ? "the marginal density" : "the conditional density", a.out.c_str());
  return 0;
}

struct MarginalArgs {
  std::string model, keep, prefix = "marginal";
  bool table = false;
  double truncate = -1.0;
};

int run_marginal(const MarginalArgs& a) {
  LoadedModel m = load_model(a.model);
  const int n = m.params.n_vars();
  const std::vector<std::string> names = model_var_names(m);
  if (a.table) {
    std::vector<int> vars;
    if (a.keep.empty())
      for (int j = 0; j < n; ++j) vars.push_back(j);
    else
      vars = parse_var_list(a.keep, n, "--keep");
    std::vector<std::vector<double>> cols;
    std::size_t height = 0;
    for (int v : vars) {
      MarginalMixture mix = marginal(m.params, std::vector<int>{v}, a.truncate);
      cols.push_back(mix.probs);
      height = std::max(height, mix.probs.size());
    }
    for (std::size_t j = 0; j < vars.size(); ++j)
      std::printf("%s%8s", j ? "  " : "", names[vars[j]].c_str());
    std::printf("\n");
    for (std::size_t r = 0; r < height; ++r) {
      for (std::size_t j = 0; j < vars.size(); ++j)
        if (r < cols[j].size())
          std::printf("%s%8.4f", j ? "  " : "", cols[j][r]);
        else
          std::printf("%s%8s", j ? "  " : "", "");
      std::printf("\n");
    }
    for (std::size_t j = 0; j < vars.size(); ++j) {
      double s = 0.0;
      for (double q : cols[j]) s += q;
      std::printf("%s%8.4f", j ? "  " : "", s);
    }
    std::printf("  (column sums)\n");
    return 0;
  }

  if (a.keep.empty()) throw ArgumentError("--keep is required (or use --table)");
  std::vector<int> keep = parse_var_list(a.keep, n, "--keep");
  MarginalMixture mix = marginal(m.params, keep, a.truncate);
  std::sort(keep.begin(), keep.end());
  std::string label;
  for (std::size_t j = 0; j < keep.size(); ++j) label += (j ? "," : "") + names[keep[j]];
  std::printf("marginal of {%s}: %zu components\n", label.c_str(), mix.probs.size());
  double total = 0.0;
  for (std::size_t k = 0; k < mix.probs.size(); ++k) {
    total += mix.probs[k];
    std::printf("p[%zu] = %.6f\n", k, mix.probs[k]);
  }
  std::printf("sum = %.6f\n", total);
  std::vector<std::string> keep_names;
  for (int v : keep) keep_names.push_back(names[v]);
  for (std::size_t k = 0; k < mix.components.size(); ++k) {
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "_component_%02zu.json", k);
    ModelMetadata meta;
    meta.method = "marginal-component";
    meta.var_names = keep_names;
    save_model(mix.components[k], meta, a.prefix + suffix);
  }
  std::printf("wrote %zu component files with prefix %s\n", mix.components.size(),
              a.prefix.c_str());
  return 0;
}

struct ConditionalArgs {
  std::string model, given, unit = "radians", output = "conditional.json";
};

int run_conditional(const ConditionalArgs& a) {
  LoadedModel m = load_model(a.model);
  const int n = m.params.n_vars();
  ConditionalSpec spec;
  spec.given = parse_assignments(a.given, n, parse_unit(a.unit));
  MnntsParams cond = conditional(m.params, spec);
  const std::vector<std::string> names = model_var_names(m);
  std::vector<std::string> free_names;
  for (int j = 0; j < n; ++j)
    if (!spec.given.count(j)) free_names.push_back(names[j]);
  ModelMetadata meta;
  meta.method = "conditional";
  meta.var_names = free_names;
  save_model(cond, meta, a.output);
  std::string label;
  for (std::size_t j = 0; j < free_names.size(); ++j) label += (j ? "," : "") + free_names[j];
  std::printf("wrote conditional over {%s} (%ld coefficients) to %s\n", label.c_str(),
              cond.dims.total_length(), a.output.c_str());
  return 0;
}

struct IndepArgs {
  std::string model, input, m, split, method = "ml", unit = "radians", missing = "NA";
  int max_iter = 1000;
  double tol = 1e-8;
};

std::pair<std::vector<int>, std::vector<int>> parse_split(const std::string& s, int n) {
  std::vector<std::string> halves = split_on(s, '|');
  if (halves.size() != 2) throw ArgumentError("--split must look like i,j|k,l");
  return {parse_var_list(halves[0], n, "--split"), parse_var_list(halves[1], n, "--split")};
}

int run_indep(const IndepArgs& a) {
  if (a.model.empty() == a.input.empty())
    throw ArgumentError("give exactly one of --model or --input");
  if (!a.model.empty()) {
    LoadedModel m = load_model(a.model);
    auto [sa, sb] = parse_split(a.split, m.params.n_vars());
    const double score = independence_score(m.params, sa, sb);
    std::printf("independence score (top mixing probability) for %s: %.6f\n", a.split.c_str(),
                score);
    return 0;
  }
  if (a.m.empty()) throw ArgumentError("--input mode needs --m");
  IngestReport rep = ingest_csv(a.input, parse_unit(a.unit), a.missing);
  DimVector dims = parse_dims(a.m, rep.data.n_vars);
  auto [sa, sb] = parse_split(a.split, dims.n_vars());
  LrTestOptions opts;
  opts.estimator = a.method == "md" ? Estimator::md : Estimator::ml;
  if (a.method != "md" && a.method != "ml")
    throw ArgumentError("unknown method \"" + a.method + "\"");
  opts.max_iter = a.max_iter;
  opts.tol = a.tol;
  IndependenceTestResult res = lr_test(rep.data, dims, sa, sb, opts);
  std::printf("LR statistic = %.6g  df = %d  p-value = %.6g%s%s\n", res.lr_statistic, res.df,
              res.p_value, res.approximate ? "  [approximate: md fits]" : "",
              res.clipped ? "  [clipped]" : "");
  return 0;
}

struct SampleArgs {
  std::string model, out = "samples.csv";
  long count = 0;
  std::uint64_t seed = 1;
};

int run_sample(const SampleArgs& a) {
  LoadedModel m = load_model(a.model);
  RngState rng(a.seed);
  AngularDataset data = sample(m.params, rng, a.count);
  data.var_names = model_var_names(m);
  write_csv(data, a.out);
  std::printf("wrote %ld samples x %d vars to %s (seed %llu)\n", data.n_obs, data.n_vars,
              a.out.c_str(), static_cast<unsigned long long>(a.seed));
  return 0;
}

struct SummaryArgs {
  std::string input, unit = "radians", missing = "NA";
};

int run_summary(const SummaryArgs& a) {
  IngestReport rep = ingest_csv(a.input, parse_unit(a.unit), a.missing);
  const AngularDataset& d = rep.data;
  std::printf("%ld rows x %d vars (%ld dropped)\n", d.n_obs, d.n_vars, rep.rows_dropped);
  std::printf("%-12s %8s %8s %8s %8s %8s\n", "variable", "mean", "R", "median", "q1", "q3");
  for (int c = 0; c < d.n_vars; ++c) {
    std::vector<double> col = d.column(c);
    CircularSummary s = circular_summary(col);
    std::printf("%-12s %8.4f %8.4f %8.4f %8.4f %8.4f\n", d.var_names[c].c_str(),
                s.mean_direction, s.resultant_length, s.median, s.q1, s.q3);
  }
  if (d.n_vars > 1) {
    std::printf("\ncircular correlations (upper triangle)\n%-12s", "");
    for (int c = 1; c < d.n_vars; ++c) std::printf(" %8s", d.var_names[c].c_str());
    std::printf("\n");
    for (int r = 0; r + 1 < d.n_vars; ++r) {
      std::printf("%-12s", d.var_names[r].c_str());
      for (int c = 1; c < d.n_vars; ++c) {
        if (c <= r) {
          std::printf(" %8s", "");
        } else {
          const double rho = circular_correlation(d.column(r), d.column(c));
          std::printf(" %8.2f", rho);
        }
      }
      std::printf("\n");
    }
  }
  return 0;
}

struct SynthArgs {
  std::string m = "3", out = "synthetic.csv", model_out;
  int vars = 7;
  long rows = 2017;
  std::uint64_t seed = 1;
};

int run_synth(const SynthArgs& a) {
  if (a.vars < 1) throw ArgumentError("--vars must be >= 1");
  if (a.rows < 1) throw ArgumentError("--rows must be >= 1");
  DimVector dims = parse_dims(a.m, a.vars);
  RngState rng(a.seed);
  MnntsParams model = random_params(dims, rng);
  AngularDataset data = sample(model, rng, a.rows);
  write_csv(data, a.out);
  std::printf("wrote %ld rows x %d vars to %s (seed %llu)\n", data.n_obs, data.n_vars,
              a.out.c_str(), static_cast<unsigned long long>(a.seed));
  if (!a.model_out.empty()) {
    ModelMetadata meta;
    meta.method = "synthetic";
    meta.var_names = data.var_names;
    save_model(model, meta, a.model_out);
    std::printf("wrote generator model to %s\n", a.model_out.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonnegative trigonometric sum distributions on the torus"};
  app.require_subcommand(1);

  FitArgs fit;
  CLI::App* c_fit = app.add_subcommand("fit", "fit a model to a CSV of angles");
  c_fit->add_option("--input", fit.input, "input CSV")->required();
  c_fit->add_option("--m", fit.m, "terms per variable, e.g. 3,3,3 (one value broadcasts)")
      ->required();
  c_fit->add_option("--method", fit.method, "md or ml (default md)");
  c_fit->add_option("--unit", fit.unit, "radians or degrees (default radians)");
  c_fit->add_option("--missing", fit.missing, "missing-cell token (default NA)");
  c_fit->add_option("--output", fit.output, "model file to write (default model.json)");
  c_fit->add_option("--max-iter", fit.max_iter, "ml iteration cap (default 1000)");
  c_fit->add_option("--tol", fit.tol, "ml gradient tolerance (default 1e-8)");

  DensityArgs den;
  CLI::App* c_den = app.add_subcommand("density", "evaluate a density grid to CSV");
  c_den->add_option("--model", den.model, "model file")->required();
  c_den->add_option("--vars", den.vars, "1 or 2 variables to keep, 1-based, e.g. 1,3")->required();
  c_den->add_option("--grid", den.grid, "points per axis (default 100)");
  c_den->add_option("--fix", den.fix, "condition on var=angle,... (others marginalized)");
  c_den->add_option("--unit", den.unit, "unit of --fix angles (default radians)");
  c_den->add_option("--out", den.out, "output CSV (default grid.csv)");

  MarginalArgs mar;
  CLI::App* c_mar = app.add_subcommand("marginal", "marginal mixture of a variable subset");
  c_mar->add_option("--model", mar.model, "model file")->required();
  c_mar->add_option("--keep", mar.keep, "variables to keep, 1-based, e.g. 1,3");
  c_mar->add_flag("--table", mar.table, "tabulate singleton mixing probabilities per variable");
  c_mar->add_option("--truncate", mar.truncate, "drop components below this probability");
  c_mar->add_option("--out-prefix", mar.prefix, "component file prefix (default marginal)");

  ConditionalArgs con;
  CLI::App* c_con = app.add_subcommand("conditional", "condition a model on fixed angles");
  c_con->add_option("--model", con.model, "model file")->required();
  c_con->add_option("--given", con.given, "var=angle,... (1-based)")->required();
  c_con->add_option("--unit", con.unit, "unit of the angles (default radians)");
  c_con->add_option("--output", con.output, "model file to write (default conditional.json)");

  IndepArgs ind;
  CLI::App* c_ind = app.add_subcommand("indep", "independence score or likelihood-ratio test");
  c_ind->add_option("--model", ind.model, "model file (score mode)");
  c_ind->add_option("--input", ind.input, "data CSV (test mode)");
  c_ind->add_option("--m", ind.m, "terms per variable (test mode)");
  c_ind->add_option("--split", ind.split, "partition, e.g. 1,2|3 (1-based)")->required();
  c_ind->add_option("--method", ind.method, "md or ml (default ml)");
  c_ind->add_option("--unit", ind.unit, "radians or degrees (default radians)");
  c_ind->add_option("--missing", ind.missing, "missing-cell token (default NA)");
  c_ind->add_option("--max-iter", ind.max_iter, "ml iteration cap (default 1000)");
  c_ind->add_option("--tol", ind.tol, "ml gradient tolerance (default 1e-8)");

  SampleArgs smp;
  CLI::App* c_smp = app.add_subcommand("sample", "draw deterministic samples from a model");
  c_smp->add_option("--model", smp.model, "model file")->required();
  c_smp->add_option("-n,--count", smp.count, "number of samples")->required();
  c_smp->add_option("--seed", smp.seed, "generator seed (default 1)");
  c_smp->add_option("--out", smp.out, "output CSV (default samples.csv)");

  SummaryArgs sum;
  CLI::App* c_sum = app.add_subcommand("summary", "circular summaries and correlations of a CSV");
  c_sum->add_option("--input", sum.input, "input CSV")->required();
  c_sum->add_option("--unit", sum.unit, "radians or degrees (default radians)");
  c_sum->add_option("--missing", sum.missing, "missing-cell token (default NA)");

  SynthArgs syn;
  CLI::App* c_syn = app.add_subcommand("synth", "generate a synthetic dataset from a random model");
  c_syn->add_option("--vars", syn.vars, "number of variables (default 7)");
  c_syn->add_option("--m", syn.m, "terms per variable (default 3, broadcast)");
  c_syn->add_option("--rows", syn.rows, "number of rows (default 2017)");
  c_syn->add_option("--seed", syn.seed, "generator seed (default 1)");
  c_syn->add_option("--out", syn.out, "output CSV (default synthetic.csv)");
  c_syn->add_option("--model-out", syn.model_out, "also write the generator model here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_fit)) return run_fit(fit);
    if (app.got_subcommand(c_den)) return run_density(den);
    if (app.got_subcommand(c_mar)) return run_marginal(mar);
    if (app.got_subcommand(c_con)) return run_conditional(con);
    if (app.got_subcommand(c_ind)) return run_indep(ind);
    if (app.got_subcommand(c_smp)) return run_sample(smp);
    if (app.got_subcommand(c_sum)) return run_summary(sum);
    if (app.got_subcommand(c_syn)) return run_synth(syn);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
