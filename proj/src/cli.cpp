#include "corrbiplot/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "corrbiplot/biplot.hpp"
#include "corrbiplot/classic.hpp"
#include "corrbiplot/corrdata.hpp"
#include "corrbiplot/fitstats.hpp"
#include "corrbiplot/svg.hpp"
#include "corrbiplot/wals.hpp"

namespace corrbiplot::cli {

namespace {

using nlohmann::ordered_json;

int printed_decimals() {
  if (const char* env = std::getenv("CORRBIPLOT_PRECISION")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 0 && v <= 17) return static_cast<int>(v);
  }
  return 4;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

struct RunSpec {
  std::string data;      // builtin name
  std::string csv;       // correlation CSV path
  std::string from_raw;  // raw data CSV path
  std::string method = "wals-q-sym";
  std::size_t rank = 2;
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::string out;
};

Matrix parse_numeric_csv(std::istream& in, std::vector<std::string>& labels) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::io_error, "empty data file");
  std::vector<std::vector<double>> rows;
  labels.clear();
  {
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) labels.push_back(cell);
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(Errc::io_error, "non-numeric cell '" + cell + "' in data file");
      }
    }
    if (row.size() != labels.size())
      throw Error(Errc::io_error, "ragged row in data file");
    rows.push_back(std::move(row));
  }
  Matrix m(rows.size(), labels.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < labels.size(); ++j) m(i, j) = rows[i][j];
  return m;
}

CorrelationMatrix load_input(const RunSpec& spec) {
  const int sources = !spec.data.empty() + !spec.csv.empty() + !spec.from_raw.empty();
  if (sources != 1)
    throw Error(Errc::invalid_argument, "give exactly one of --data, --csv, --from-raw");
  if (!spec.data.empty()) return builtin_dataset(spec.data);
  const std::string& path = spec.csv.empty() ? spec.from_raw : spec.csv;
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path);
  if (!spec.csv.empty()) return parse_correlation_csv(in);
  std::vector<std::string> labels;
  Matrix data = parse_numeric_csv(in, labels);
  return correlation_from_data(data, labels);
}

Fit run_fit(const CorrelationMatrix& r, const RunSpec& spec) {
  const auto method = method_from_name(spec.method);
  if (!method) throw Error(Errc::invalid_argument, "unknown method " + spec.method);
  if (spec.rank < 1) throw Error(Errc::invalid_argument, "rank must be at least 1");

  switch (*method) {
    case Method::pca: return pca_fit(r, spec.rank);
    case Method::svd_overall: return svd_fit(r, spec.rank, CenterMode::overall);
    case Method::svd_column: return svd_fit(r, spec.rank, CenterMode::column);
    case Method::svd_double: return svd_fit(r, spec.rank, CenterMode::double_centered);
    case Method::pfa:
      return pfa_fit(r, spec.rank, spec.tol.value_or(1e-8), spec.max_iter.value_or(1000));
    default: break;
  }

  WalsConfig cfg;
  cfg.rank = spec.rank;
  switch (*method) {
    case Method::wals_null: cfg.mode = WalsMode::null_mode; break;
    case Method::wals_delta: cfg.mode = WalsMode::delta; break;
    case Method::wals_q_sym: cfg.mode = WalsMode::q_sym; break;
    case Method::wals_q: cfg.mode = WalsMode::q; break;
    default: cfg.mode = WalsMode::p_q; break;
  }
  if (spec.tol) {
    switch (cfg.mode) {
      case WalsMode::null_mode: cfg.inner_rel_tol = *spec.tol; break;
      case WalsMode::delta: cfg.delta_abs_tol = *spec.tol; break;
      case WalsMode::q_sym: cfg.outer_rel_tol = *spec.tol; break;
      default: cfg.ab_abs_tol = *spec.tol; break;
    }
  }
  if (spec.max_iter) {
    cfg.max_inner = *spec.max_iter;
    cfg.max_cycles = *spec.max_iter;
    cfg.max_outer = *spec.max_iter;
  }
  return wals_fit(r, offdiag_weights(r.size()), cfg);
}

ordered_json report_json(const Fit& fit) {
  const FitReport rep = make_report(fit);
  ordered_json j;
  j["method"] = method_name(fit.method);
  j["rank"] = fit.rank;
  j["labels"] = fit.labels;
  j["delta"] = fit.delta;
  j["q"] = fit.q;
  j["p"] = fit.prow;
  std::vector<double> g(fit.g.rows() * fit.g.cols());
  for (std::size_t i = 0; i < fit.g.rows(); ++i)
    for (std::size_t k = 0; k < fit.g.cols(); ++k) g[i * fit.g.cols() + k] = fit.g(i, k);
  j["G"] = g;
  if (fit.b) {
    std::vector<double> b(fit.b->rows() * fit.b->cols());
    for (std::size_t i = 0; i < fit.b->rows(); ++i)
      for (std::size_t k = 0; k < fit.b->cols(); ++k) b[i * fit.b->cols() + k] = (*fit.b)(i, k);
    j["B"] = b;
  }
  j["overall_rmse"] = rep.overall_rmse;
  j["per_variable_rmse"] = rep.per_variable;
  j["diagonal_included"] = rep.diagonal_included;
  j["converged"] = fit.converged;
  j["iterations"] = fit.iterations;
  j["loss_trace_length"] = fit.loss_trace.size();
  return j;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::io_error, "cannot write " + path);
  file << text;
}

int cmd_fit(const RunSpec& spec, std::ostream& out) {
  const CorrelationMatrix r = load_input(spec);
  const Fit fit = run_fit(r, spec);
  write_output(spec.out, report_json(fit).dump(2) + "\n", out);
  return fit.converged ? 0 : 2;
}

const std::vector<std::string> kTableMethods = {
    "pca",       "svd-o",      "svd-c",      "svd-dc", "pfa",
    "wals-null", "wals-delta", "wals-q-sym", "wals-q", "wals-p-q"};

int cmd_table(RunSpec spec, const std::vector<std::string>& datasets,
              const std::vector<std::string>& methods, bool per_variable, std::ostream& out) {
  if (methods.empty()) throw Error(Errc::invalid_argument, "no methods given");
  if (datasets.empty()) throw Error(Errc::invalid_argument, "no datasets given");
  const int decimals = printed_decimals();
  std::ostringstream text;

  if (!per_variable) {
    text << "method";
    for (const auto& d : datasets) text << "," << d;
    text << "\n";
    for (const auto& m : methods) {
      text << m;
      for (const auto& d : datasets) {
        spec.data = d;
        spec.method = m;
        const Fit fit = run_fit(builtin_dataset(d), spec);
        text << "," << fixed(make_report(fit).overall_rmse, decimals);
      }
      text << "\n";
    }
  } else {
    for (const auto& d : datasets) {
      const CorrelationMatrix r = builtin_dataset(d);
      text << d << ",";
      for (std::size_t j = 0; j < r.size(); ++j)
        text << r.labels[j] << (j + 1 < r.size() ? "," : "\n");
      for (const auto& m : methods) {
        spec.data = d;
        spec.method = m;
        const FitReport rep = make_report(run_fit(r, spec));
        text << m;
        for (double z : rep.per_variable) text << "," << fixed(z, decimals);
        text << "\n";
      }
    }
  }

  write_output(spec.out, text.str(), out);
  return 0;
}

StickSpec parse_stick(const std::string& raw) {
  std::stringstream ss(raw);
  std::string name, lo, hi, step;
  if (!std::getline(ss, name, ':') || !std::getline(ss, lo, ':') || !std::getline(ss, hi, ':') ||
      !std::getline(ss, step))
    throw Error(Errc::invalid_argument, "--stick expects NAME:LO:HI:STEP");
  StickSpec s;
  s.label = name;
  try {
    s.lo = std::stod(lo);
    s.hi = std::stod(hi);
    s.step = std::stod(step);
  } catch (const std::exception&) {
    throw Error(Errc::invalid_argument, "--stick expects numeric LO:HI:STEP");
  }
  return s;
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& raw) {
  std::stringstream ss(raw);
  std::string a, b;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b))
    throw Error(Errc::invalid_argument, "--dims expects A:B (1-based)");
  long da = 0, db = 0;
  try {
    da = std::stol(a);
    db = std::stol(b);
  } catch (const std::exception&) {
    throw Error(Errc::invalid_argument, "--dims expects numeric A:B");
  }
  if (da < 1 || db < 1) throw Error(Errc::invalid_argument, "--dims are 1-based");
  return {static_cast<std::size_t>(da - 1), static_cast<std::size_t>(db - 1)};
}

int cmd_biplot(const RunSpec& spec, const SceneOptions& options, std::ostream& out) {
  const CorrelationMatrix r = load_input(spec);
  const Fit fit = run_fit(r, spec);
  BiplotScene scene = make_scene(fit, options);
  SvgOptions svg;
  svg.title = scene.method + " biplot, RMSE = " + fixed(scene.rmse, printed_decimals());
  write_output(spec.out, render_svg(scene, svg), out);
  return fit.converged ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"low-rank correlation approximation and calibrated biplots"};
  app.require_subcommand(1);

  RunSpec spec;
  double tol = 0.0;
  std::size_t max_iter = 0;
  std::vector<std::string> sticks;
  std::string dims = "1:2";
  std::vector<std::string> datasets = {"goblets", "milk", "beans10"};
  std::vector<std::string> methods = kTableMethods;
  bool per_variable = false;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--data", spec.data, "built-in dataset name");
    cmd->add_option("--csv", spec.csv, "correlation matrix CSV path");
    cmd->add_option("--from-raw", spec.from_raw, "raw data CSV path (correlations computed)");
    cmd->add_option("--out", spec.out, "output path (default: standard output)");
  };
  auto add_fit_opts = [&](CLI::App* cmd) {
    cmd->add_option("--method", spec.method, "approximation method")->capture_default_str();
    cmd->add_option("--rank", spec.rank, "number of factors")->capture_default_str();
    auto* t = cmd->add_option("--tol", tol, "stopping tolerance of the chosen method");
    auto* mi = cmd->add_option("--max-iter", max_iter, "iteration cap");
    cmd->callback([&, t, mi] {
      if (t->count()) spec.tol = tol;
      if (mi->count()) spec.max_iter = max_iter;
    });
  };

  CLI::App* fit_cmd = app.add_subcommand("fit", "fit one method and print a JSON report");
  add_input(fit_cmd);
  add_fit_opts(fit_cmd);

  CLI::App* table_cmd =
      app.add_subcommand("table", "goodness-of-fit grid over datasets and methods");
  table_cmd->add_option("--data", datasets, "built-in datasets (columns)");
  table_cmd->add_option("--method", methods, "methods (rows)");
  table_cmd->add_option("--out", spec.out, "output path (default: standard output)");
  table_cmd->add_flag("--per-variable", per_variable, "per-variable RMSE blocks");

  CLI::App* biplot_cmd = app.add_subcommand("biplot", "render the fit as an SVG biplot");
  add_input(biplot_cmd);
  add_fit_opts(biplot_cmd);
  biplot_cmd->add_option("--stick", sticks, "custom tally stick NAME:LO:HI:STEP");
  biplot_cmd->add_option("--dims", dims, "display dimensions A:B (1-based)")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (fit_cmd->parsed()) return cmd_fit(spec, out);
    if (table_cmd->parsed()) return cmd_table(spec, datasets, methods, per_variable, out);
    SceneOptions options;
    options.dims = parse_dims(dims);
    for (const auto& s : sticks) options.sticks.push_back(parse_stick(s));
    return cmd_biplot(spec, options, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace corrbiplot::cli
