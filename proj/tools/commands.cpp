#include "commands.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "experiments.hpp"
#include "fdez/error.hpp"
#include "fdez/gof.hpp"
#include "fdez/wishart.hpp"
#include "io.hpp"

namespace fdez::cli {

namespace {

using gof::format_double;

struct KernelFlags {
  std::string kernel, ar, ma;

  void add(CLI::App& cmd) {
    cmd.add_option("--kernel", kernel, "kernel file (MA block, or AR and MA blocks)");
    cmd.add_option("--ar", ar, "AR kernel file (one block)");
    cmd.add_option("--ma", ma, "MA kernel file (one block)");
  }
  bool given() const { return !kernel.empty() || !ar.empty() || !ma.empty(); }

  KernelSpec load() const {
    if (!kernel.empty()) {
      if (!ar.empty() || !ma.empty()) throw ParseError("--kernel excludes --ar and --ma");
      return read_kernel_file(kernel);
    }
    if (ma.empty()) throw ParseError("a kernel is required: --kernel FILE or --ma FILE [--ar FILE]");
    if (ar.empty()) {
      auto spec = read_kernel_file(ma);
      if (spec.is_arma()) throw ParseError("--ma takes a single block");
      return spec;
    }
    return read_kernel_pair(ar, ma);
  }
};

void add_shape(CLI::App& cmd, arma2d::DataShape& shape) {
  cmd.add_option("--height", shape.height, "image height H")->check(CLI::PositiveNumber);
  cmd.add_option("--width", shape.width, "image width W")->check(CLI::PositiveNumber);
  cmd.add_option("--batch", shape.batch, "batch size N")->check(CLI::PositiveNumber);
}

void add_model_knobs(CLI::App& cmd, CommonConfig& c) {
  cmd.add_option("--max-order", c.max_order, "MA truncation order for ARMA kernels")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--grid", c.reversibility.grid, "reversibility grid resolution")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--tol", c.reversibility.tol, "reversibility tolerance")->check(CLI::NonNegativeNumber);
}

void add_experiment(CLI::App& cmd, CommonConfig& c, std::string& out_path) {
  add_shape(cmd, c.shape);
  add_model_knobs(cmd, c);
  cmd.add_option("--seed", c.seed, "master seed");
  cmd.add_option("--critical", c.critical, "critical value for |z2|")->check(CLI::PositiveNumber);
  cmd.add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  cmd.add_option("--out", out_path, "output CSV (default stdout)");
}

// Writes to `path` when given, otherwise to `fallback`.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write " + path);
  write(f);
  if (!f) throw ParseError("error writing " + path);
}

int cmd_moments(const KernelFlags& k, const CommonConfig& c, std::ostream& out) {
  const auto b = resolve_ma(k.load(), c.max_order, c.reversibility);
  const auto s = gof::model_statistics(b, c.shape);
  out << "lambda = " << format_double(s.lambda) << '\n';
  for (int i = 1; i <= 4; ++i) out << 'm' << i << " = " << format_double(s.moments.m(i)) << '\n';
  out << "mu_box_1 = " << format_double(s.mu_box[0]) << '\n';
  out << "mu_box_2 = " << format_double(s.mu_box[1]) << '\n';
  out << "var_box_1 = " << format_double(s.var_box[0]) << '\n';
  out << "var_box_2 = " << format_double(s.var_box[1]) << '\n';
  out << "R = " << format_double(s.R) << '\n';
  out << "bound = " << format_double(s.bound) << '\n';
  return kExitOk;
}

int cmd_test(const KernelFlags& k, const std::string& data, const CommonConfig& c,
             const std::string& out_path, std::ostream& out) {
  if (data.empty()) throw ParseError("--data FILE is required");
  const auto b = resolve_ma(k.load(), c.max_order, c.reversibility);
  const Eigen::MatrixXd X = read_data_csv(data);
  const auto report = gof::run_test(X, b, c.shape, c.critical);
  out << gof::to_key_value(report);
  if (!out_path.empty())
    emit(out_path, out, [&](std::ostream& os) { os << gof::csv_header() << '\n' << gof::to_csv_row(report) << '\n'; });
  return report.decision == gof::Decision::reject ? kExitReject : kExitOk;
}

int cmd_sample(const KernelFlags& k, const CommonConfig& c, double scale, const std::string& out_path,
               std::ostream& out) {
  const auto b = resolve_ma(k.load(), c.max_order, c.reversibility);
  wishart::RngStream rng(c.seed, 0);
  const Eigen::MatrixXd X = scale * arma2d::sample_ma_data(b, c.shape, rng);
  emit(out_path, out, [&](std::ostream& os) { write_data_csv(os, X); });
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"FDE Z-score goodness-of-fit tests for 2D ARMA models", "fdez"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  KernelFlags kernel;
  CommonConfig common;
  std::string data, out_path, random_text;
  double scale = 1.0;

  auto* moments = app.add_subcommand("moments", "print lambda, m1..m4, FDE means/variances, R and its bound");
  kernel.add(*moments);
  add_shape(*moments, common.shape);
  add_model_knobs(*moments, common);

  auto* test = app.add_subcommand("test", "test a data CSV against a kernel (exit 0 accept, 1 reject)");
  kernel.add(*test);
  test->add_option("--data", data, "data CSV: H*W rows, N columns");
  add_shape(*test, common.shape);
  add_model_knobs(*test, common);
  test->add_option("--critical", common.critical, "critical value for |z2|")->check(CLI::PositiveNumber);
  test->add_option("--out", out_path, "also write the report as a CSV row");

  auto* sample = app.add_subcommand("sample", "draw one batch of data from a kernel as CSV");
  kernel.add(*sample);
  add_shape(*sample, common.shape);
  add_model_knobs(*sample, common);
  sample->add_option("--seed", common.seed, "seed");
  sample->add_option("--scale", scale, "multiply the data by this factor");
  sample->add_option("--out", out_path, "output CSV (default stdout)");

  HistogramConfig hist;
  auto* histogram = app.add_subcommand("histogram", "z2 over repeated realizations of one model");
  kernel.add(*histogram);
  add_experiment(*histogram, common, out_path);
  histogram->add_option("--runs", hist.runs, "number of realizations")->check(CLI::NonNegativeNumber);
  histogram->add_option("--random", random_text, "random model: ma:q1,q2 or arma:p1,p2,q1,q2 (default ma:3,3)");

  PairsConfig pairs_cfg;
  auto* pairs = app.add_subcommand("pairs", "test data from one random model against another");
  add_experiment(*pairs, common, out_path);
  pairs->add_option("--pairs", pairs_cfg.pairs, "number of model pairs")->check(CLI::NonNegativeNumber);
  pairs->add_option("--max-ar", pairs_cfg.max_ar, "largest AR kernel side")->check(CLI::PositiveNumber);
  pairs->add_option("--max-ma", pairs_cfg.max_ma, "largest MA kernel side")->check(CLI::PositiveNumber);

  // pairs runs at a larger batch unless --batch is given.
  const arma2d::DataShape pairs_shape = pairs_cfg.common.shape;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*moments) return cmd_moments(kernel, common, out);
    if (*test) return cmd_test(kernel, data, common, out_path, out);
    if (*sample) return cmd_sample(kernel, common, scale, out_path, out);
    if (*histogram) {
      hist.common = common;
      if (kernel.given()) {
        if (!random_text.empty()) throw ParseError("--random excludes kernel files");
        hist.kernel = kernel.load();
      } else if (!random_text.empty()) {
        hist.random = RandomModelSpec::parse(random_text);
      }
      const auto result = run_histogram(hist);
      emit(out_path, out, [&](std::ostream& os) { write_histogram_csv(os, hist, result); });
      return kExitOk;
    }
    if (*pairs) {
      pairs_cfg.common = common;
      if (pairs->count("--batch") == 0) pairs_cfg.common.shape.batch = pairs_shape.batch;
      const auto result = run_pairs(pairs_cfg);
      emit(out_path, out, [&](std::ostream& os) { write_pairs_csv(os, pairs_cfg, result); });
      return kExitOk;
    }
  } catch (const NonReversibleError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNonReversible;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDimension;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  return kExitParse;
}

}  // namespace fdez::cli
