#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "fdez/wishart.hpp"

#ifndef FDEZ_VERSION
#define FDEZ_VERSION "0.0.0"
#endif

namespace fdez::cli {

using gof::format_double;
using wishart::RngStream;

std::string version_string() { return FDEZ_VERSION; }

RandomModelSpec RandomModelSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("random model must look like ma:3,3");
  const auto kind = text.substr(0, colon);
  std::vector<int> sizes;
  std::stringstream ss(text.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size() || v < 1) throw ParseError("");
      sizes.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad kernel size '" + tok + "' in random model");
    }
  }
  RandomModelSpec spec;
  if (kind == "ma" && sizes.size() == 2) {
    spec.q1 = sizes[0];
    spec.q2 = sizes[1];
  } else if (kind == "arma" && sizes.size() == 4) {
    spec.arma = true;
    spec.p1 = sizes[0];
    spec.p2 = sizes[1];
    spec.q1 = sizes[2];
    spec.q2 = sizes[3];
  } else {
    throw ParseError("random model must be ma:q1,q2 or arma:p1,p2,q1,q2");
  }
  return spec;
}

std::string RandomModelSpec::to_string() const {
  std::ostringstream os;
  if (arma)
    os << "arma:" << p1 << ',' << p2 << ',' << q1 << ',' << q2;
  else
    os << "ma:" << q1 << ',' << q2;
  return os.str();
}

void parallel_for(int count, int threads, const std::function<void(int)>& task) {
  if (count <= 0) return;
  threads = std::clamp(threads, 1, count);
  if (threads == 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

Eigen::MatrixXd uniform_matrix(RngStream& rng, int rows, int cols) {
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
  return m;
}

// Redraws the AR entries (a11 = 1) until the reversibility check accepts.
Eigen::MatrixXd draw_reversible_ar(RngStream& rng, int p1, int p2,
                                   const ReversibilityOptions& rev, int& rejections) {
  while (true) {
    Eigen::MatrixXd a = uniform_matrix(rng, p1, p2);
    a(0, 0) = 1.0;
    if (a.size() == 1 || arma2d::is_reversible(a, rev.grid, rev.tol)) return a;
    ++rejections;
  }
}

void finish_model(Model& m, int max_order) {
  if (m.trivial_ar()) {
    m.g = m.ma;
  } else {
    m.g = arma2d::arma_to_ma(arma2d::ARMAKernelPair(m.ar, m.ma), max_order, max_order);
  }
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

void write_common(std::ostream& os, const char* command, const CommonConfig& c) {
  os << "# fdez " << version_string() << '\n';
  os << "# command = " << command << '\n';
  os << "# seed = " << c.seed << '\n';
  os << "# height = " << c.shape.height << '\n';
  os << "# width = " << c.shape.width << '\n';
  os << "# batch = " << c.shape.batch << '\n';
  os << "# critical = " << format_double(c.critical) << '\n';
  os << "# max_order = " << c.max_order << '\n';
  os << "# grid = " << c.reversibility.grid << '\n';
  os << "# tol = " << format_double(c.reversibility.tol) << '\n';
}

std::string one_line(const Eigen::MatrixXd& k) {
  std::ostringstream os;
  os << k.rows() << 'x' << k.cols() << ':';
  for (Eigen::Index r = 0; r < k.rows(); ++r)
    for (Eigen::Index c = 0; c < k.cols(); ++c) os << (r || c ? " " : "") << format_double(k(r, c));
  return os.str();
}

}  // namespace

Model draw_fixed_size_model(RngStream& rng, const RandomModelSpec& spec, const CommonConfig& config) {
  Model m;
  m.ar = Eigen::MatrixXd::Ones(1, 1);
  if (spec.arma) m.ar = draw_reversible_ar(rng, spec.p1, spec.p2, config.reversibility, m.ar_rejections);
  m.ma = uniform_matrix(rng, spec.q1, spec.q2);
  m.ma(0, 0) = 1.0;
  finish_model(m, config.max_order);
  return m;
}

Model draw_pair_model(RngStream& rng, const PairsConfig& config) {
  Model m;
  const int p1 = rng.uniform_int(1, config.max_ar);
  const int p2 = rng.uniform_int(1, config.max_ar);
  const int q1 = rng.uniform_int(1, config.max_ma);
  const int q2 = rng.uniform_int(1, config.max_ma);
  m.ar = draw_reversible_ar(rng, p1, p2, config.common.reversibility, m.ar_rejections);
  m.ma = uniform_matrix(rng, q1, q2);
  while (std::abs(m.ma(0, 0)) < config.min_b11) m.ma(0, 0) = rng.uniform(-1.0, 1.0);
  finish_model(m, config.common.max_order);
  return m;
}

HistogramSummary summarize(const std::vector<double>& z) {
  HistogramSummary s;
  const auto M = z.size();
  if (M == 0) {
    s.mean = s.variance = s.ks = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double sum = 0.0;
  for (double v : z) sum += v;
  s.mean = sum / M;
  double ss = 0.0;
  for (double v : z) ss += (v - s.mean) * (v - s.mean);
  s.variance = M > 1 ? ss / (M - 1) : std::numeric_limits<double>::quiet_NaN();
  std::vector<double> sorted = z;
  std::sort(sorted.begin(), sorted.end());
  double ks = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    const double F = normal_cdf(sorted[i]);
    ks = std::max({ks, static_cast<double>(i + 1) / M - F, F - static_cast<double>(i) / M});
  }
  s.ks = ks;
  return s;
}

HistogramResult run_histogram(const HistogramConfig& config) {
  const auto& c = config.common;
  if (config.runs < 0) throw std::invalid_argument("run count must be >= 0");
  HistogramResult result;
  if (config.kernel) {
    const auto& k = *config.kernel;
    result.model.ar = k.is_arma() ? *k.ar : Eigen::MatrixXd::Ones(1, 1);
    result.model.ma = k.ma;
    result.model.g = resolve_ma(k, c.max_order, c.reversibility).coefficients();
  } else {
    RngStream rng(c.seed, kModelStream);
    result.model = draw_fixed_size_model(rng, config.random, c);
  }
  const arma2d::MAKernel kernel(result.model.g);
  result.stats = gof::model_statistics(kernel, c.shape);

  result.records.resize(config.runs);
  parallel_for(config.runs, c.threads, [&](int i) {
    const auto start = std::chrono::steady_clock::now();
    RngStream rng(c.seed, static_cast<std::uint64_t>(i));
    const Eigen::MatrixXd X = arma2d::sample_ma_data(kernel, c.shape, rng);
    const auto z = gof::zscores(gof::empirical_trace_moments(X), result.stats);
    auto& r = result.records[i];
    r.run = i;
    r.stream = static_cast<std::uint64_t>(i);
    r.z1 = z.z1;
    r.z2 = z.z2;
    r.decision = gof::gof_decision(z.z2, c.critical);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  std::vector<double> z2;
  z2.reserve(result.records.size());
  for (const auto& r : result.records) z2.push_back(r.z2);
  result.summary = summarize(z2);
  return result;
}

void write_histogram_csv(std::ostream& os, const HistogramConfig& config, const HistogramResult& result) {
  write_common(os, "histogram", config.common);
  os << "# runs = " << config.runs << '\n';
  os << "# model = " << (config.kernel ? "file" : config.random.to_string()) << '\n';
  os << "# ar = " << one_line(result.model.ar) << '\n';
  os << "# ma = " << one_line(result.model.ma) << '\n';
  os << "# ar_rejections = " << result.model.ar_rejections << '\n';
  os << "# lambda = " << format_double(result.stats.lambda) << '\n';
  os << "# mu_box_2 = " << format_double(result.stats.mu_box[1]) << '\n';
  os << "# var_box_2 = " << format_double(result.stats.var_box[1]) << '\n';
  os << "run,stream,z1,z2,decision\n";
  for (const auto& r : result.records) {
    os << r.run << ',' << r.stream << ',' << format_double(r.z1) << ',' << format_double(r.z2) << ','
       << gof::to_string(r.decision) << '\n';
  }
  if (result.records.empty()) return;
  os << "# summary mean = " << format_double(result.summary.mean)
     << ", variance = " << format_double(result.summary.variance)
     << ", ks = " << format_double(result.summary.ks) << '\n';
}

PairsResult run_pairs(const PairsConfig& config) {
  const auto& c = config.common;
  if (config.pairs < 0) throw std::invalid_argument("pair count must be >= 0");
  if (config.max_ar < 1 || config.max_ma < 1) throw std::invalid_argument("kernel size bounds must be >= 1");
  PairsResult result;
  result.records.resize(config.pairs);
  parallel_for(config.pairs, c.threads, [&](int i) {
    const auto start = std::chrono::steady_clock::now();
    RngStream rng(c.seed, static_cast<std::uint64_t>(i));
    const Model data_model = draw_pair_model(rng, config);
    const Model hypothesis = draw_pair_model(rng, config);
    const Eigen::MatrixXd X = arma2d::sample_ma_data(arma2d::MAKernel(data_model.g), c.shape, rng);
    const auto stats = gof::model_statistics(arma2d::MAKernel(hypothesis.g), c.shape);
    const auto z = gof::zscores(gof::empirical_trace_moments(X), stats);
    auto& r = result.records[i];
    r.pair = i;
    r.stream = static_cast<std::uint64_t>(i);
    r.distance = gof::kernel_distance(data_model.g, hypothesis.g);
    r.z1 = z.z1;
    r.z2 = z.z2;
    r.label_true = r.distance < config.true_threshold;
    r.positive = gof::gof_decision(z.z2, c.critical) == gof::Decision::accept;
    r.ar_rejections = data_model.ar_rejections + hypothesis.ar_rejections;
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  auto& s = result.summary;
  for (const auto& r : result.records) {
    s.ar_rejections += r.ar_rejections;
    if (r.label_true) {
      ++s.true_count;
      if (!r.positive) ++s.true_negative;
    } else {
      ++s.false_count;
      if (r.positive) ++s.false_positive;
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  s.true_negative_ratio = s.true_count ? static_cast<double>(s.true_negative) / s.true_count : nan;
  s.false_positive_ratio = s.false_count ? static_cast<double>(s.false_positive) / s.false_count : nan;
  return result;
}

void write_pairs_csv(std::ostream& os, const PairsConfig& config, const PairsResult& result) {
  write_common(os, "pairs", config.common);
  os << "# pairs = " << config.pairs << '\n';
  os << "# max_ar = " << config.max_ar << '\n';
  os << "# max_ma = " << config.max_ma << '\n';
  os << "# min_b11 = " << format_double(config.min_b11) << '\n';
  os << "# true_threshold = " << format_double(config.true_threshold) << '\n';
  os << "# epsilon = " << format_double(config.epsilon) << '\n';
  os << "pair,stream,d,abs_z2,d_eps,abs_z2_eps,z1,z2,label,decision,ar_rejections\n";
  for (const auto& r : result.records) {
    const double az = std::abs(r.z2);
    os << r.pair << ',' << r.stream << ',' << format_double(r.distance) << ',' << format_double(az)
       << ',' << format_double(r.distance + config.epsilon) << ',' << format_double(az + config.epsilon)
       << ',' << format_double(r.z1) << ',' << format_double(r.z2) << ','
       << (r.label_true ? "true" : "false") << ',' << (r.positive ? "positive" : "negative") << ','
       << r.ar_rejections << '\n';
  }
  if (result.records.empty()) return;
  const auto& s = result.summary;
  os << "# summary true = " << s.true_count << ", false = " << s.false_count
     << ", true_negative/true = " << format_double(s.true_negative_ratio)
     << ", false_positive/false = " << format_double(s.false_positive_ratio)
     << ", ar_rejections = " << s.ar_rejections << '\n';
}

}  // namespace fdez::cli
