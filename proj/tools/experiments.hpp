#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fdez/arma2d.hpp"
#include "fdez/gof.hpp"
#include "io.hpp"

namespace fdez::cli {

/// "ma:q1,q2" or "arma:p1,p2,q1,q2".
struct RandomModelSpec {
  bool arma = false;
  int p1 = 1, p2 = 1, q1 = 3, q2 = 3;

  static RandomModelSpec parse(const std::string& text);
  std::string to_string() const;
};

/// A drawn model: AR kernel (1×1 identity for MA models), MA kernel, and the
/// MA kernel actually used for testing (b itself, or the o×o expansion).
struct Model {
  Eigen::MatrixXd ar;
  Eigen::MatrixXd ma;
  Eigen::MatrixXd g;
  int ar_rejections = 0;

  bool trivial_ar() const { return ar.rows() == 1 && ar.cols() == 1; }
};

struct CommonConfig {
  arma2d::DataShape shape{16, 16, 16};
  std::uint64_t seed = 1;
  double critical = gof::kDefaultCritical;
  int max_order = arma2d::kDefaultMaxOrder;
  ReversibilityOptions reversibility;
  int threads = 1;
};

inline CommonConfig with_batch(int n) {
  CommonConfig c;
  c.shape.batch = n;
  return c;
}

struct HistogramConfig {
  CommonConfig common;
  int runs = 2000;
  std::optional<KernelSpec> kernel;  // fixed model; otherwise drawn from `random`
  RandomModelSpec random;
};

struct HistogramRecord {
  int run = 0;
  std::uint64_t stream = 0;
  double z1 = 0.0;
  double z2 = 0.0;
  gof::Decision decision = gof::Decision::accept;
  double wall_seconds = 0.0;  // not written to CSV
};

struct HistogramSummary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double ks = 0.0;        // sup-distance of the empirical CDF to Normal(0,1)
};

struct HistogramResult {
  Model model;
  gof::ModelStatistics stats;
  std::vector<HistogramRecord> records;
  HistogramSummary summary;
};

/// Stream index reserved for drawing the histogram model; realization i
/// uses stream i.
inline constexpr std::uint64_t kModelStream = ~std::uint64_t{0};

HistogramResult run_histogram(const HistogramConfig& config);
void write_histogram_csv(std::ostream& os, const HistogramConfig& config,
                         const HistogramResult& result);

struct PairsConfig {
  CommonConfig common = with_batch(64);
  int pairs = 300;
  int max_ar = 3;          // AR sizes drawn from 1..max_ar per dimension
  int max_ma = 6;          // MA sizes drawn from 1..max_ma per dimension
  double min_b11 = 0.1;    // |b11| redrawn until it reaches this
  double true_threshold = 0.1;
  double epsilon = 1e-8;   // plotting offset for log-log scatter
};

struct PairRecord {
  int pair = 0;
  std::uint64_t stream = 0;
  double distance = 0.0;
  double z1 = 0.0;
  double z2 = 0.0;
  bool label_true = false;  // distance < true_threshold
  bool positive = false;    // |z2| <= critical
  int ar_rejections = 0;
  double wall_seconds = 0.0;  // not written to CSV
};

struct PairsSummary {
  int true_count = 0;
  int false_count = 0;
  int true_negative = 0;
  int false_positive = 0;
  int ar_rejections = 0;
  /// NaN when the denominator is zero.
  double true_negative_ratio = 0.0;
  double false_positive_ratio = 0.0;
};

struct PairsResult {
  std::vector<PairRecord> records;
  PairsSummary summary;
};

PairsResult run_pairs(const PairsConfig& config);
void write_pairs_csv(std::ostream& os, const PairsConfig& config, const PairsResult& result);

/// Random ARMA model for the pairs experiment: sizes uniform in the given
/// ranges, entries uniform on [-1, 1], a11 = 1, |b11| >= min_b11, AR redrawn
/// until reversible.
Model draw_pair_model(wishart::RngStream& rng, const PairsConfig& config);
/// Fixed sizes from `spec`, entries uniform on [-1, 1], a11 = b11 = 1.
Model draw_fixed_size_model(wishart::RngStream& rng, const RandomModelSpec& spec,
                            const CommonConfig& config);

HistogramSummary summarize(const std::vector<double>& z);

/// Runs task(i) for i in [0, count) on `threads` workers. Results must be
/// stored by index; the first exception is rethrown after all workers join.
void parallel_for(int count, int threads, const std::function<void(int)>& task);

std::string version_string();

}  // namespace fdez::cli
