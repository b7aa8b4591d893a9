#include "fdez/gof.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdez/error.hpp"
#include "fdez/fde.hpp"

namespace fdez::gof {

TraceMoments empirical_trace_moments(const Eigen::MatrixXd& X) {
  if (X.size() == 0) throw std::invalid_argument("empirical_trace_moments of an empty matrix");
  const double N = static_cast<double>(X.cols());
  const Eigen::MatrixXd S = (X.transpose() * X) / N;
  return {S.trace(), S.squaredNorm()};
}

ModelStatistics model_statistics(const arma2d::MAKernel& b, const arma2d::DataShape& shape) {
  if (shape.batch < 1) throw std::invalid_argument("batch size must be >= 1");
  const auto ext = arma2d::extended(b, shape.height, shape.width);
  if (ext.size() < shape.batch)
    throw DimensionError("H_e*W_e = " + std::to_string(ext.size()) + " is below N = " +
                         std::to_string(shape.batch));

  const Eigen::MatrixXd B = arma2d::build_B(b, shape.height, shape.width);
  Eigen::MatrixXd G = B * B.transpose();
  G = 0.5 * (G + G.transpose());

  ModelStatistics s;
  s.d = ext.size();
  s.n = shape.batch;
  s.lambda = static_cast<double>(s.d) / s.n;

  // Tr((BᵀB)^k) = Tr((BBᵀ)^k); normalize by d, the dimension of BᵀB.
  // With G symmetric, Tr G³ = <G², G> and Tr G⁴ = ‖G²‖².
  const Eigen::MatrixXd G2 = G * G;
  const double d = s.d;
  s.moments = MomentVector(std::vector<double>{G.trace() / d, G2.trace() / d,
                                               G2.cwiseProduct(G).sum() / d, G2.squaredNorm() / d});
  if (!(s.moments.m(2) > 0.0)) throw std::domain_error("degenerate MA kernel: BᵀB = 0");

  for (int l = 1; l <= 2; ++l) {
    s.mu_box[l - 1] = fde::fde_mean(l, s.n, s.lambda, s.moments);
    s.var_box[l - 1] = fde::fde_variance(l, s.lambda, s.moments);
  }
  s.R = wishart::spectral_norm(G) / std::sqrt(s.moments.m(2));
  s.bound = arma2d::ratio_bound(b, shape.height, shape.width);
  return s;
}

ZScores zscores(const TraceMoments& observed, const ModelStatistics& model) {
  const fde::FdeStatistics s1{1, model.mu_box[0], model.var_box[0], model.lambda, model.n};
  const fde::FdeStatistics s2{2, model.mu_box[1], model.var_box[1], model.lambda, model.n};
  return {fde::fde_zscore(observed.mu1, s1), fde::fde_zscore(observed.mu2, s2)};
}

ZScores gof_zscores(const Eigen::MatrixXd& X, const arma2d::MAKernel& b,
                    const arma2d::DataShape& shape) {
  if (X.rows() != shape.pixels() || X.cols() != shape.batch)
    throw DimensionError("data is " + std::to_string(X.rows()) + "x" + std::to_string(X.cols()) +
                         ", expected " + std::to_string(shape.pixels()) + "x" +
                         std::to_string(shape.batch));
  return zscores(empirical_trace_moments(X), model_statistics(b, shape));
}

Decision gof_decision(double z2, double critical) {
  if (std::isnan(z2) || std::isnan(critical))
    throw std::invalid_argument("gof_decision on NaN");
  return std::abs(z2) > critical ? Decision::reject : Decision::accept;
}

const char* to_string(Decision d) { return d == Decision::reject ? "reject" : "accept"; }

double kernel_distance(const Eigen::MatrixXd& g1, const Eigen::MatrixXd& g2) {
  const Eigen::Index rows = std::max(g1.rows(), g2.rows());
  const Eigen::Index cols = std::max(g1.cols(), g2.cols());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols), b = a;
  a.topLeftCorner(g1.rows(), g1.cols()) = g1;
  b.topLeftCorner(g2.rows(), g2.cols()) = g2;
  return (a - b).cwiseAbs().sum();
}

TestReport make_report(const TraceMoments& observed, const ModelStatistics& model,
                       double critical) {
  const auto z = zscores(observed, model);
  TestReport r;
  r.z1 = z.z1;
  r.z2 = z.z2;
  r.mu_hat_1 = observed.mu1;
  r.mu_hat_2 = observed.mu2;
  r.mu_box_1 = model.mu_box[0];
  r.mu_box_2 = model.mu_box[1];
  r.var_box_1 = model.var_box[0];
  r.var_box_2 = model.var_box[1];
  r.lambda = model.lambda;
  r.R = model.R;
  r.bound = model.bound;
  r.decision = gof_decision(z.z2, critical);
  r.critical = critical;
  return r;
}

TestReport run_test(const Eigen::MatrixXd& X, const arma2d::MAKernel& b,
                    const arma2d::DataShape& shape, double critical) {
  if (X.rows() != shape.pixels() || X.cols() != shape.batch)
    throw DimensionError("data is " + std::to_string(X.rows()) + "x" + std::to_string(X.cols()) +
                         ", expected " + std::to_string(shape.pixels()) + "x" +
                         std::to_string(shape.batch));
  return make_report(empirical_trace_moments(X), model_statistics(b, shape), critical);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::pair<const char*, std::string>> fields(const TestReport& r) {
  return {{"z1", format_double(r.z1)},
          {"z2", format_double(r.z2)},
          {"mu_hat_1", format_double(r.mu_hat_1)},
          {"mu_hat_2", format_double(r.mu_hat_2)},
          {"mu_box_1", format_double(r.mu_box_1)},
          {"mu_box_2", format_double(r.mu_box_2)},
          {"var_box_1", format_double(r.var_box_1)},
          {"var_box_2", format_double(r.var_box_2)},
          {"lambda", format_double(r.lambda)},
          {"R", format_double(r.R)},
          {"bound", format_double(r.bound)},
          {"decision", to_string(r.decision)}};
}

}  // namespace

std::string to_key_value(const TestReport& report) {
  std::ostringstream os;
  for (const auto& [k, v] : fields(report)) os << k << " = " << v << '\n';
  os << "critical = " << format_double(report.critical) << '\n';
  return os.str();
}

std::string csv_header() {
  return "z1,z2,mu_hat_1,mu_hat_2,mu_box_1,mu_box_2,var_box_1,var_box_2,lambda,R,bound,decision";
}

std::string to_csv_row(const TestReport& report) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : fields(report)) {
    if (!first) os << ',';
    os << v;
    first = false;
  }
  return os.str();
}

}  // namespace fdez::gof
