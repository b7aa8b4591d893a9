#pragma once

#include <array>
#include <string>

#include <Eigen/Core>

#include "fdez/arma2d.hpp"
#include "fdez/moments.hpp"

namespace fdez::gof {

/// μ̂_l = Tr[(XᵀX / N)^l] for l = 1, 2.
struct TraceMoments {
  double mu1 = 0.0;
  double mu2 = 0.0;
};

/// Throws std::invalid_argument for an empty matrix.
TraceMoments empirical_trace_moments(const Eigen::MatrixXd& X);

/// FDE constants of the compound Wishart model induced by an MA kernel on
/// an H×W×N data shape.
struct ModelStatistics {
  int d = 0;  // H_e W_e
  int n = 0;  // N
  double lambda = 0.0;
  MomentVector moments;  // m_1..m_4 of BᵀB
  std::array<double, 2> mu_box{};
  std::array<double, 2> var_box{};
  double R = 0.0;      // ratio_R(BᵀB)
  double bound = 0.0;  // ratio_bound(b, H, W)
};

/// Moments of D = BᵀB are taken from the HW×HW Gram matrix BBᵀ, which has
/// the same nonzero spectrum. Throws DimensionError when H_eW_e < N and
/// std::domain_error for a degenerate kernel (D = 0).
ModelStatistics model_statistics(const arma2d::MAKernel& b, const arma2d::DataShape& shape);

struct ZScores {
  double z1 = 0.0;
  double z2 = 0.0;
};

ZScores zscores(const TraceMoments& observed, const ModelStatistics& model);

/// Throws DimensionError unless X is HW × N.
ZScores gof_zscores(const Eigen::MatrixXd& X, const arma2d::MAKernel& b,
                    const arma2d::DataShape& shape);

enum class Decision { accept, reject };

inline constexpr double kDefaultCritical = 1.96;

/// reject iff |z2| > critical. Throws std::invalid_argument on NaN.
Decision gof_decision(double z2, double critical = kDefaultCritical);

const char* to_string(Decision d);

/// Σ_ij |g1(i,j) - g2(i,j)| with both kernels zero-padded to a common shape.
double kernel_distance(const Eigen::MatrixXd& g1, const Eigen::MatrixXd& g2);

struct TestReport {
  double z1 = 0.0;
  double z2 = 0.0;
  double mu_hat_1 = 0.0;
  double mu_hat_2 = 0.0;
  double mu_box_1 = 0.0;
  double mu_box_2 = 0.0;
  double var_box_1 = 0.0;
  double var_box_2 = 0.0;
  double lambda = 0.0;
  double R = 0.0;
  double bound = 0.0;
  Decision decision = Decision::accept;
  double critical = kDefaultCritical;
};

TestReport make_report(const TraceMoments& observed, const ModelStatistics& model,
                       double critical = kDefaultCritical);

TestReport run_test(const Eigen::MatrixXd& X, const arma2d::MAKernel& b,
                    const arma2d::DataShape& shape, double critical = kDefaultCritical);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// One `key = value` per line in the fixed field order, then `critical`.
std::string to_key_value(const TestReport& report);

/// z1,z2,mu_hat_1,mu_hat_2,mu_box_1,mu_box_2,var_box_1,var_box_2,lambda,R,bound,decision
std::string csv_header();
std::string to_csv_row(const TestReport& report);

}  // namespace fdez::gof
