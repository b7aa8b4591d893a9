#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

#include "fdez/moments.hpp"

namespace fdez::wishart {

/// θ = (λ = d/n, D) with D a d×d symmetric positive semidefinite weight.
class CompoundWishartParam {
 public:
  /// Throws DimensionError when d < n and std::invalid_argument when D is
  /// not symmetric (1e-12) or has an eigenvalue below -1e-10·max(1, ‖D‖).
  CompoundWishartParam(int n, Eigen::MatrixXd D);

  int d() const { return static_cast<int>(D_.rows()); }
  int n() const { return n_; }
  double lambda() const { return static_cast<double>(d()) / n_; }
  const Eigen::MatrixXd& weight() const { return D_; }

 private:
  int n_;
  Eigen::MatrixXd D_;
};

/// Reproducible Gaussian stream keyed by (master seed, stream index).
/// Distinct keys give independent streams; the same key always replays the
/// same sequence.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  double gaussian() { return normal_(engine_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// W = Zᵀ D Z with Z a d×n matrix of i.i.d. Normal(0, variance 1/n) entries,
/// drawn column by column. The result is symmetrized.
Eigen::MatrixXd sample(const CompoundWishartParam& theta, RngStream& rng);

inline constexpr int kMaxTracePower = 8;

/// Tr(W^l) by repeated multiplication, 1 <= l <= 8.
double trace_power(const Eigen::MatrixXd& W, int l);
/// Tr(W²) = Σ W_ij² for symmetric W.
double trace_square_frobenius(const Eigen::MatrixXd& W);

/// m_k = Tr(D^k) / dim for k = 1..kmax (kmax <= 8).
MomentVector matrix_moments(const Eigen::MatrixXd& D, int kmax);

struct PowerIterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

/// Largest |eigenvalue| of a symmetric matrix by power iteration. Runs from
/// the normalized all-ones vector and from a second fixed start vector so a
/// start orthogonal to the top eigenvector cannot go unnoticed; returns the
/// larger estimate. A start that has not converged after 500 steps (or
/// max_iterations, if smaller) is finished by a reorthogonalized Lanczos
/// run; ConvergenceError only if that also fails.
/// Throws std::invalid_argument for the zero matrix.
double spectral_norm(const Eigen::MatrixXd& D, const PowerIterationOptions& options = {});

}  // namespace fdez::wishart
