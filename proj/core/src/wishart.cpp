#include "fdez/wishart.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fdez/error.hpp"

namespace fdez::wishart {

namespace {

void check_square(const Eigen::MatrixXd& A, const char* what) {
  if (A.rows() != A.cols() || A.rows() == 0)
    throw std::invalid_argument(std::string(what) + " needs a non-empty square matrix");
}

// Power steps tried before handing a slow start to Lanczos.
constexpr int kPowerPhase = 500;

std::optional<double> power_iterate(const Eigen::MatrixXd& D, Eigen::VectorXd v,
                                   const PowerIterationOptions& options) {
  v.normalize();
  const int steps = std::min(options.max_iterations, kPowerPhase);
  for (int it = 0; it < steps; ++it) {
    Eigen::VectorXd w = D * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    // Stop on the eigen-residual: a small change in the estimate alone can
    // hide a slowly drifting vector when the top of the spectrum is clustered.
    const double theta = v.dot(w);
    if ((w - theta * v).norm() <= options.tolerance * std::abs(theta)) return std::abs(theta);
    v = w / norm;
  }
  return std::nullopt;
}

// Lanczos with full reorthogonalization; used when power iteration stalls on
// a tight cluster at the top of the spectrum. Exact after dim steps.
double lanczos_extreme(const Eigen::MatrixXd& D, Eigen::VectorXd v,
                       const PowerIterationOptions& options) {
  const Eigen::Index n = D.rows();
  const Eigen::Index steps = std::min<Eigen::Index>(n, options.max_iterations);
  Eigen::MatrixXd Q(n, steps);
  std::vector<double> alpha, beta;
  Q.col(0) = v.normalized();
  double theta = 0.0;
  for (Eigen::Index k = 0; k < steps; ++k) {
    Eigen::VectorXd w = D * Q.col(k);
    alpha.push_back(Q.col(k).dot(w));
    for (int pass = 0; pass < 2; ++pass)
      w -= Q.leftCols(k + 1) * (Q.leftCols(k + 1).transpose() * w);
    const double b = w.norm();
    const bool last = k + 1 == steps || k + 1 == n;
    const bool breakdown = b <= 1e-14 * (std::abs(alpha.back()) + (beta.empty() ? 0.0 : beta.back()));
    // The tridiagonal eigenproblem is re-solved every few steps only.
    if ((k + 1) % 8 == 0 || last || breakdown) {
      const auto m = static_cast<Eigen::Index>(alpha.size());
      Eigen::VectorXd diag(m), sub(std::max<Eigen::Index>(m - 1, 0));
      for (Eigen::Index i = 0; i < m; ++i) diag(i) = alpha[i];
      for (Eigen::Index i = 0; i + 1 < m; ++i) sub(i) = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
      es.computeFromTridiagonal(diag, sub);
      const auto& ev = es.eigenvalues();
      const Eigen::Index top = std::abs(ev(0)) > std::abs(ev(m - 1)) ? 0 : m - 1;
      theta = std::abs(ev(top));
      const double residual = b * std::abs(es.eigenvectors()(m - 1, top));
      if (residual <= options.tolerance * theta || breakdown || k + 1 == n) return theta;
    }
    beta.push_back(b);
    if (k + 1 < steps) Q.col(k + 1) = w / b;
  }
  throw ConvergenceError("spectral norm did not converge in " +
                         std::to_string(options.max_iterations) + " iterations");
}

double extreme_from(const Eigen::MatrixXd& D, const Eigen::VectorXd& start,
                    const PowerIterationOptions& options) {
  if (const auto sigma = power_iterate(D, start, options)) return *sigma;
  return lanczos_extreme(D, start, options);
}

}  // namespace

CompoundWishartParam::CompoundWishartParam(int n, Eigen::MatrixXd D) : n_(n), D_(std::move(D)) {
  if (n_ < 1) throw std::invalid_argument("compound Wishart needs n >= 1");
  check_square(D_, "compound Wishart weight");
  if (D_.rows() < n_)
    throw DimensionError("compound Wishart needs d >= n (d = " + std::to_string(D_.rows()) +
                         ", n = " + std::to_string(n_) + ")");
  if ((D_ - D_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("compound Wishart weight is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(D_, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  if (eig.eigenvalues().minCoeff() < -1e-10 * scale)
    throw std::invalid_argument("compound Wishart weight is not positive semidefinite");
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

Eigen::MatrixXd sample(const CompoundWishartParam& theta, RngStream& rng) {
  const Eigen::Index d = theta.d(), n = theta.n();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd Z(d, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < d; ++i) Z(i, j) = scale * rng.gaussian();
  Eigen::MatrixXd W = Z.transpose() * (theta.weight() * Z);
  return 0.5 * (W + W.transpose());
}

double trace_power(const Eigen::MatrixXd& W, int l) {
  check_square(W, "trace_power");
  if (l < 1 || l > kMaxTracePower)
    throw std::invalid_argument("trace_power supports 1 <= l <= 8");
  Eigen::MatrixXd P = W;
  for (int k = 1; k < l; ++k) P = P * W;
  return P.trace();
}

double trace_square_frobenius(const Eigen::MatrixXd& W) {
  check_square(W, "trace_square_frobenius");
  return W.squaredNorm();
}

MomentVector matrix_moments(const Eigen::MatrixXd& D, int kmax) {
  check_square(D, "matrix_moments");
  if (kmax < 1 || kmax > kMaxTracePower)
    throw std::invalid_argument("matrix_moments supports 1 <= kmax <= 8");
  const double dim = static_cast<double>(D.rows());
  std::vector<double> m;
  Eigen::MatrixXd P = D;
  for (int k = 1; k <= kmax; ++k) {
    m.push_back(P.trace() / dim);
    if (k < kmax) P = P * D;
  }
  return MomentVector(std::move(m));
}

double spectral_norm(const Eigen::MatrixXd& D, const PowerIterationOptions& options) {
  check_square(D, "spectral_norm");
  if (D.isZero(0.0)) throw std::invalid_argument("spectral_norm of the zero matrix");
  const Eigen::Index n = D.rows();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd alt(n);
  for (Eigen::Index i = 0; i < n; ++i)
    alt(i) = std::sin(static_cast<double>(i) + 1.0) + 0.5 * std::cos(2.3 * static_cast<double>(i));
  return std::max(extreme_from(D, ones, options), extreme_from(D, alt, options));
}

}  // namespace fdez::wishart
