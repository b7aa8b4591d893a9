#include "fdez/arma2d.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "fdez/error.hpp"

namespace fdez::arma2d {

namespace {

void check_image(int H, int W) {
  if (H < 1 || W < 1) throw std::invalid_argument("image height and width must be >= 1");
}

using Complex = std::complex<double>;

// Roots of Σ_k c[k] x^k; degree drops while leading coefficients vanish.
std::vector<Complex> polynomial_roots(std::vector<Complex> c) {
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  while (!c.empty() && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
  const int degree = static_cast<int>(c.size()) - 1;
  if (degree < 1) return {};
  if (degree == 1) return {-c[0] / c[1]};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
  for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -c[i] / c[degree];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// Smallest |x|² + |y|² - 1 over roots x of P(·, y) as y runs over the grid.
// `a` is indexed so its rows carry the powers of x.
double min_root_margin(const Eigen::MatrixXd& a, int grid) {
  double best = std::numeric_limits<double>::infinity();
  const int radii = std::max(grid, 2);
  for (int k = 0; k < radii; ++k) {
    const double rho = static_cast<double>(k) / (radii - 1);
    const int angles = (k == 0) ? 1 : grid;
    for (int m = 0; m < angles; ++m) {
      const Complex y = std::polar(rho, 2.0 * std::numbers::pi * m / grid);
      std::vector<Complex> c(a.rows(), 0.0);
      for (Eigen::Index i = 0; i < a.rows(); ++i) {
        Complex pw = 1.0;
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
          c[i] += a(i, j) * pw;
          pw *= y;
        }
      }
      for (const auto& x : polynomial_roots(std::move(c)))
        best = std::min(best, std::norm(x) + rho * rho - 1.0);
    }
  }
  return best;
}

}  // namespace

MAKernel::MAKernel(Eigen::MatrixXd b) : b_(std::move(b)) {
  if (b_.size() == 0) throw std::invalid_argument("MA kernel is empty");
  if (b_(0, 0) == 0.0) throw std::invalid_argument("MA kernel needs b11 != 0");
  if (!b_.allFinite()) throw std::invalid_argument("MA kernel has non-finite entries");
}

ARMAKernelPair::ARMAKernelPair(Eigen::MatrixXd a, Eigen::MatrixXd b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() == 0) throw std::invalid_argument("AR kernel is empty");
  if (a_(0, 0) != 1.0) throw std::invalid_argument("AR kernel needs a11 == 1");
  if (!a_.allFinite()) throw std::invalid_argument("AR kernel has non-finite entries");
}

Extent extended(const MAKernel& b, int H, int W) {
  check_image(H, W);
  return {H + b.q1() - 1, W + b.q2() - 1};
}

Eigen::MatrixXd build_B(const MAKernel& b, int H, int W) {
  const auto ext = extended(b, H, W);
  const auto& k = b.coefficients();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(H * W, ext.size());
  for (int h = 1; h <= H; ++h)
    for (int w = 1; w <= W; ++w)
      for (int i = 1; i <= b.q1(); ++i)
        for (int j = 1; j <= b.q2(); ++j) {
          const int row = (h - 1) * W + w;
          const int col = (h + i - 2) * ext.width + j + w - 1;
          if (col < 1 || col > ext.size())
            throw DimensionError("B index out of range; shape and kernel disagree");
          B(row - 1, col - 1) = k(i - 1, j - 1);
        }
  return B;
}

wishart::CompoundWishartParam ma_to_wishart(const MAKernel& b, const DataShape& shape) {
  if (shape.batch < 1) throw std::invalid_argument("batch size must be >= 1");
  const auto ext = extended(b, shape.height, shape.width);
  if (ext.size() < shape.batch)
    throw DimensionError("H_e*W_e = " + std::to_string(ext.size()) + " is below N = " +
                         std::to_string(shape.batch));
  const Eigen::MatrixXd B = build_B(b, shape.height, shape.width);
  Eigen::MatrixXd D = B.transpose() * B;
  D = 0.5 * (D + D.transpose());
  return wishart::CompoundWishartParam(shape.batch, std::move(D));
}

Eigen::MatrixXd sample_ma_data(const MAKernel& b, const DataShape& shape, wishart::RngStream& rng) {
  if (shape.batch < 1) throw std::invalid_argument("batch size must be >= 1");
  const int H = shape.height, W = shape.width;
  const int q1 = b.q1(), q2 = b.q2();
  const auto ext = extended(b, H, W);
  const auto& k = b.coefficients();

  Eigen::MatrixXd Y(H * W, shape.batch);
  // eps(r, c) holds ε(r - q1 + 2, c - q2 + 2): lattice rows 2-q1..H, cols 2-q2..W.
  Eigen::MatrixXd eps(ext.height, ext.width);
  for (int n = 0; n < shape.batch; ++n) {
    for (int r = 0; r < ext.height; ++r)
      for (int c = 0; c < ext.width; ++c) eps(r, c) = rng.gaussian();
    for (int h = 1; h <= H; ++h)
      for (int w = 1; w <= W; ++w) {
        double acc = 0.0;
        for (int i = 1; i <= q1; ++i)
          for (int j = 1; j <= q2; ++j)
            acc += k(i - 1, j - 1) * eps(h - i + q1 - 1, w - j + q2 - 1);
        Y((h - 1) * W + w - 1, n) = acc;
      }
  }
  return Y;
}

Eigen::MatrixXd arma_to_ma(const ARMAKernelPair& kernels, int o1, int o2) {
  if (o1 < 1 || o2 < 1) throw std::invalid_argument("max orders must be >= 1");
  const auto& a = kernels.ar();
  const auto& b = kernels.ma().coefficients();
  auto b_at = [&](int i, int j) { return (i <= b.rows() && j <= b.cols()) ? b(i - 1, j - 1) : 0.0; };

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(o1, o2);
  for (int i = 1; i <= o1; ++i)
    for (int j = 1; j <= o2; ++j) {
      // Extended accumulation keeps the recursion residual near one rounding
      // of g(i, j) even when the expansion grows large.
      long double acc = b_at(i, j);
      for (int k = 1; k <= std::min<int>(i, static_cast<int>(a.rows())); ++k)
        for (int l = 1; l <= std::min<int>(j, static_cast<int>(a.cols())); ++l) {
          if (k == 1 && l == 1) continue;
          acc -= static_cast<long double>(g(i - k, j - l)) * a(k - 1, l - 1);
        }
      g(i - 1, j - 1) = static_cast<double>(acc);
    }
  return g;
}

bool is_reversible(const Eigen::MatrixXd& a, int grid, double tol) {
  if (a.size() == 0 || a(0, 0) != 1.0)
    throw std::invalid_argument("reversibility check needs a11 == 1");
  if (grid < 1) throw std::invalid_argument("reversibility grid must be >= 1");
  const double tail = a.cwiseAbs().sum() - 1.0;
  if (tail < 1.0) return true;
  const double margin = std::min(min_root_margin(a, grid), min_root_margin(a.transpose(), grid));
  return !(margin < tol);
}

double ratio_bound(const MAKernel& b, int H, int W) {
  const auto ext = extended(b, H, W);
  const auto& k = b.coefficients();
  const double l1 = k.cwiseAbs().sum();
  const double l2sq = k.squaredNorm();
  const double zeta = static_cast<double>(ext.size()) / (static_cast<double>(H) * W);
  return std::sqrt(zeta) * l1 * l1 / l2sq;
}

}  // namespace fdez::arma2d
