#pragma once

#include <Eigen/Core>

#include "fdez/wishart.hpp"

namespace fdez::arma2d {

/// q1×q2 moving-average kernel b with b(0,0) != 0.
class MAKernel {
 public:
  explicit MAKernel(Eigen::MatrixXd b);

  int q1() const { return static_cast<int>(b_.rows()); }
  int q2() const { return static_cast<int>(b_.cols()); }
  const Eigen::MatrixXd& coefficients() const { return b_; }

 private:
  Eigen::MatrixXd b_;
};

/// AR kernel a (p1×p2, a(0,0) == 1) and MA kernel b (q1×q2, b(0,0) != 0).
class ARMAKernelPair {
 public:
  ARMAKernelPair(Eigen::MatrixXd a, Eigen::MatrixXd b);

  const Eigen::MatrixXd& ar() const { return a_; }
  const MAKernel& ma() const { return b_; }

 private:
  Eigen::MatrixXd a_;
  MAKernel b_;
};

/// H×W images, N of them per batch.
struct DataShape {
  int height = 0;
  int width = 0;
  int batch = 0;

  int pixels() const { return height * width; }
};

/// Noise lattice of an MA kernel over an H×W image: (H + q1 - 1)×(W + q2 - 1).
struct Extent {
  int height = 0;
  int width = 0;

  int size() const { return height * width; }
};

Extent extended(const MAKernel& b, int H, int W);

/// HW × H_eW_e matrix with B((h-1)W + w, (h+i-2)W_e + j + w - 1) = b(i, j)
/// (1-based), zero elsewhere.
Eigen::MatrixXd build_B(const MAKernel& b, int H, int W);

/// θ = (H_eW_e / N, BᵀB). Throws DimensionError when H_eW_e < N.
wishart::CompoundWishartParam ma_to_wishart(const MAKernel& b, const DataShape& shape);

/// N images y(h, w) = Σ_ij b(i, j) ε(h-i+1, w-j+1) of i.i.d. standard
/// normal noise, one per column, pixel (h, w) in row (h-1)W + w. The noise
/// lattice of each image is drawn in row-major order. Not scaled by 1/√N.
Eigen::MatrixXd sample_ma_data(const MAKernel& b, const DataShape& shape, wishart::RngStream& rng);

inline constexpr int kDefaultMaxOrder = 24;

/// Coefficients of Q/P truncated to o1×o2:
/// g(i,j) = b(i,j) - Σ_{(k,l) != (1,1)} g(i-k+1, j-l+1) a(k,l).
Eigen::MatrixXd arma_to_ma(const ARMAKernelPair& kernels, int o1 = kDefaultMaxOrder,
                           int o2 = kDefaultMaxOrder);

inline constexpr int kDefaultReversibilityGrid = 32;
inline constexpr double kDefaultReversibilityTol = 1e-3;

/// Whether P(z1, z2) = Σ a(i,j) z1^{i-1} z2^{j-1} has no zero in the closed
/// unit ball of C². Accepts immediately when Σ_{(k,l) != (1,1)} |a(k,l)| < 1.
/// Otherwise one variable runs over a polar grid of the unit disc (grid radii
/// × grid angles) and P is solved exactly in the other; the kernel is
/// rejected when some root has |z1|² + |z2|² < 1 + tol. Both variable orders
/// are scanned. Throws std::invalid_argument unless a(0,0) == 1.
bool is_reversible(const Eigen::MatrixXd& a, int grid = kDefaultReversibilityGrid,
                   double tol = kDefaultReversibilityTol);

/// √(H_eW_e / HW) · ‖b‖₁² / ‖b‖₂², an upper bound on R(BᵀB).
double ratio_bound(const MAKernel& b, int H, int W);

}  // namespace fdez::arma2d
