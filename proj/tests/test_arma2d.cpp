#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fdez/arma2d.hpp"
#include "fdez/error.hpp"
#include "fdez/fde.hpp"
#include "fdez/wishart.hpp"
#include "oracles/oracles.hpp"

using namespace fdez;
using arma2d::ARMAKernelPair;
using arma2d::DataShape;
using arma2d::MAKernel;
using wishart::RngStream;

namespace {

Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd m(rows.size(), rows.begin()->size());
  int r = 0;
  for (const auto& row : rows) {
    int c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

Eigen::MatrixXd uniform(int rows, int cols, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows * cols; ++i) m(i / cols, i % cols) = u(rng);
  return m;
}

// Random AR kernel with a11 = 1 that passes the reversibility check.
Eigen::MatrixXd random_reversible_ar(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 3);
  while (true) {
    Eigen::MatrixXd a = uniform(size(rng), size(rng), rng);
    a(0, 0) = 1.0;
    if (a.size() > 1 && arma2d::is_reversible(a)) return a;
  }
}

}  // namespace

TEST(Kernels, Validation) {
  EXPECT_THROW(MAKernel(mat({{0.0, 1.0}})), std::invalid_argument);
  EXPECT_THROW(MAKernel(Eigen::MatrixXd(0, 0)), std::invalid_argument);
  EXPECT_THROW(MAKernel(mat({{1.0, NAN}})), std::invalid_argument);
  const MAKernel b(mat({{2.0, 1.0}, {0.5, 0.0}, {1.0, 1.0}}));
  EXPECT_EQ(b.q1(), 3);
  EXPECT_EQ(b.q2(), 2);
  EXPECT_THROW(ARMAKernelPair(mat({{0.9}}), mat({{1.0}})), std::invalid_argument);
  EXPECT_NO_THROW(ARMAKernelPair(mat({{1.0, 0.2}}), mat({{1.0}})));
}

TEST(BuildB, OneByOneKernelIsScaledIdentity) {
  const auto B = arma2d::build_B(MAKernel(mat({{1.7}})), 3, 4);
  EXPECT_EQ(B, 1.7 * Eigen::MatrixXd::Identity(12, 12));
}

TEST(BuildB, RowKernelOnTwoPixels) {
  const auto B = arma2d::build_B(MAKernel(mat({{2.0, 3.0}})), 1, 2);
  EXPECT_EQ(B, mat({{2.0, 3.0, 0.0}, {0.0, 2.0, 3.0}}));
}

TEST(BuildB, FrobeniusAndRowStructure) {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXd b = uniform(2, 2, rng, 0.1, 1.0);
  const auto B = arma2d::build_B(MAKernel(b), 3, 3);
  EXPECT_EQ(B.rows(), 9);
  EXPECT_EQ(B.cols(), 16);
  EXPECT_NEAR(B.squaredNorm(), 9 * b.squaredNorm(), 1e-12);
  for (int r = 0; r < B.rows(); ++r) {
    int nonzeros = 0;
    for (int c = 0; c < B.cols(); ++c) {
      if (B(r, c) == 0.0) continue;
      ++nonzeros;
      EXPECT_TRUE((b.array() == B(r, c)).any());
    }
    EXPECT_LE(nonzeros, 4);
  }
}

TEST(BuildB, MatchesIndexRuleAndCorrelation) {
  std::mt19937_64 rng(9);
  for (auto [q1, q2, H, W] : {std::tuple{3, 2, 4, 5}, std::tuple{1, 4, 3, 3}, std::tuple{2, 3, 5, 2}}) {
    Eigen::MatrixXd b = uniform(q1, q2, rng);
    b(0, 0) = 1.0;
    const auto B = arma2d::build_B(MAKernel(b), H, W);
    EXPECT_EQ(B, oracle::b_matrix(b, H, W));
    // B applied to a flattened lattice is the valid correlation with b.
    const int He = H + q1 - 1, We = W + q2 - 1;
    const Eigen::MatrixXd e = uniform(He, We, rng);
    Eigen::VectorXd flat(He * We);
    for (int r = 0; r < He; ++r)
      for (int c = 0; c < We; ++c) flat(r * We + c) = e(r, c);
    const Eigen::VectorXd y = B * flat;
    const auto ref = oracle::correlate_valid(b, e, H, W);
    for (int h = 0; h < H; ++h)
      for (int w = 0; w < W; ++w) EXPECT_NEAR(y(h * W + w), ref(h, w), 1e-12);
  }
}

TEST(MaToWishart, Examples) {
  const auto theta = arma2d::ma_to_wishart(MAKernel(mat({{1.0}})), DataShape{4, 4, 16});
  EXPECT_EQ(theta.d(), 16);
  EXPECT_DOUBLE_EQ(theta.lambda(), 1.0);
  EXPECT_EQ(theta.weight(), Eigen::MatrixXd::Identity(16, 16));

  std::mt19937_64 rng(2);
  Eigen::MatrixXd b = uniform(3, 3, rng);
  b(0, 0) = 1.0;
  const auto t2 = arma2d::ma_to_wishart(MAKernel(b), DataShape{16, 16, 16});
  EXPECT_EQ(t2.d(), 324);
  EXPECT_DOUBLE_EQ(t2.lambda(), 20.25);

  const Eigen::MatrixXd Bo = oracle::b_matrix(b, 16, 16);
  const Eigen::MatrixXd D = Bo.transpose() * Bo;
  const auto m = wishart::matrix_moments(t2.weight(), 4);
  Eigen::MatrixXd P = D;
  for (int k = 1; k <= 4; ++k) {
    EXPECT_NEAR(m.m(k), P.trace() / 324, 1e-9 * P.trace() / 324);
    P = P * D;
  }
  EXPECT_THROW(arma2d::ma_to_wishart(MAKernel(mat({{1.0}})), DataShape{2, 2, 5}), DimensionError);
}

TEST(SampleMaData, ConvolutionOfDrawnNoise) {
  std::mt19937_64 rng(3);
  Eigen::MatrixXd b = uniform(2, 3, rng);
  b(0, 0) = 1.0;
  const DataShape shape{4, 5, 3};
  RngStream s(10, 2), replay(10, 2);
  const auto X = arma2d::sample_ma_data(MAKernel(b), shape, s);
  ASSERT_EQ(X.rows(), 20);
  ASSERT_EQ(X.cols(), 3);
  const int He = 4 + 1, We = 5 + 2;
  for (int n = 0; n < 3; ++n) {
    Eigen::MatrixXd eps(He, We);
    for (int r = 0; r < He; ++r)
      for (int c = 0; c < We; ++c) eps(r, c) = replay.gaussian();
    const auto y = oracle::convolve_valid(b, eps, 4, 5);
    for (int h = 0; h < 4; ++h)
      for (int w = 0; w < 5; ++w) EXPECT_NEAR(X(h * 5 + w, n), y(h, w), 1e-12);
  }
}

TEST(SampleMaData, IdentityKernelAndLinearity) {
  const DataShape shape{3, 3, 4};
  RngStream a(1, 0), b(1, 0), c(1, 0);
  const auto X1 = arma2d::sample_ma_data(MAKernel(mat({{1.0}})), shape, a);
  const auto Xh = arma2d::sample_ma_data(MAKernel(mat({{0.5}})), shape, b);
  EXPECT_EQ(Xh, 0.5 * X1);
  for (int n = 0; n < 4; ++n)
    for (int r = 0; r < 9; ++r) EXPECT_EQ(X1(r, n), c.gaussian());
}

TEST(SampleMaData, PixelVarianceIsKernelEnergy) {
  const Eigen::MatrixXd b = mat({{1.0, -0.5}, {0.3, 0.8}});
  const DataShape shape{6, 6, 2000};
  RngStream rng(5, 0);
  const auto X = arma2d::sample_ma_data(MAKernel(b), shape, rng);
  // Pixels within one image are correlated, so use one pixel across images.
  for (int r : {0, 14, 35}) {
    std::vector<double> v;
    for (int n = 0; n < shape.batch; ++n) v.push_back(X(r, n) * X(r, n));
    const auto s = oracle::mean_se(v);
    EXPECT_LT(std::abs(s.mean - b.squaredNorm()), 4 * s.se) << r;
  }
}

TEST(SampleMaData, SameLawAsCompoundWishart) {
  const MAKernel b(mat({{1.0, -0.6, 0.2}, {0.4, 0.3, -0.5}}));
  const arma2d::DataShape shape{4, 4, 4};
  const auto theta = arma2d::ma_to_wishart(b, shape);
  const int M = 2000;
  std::vector<double> x1(M), x2(M), w1(M), w2(M);
  for (int i = 0; i < M; ++i) {
    RngStream rx(71, i), rw(72, i);
    const Eigen::MatrixXd Y = arma2d::sample_ma_data(b, shape, rx) / std::sqrt(4.0);
    const Eigen::MatrixXd S = Y.transpose() * Y;
    x1[i] = S.trace();
    x2[i] = S.squaredNorm();
    const auto W = wishart::sample(theta, rw);
    w1[i] = W.trace();
    w2[i] = wishart::trace_square_frobenius(W);
  }
  auto agree = [](const oracle::MeanSe& a, const oracle::MeanSe& c) {
    return std::abs(a.mean - c.mean) <= 4 * std::hypot(a.se, c.se);
  };
  EXPECT_TRUE(agree(oracle::mean_se(x1), oracle::mean_se(w1)));
  EXPECT_TRUE(agree(oracle::mean_se(x2), oracle::mean_se(w2)));
  EXPECT_TRUE(agree(oracle::variance_se(x1), oracle::variance_se(w1)));
  EXPECT_TRUE(agree(oracle::variance_se(x2), oracle::variance_se(w2)));
}

TEST(ArmaToMa, TrivialArPadsB) {
  const Eigen::MatrixXd b = mat({{1.0, 2.0}, {3.0, 4.0}});
  const auto g = arma2d::arma_to_ma(ARMAKernelPair(mat({{1.0}}), b), 4, 3);
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 3);
  expected.topLeftCorner(2, 2) = b;
  EXPECT_EQ(g, expected);
}

TEST(ArmaToMa, GeometricSeries) {
  const auto g = arma2d::arma_to_ma(ARMAKernelPair(mat({{1.0, -0.5}}), mat({{1.0}})), 24, 24);
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) EXPECT_EQ(g(i, j), i == 0 ? std::pow(0.5, j) : 0.0) << i << "," << j;
}

TEST(ArmaToMa, ConvolutionIdentityOnRandomKernels) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> size(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXd a = random_reversible_ar(rng);
    Eigen::MatrixXd b = uniform(size(rng), size(rng), rng);
    b(0, 0) = 1.0;
    const int o = 24;
    const auto g = arma2d::arma_to_ma(ARMAKernelPair(a, b), o, o);
    const int rows = o - static_cast<int>(a.rows()) + 1, cols = o - static_cast<int>(a.cols()) + 1;
    const auto conv = oracle::convolve_full(a, g, rows, cols);
    Eigen::MatrixXd bpad = Eigen::MatrixXd::Zero(rows, cols);
    bpad.topLeftCorner(std::min<Eigen::Index>(b.rows(), rows), std::min<Eigen::Index>(b.cols(), cols)) =
        b.topLeftCorner(std::min<Eigen::Index>(b.rows(), rows), std::min<Eigen::Index>(b.cols(), cols));
    EXPECT_LE((conv - bpad).cwiseAbs().maxCoeff(), 1e-12) << "trial " << trial << " max|g| = " << g.cwiseAbs().maxCoeff();
  }
}

TEST(ArmaToMa, LargerOrdersExtendWithoutChangingEntries) {
  std::mt19937_64 rng(8);
  const ARMAKernelPair pair(random_reversible_ar(rng), mat({{1.0, 0.4}, {-0.2, 0.7}}));
  const auto small = arma2d::arma_to_ma(pair, 6, 9);
  const auto big = arma2d::arma_to_ma(pair, 12, 13);
  EXPECT_EQ(big.topLeftCorner(6, 9), small);
}

TEST(IsReversible, Examples) {
  EXPECT_TRUE(arma2d::is_reversible(mat({{1.0}})));
  EXPECT_FALSE(arma2d::is_reversible(mat({{1.0, -2.0}})));
  EXPECT_TRUE(arma2d::is_reversible(mat({{1.0, -0.3}, {-0.3, 0.1}})));
  EXPECT_THROW(arma2d::is_reversible(mat({{2.0, 0.1}})), std::invalid_argument);
}

TEST(IsReversible, BeyondTheSufficientCondition) {
  // 1 + 0.6 z1 + 0.6 z2: zeros satisfy z1 + z2 = -5/3, so |z|² >= 25/18 > 1.
  EXPECT_TRUE(arma2d::is_reversible(mat({{1.0, 0.6}, {0.6, 0.0}})));
  // 1 - 4 z1 z2 vanishes at z1 = z2 = 1/2, |z|² = 1/2.
  EXPECT_FALSE(arma2d::is_reversible(mat({{1.0, 0.0}, {0.0, -4.0}})));
  // 1 - 1.2 z1 vanishes at z1 = 5/6.
  EXPECT_FALSE(arma2d::is_reversible(mat({{1.0}, {-1.2}})));
  // 1 - 0.9 z1 - 0.9 z2: zero at z1 = z2 = 5/9, |z|² = 50/81 < 1.
  EXPECT_FALSE(arma2d::is_reversible(mat({{1.0, -0.9}, {-0.9, 0.0}})));
  // 1 - 0.7 z1 - 0.7 z2: nearest zero z1 = z2 = 5/7, |z|² = 50/49 > 1.
  EXPECT_TRUE(arma2d::is_reversible(mat({{1.0, -0.7}, {-0.7, 0.0}})));
}

TEST(RatioBound, Examples) {
  EXPECT_DOUBLE_EQ(arma2d::ratio_bound(MAKernel(mat({{1.0}})), 5, 7), 1.0);
  EXPECT_NEAR(arma2d::ratio_bound(MAKernel(mat({{1.0, 1.0}})), 8, 8), std::sqrt(72.0 / 64) * 2.0, 1e-12);
}

TEST(RatioBound, BoundsTheRatio) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> q(1, 4), hw(2, 8);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd b = uniform(q(rng), q(rng), rng);
    b(0, 0) = 1.0;
    const int H = hw(rng), W = hw(rng);
    const auto B = arma2d::build_B(MAKernel(b), H, W);
    const double R = fde::ratio_R(B.transpose() * B);
    EXPECT_LE(R, arma2d::ratio_bound(MAKernel(b), H, W) * (1 + 1e-9)) << trial;
  }
}

TEST(RatioBound, RatioWithinOnePercentFromSixteenToThirtyTwo) {
  const MAKernel b(mat({{1.0, 0.5, -0.3}, {0.2, -0.6, 0.4}}));
  auto R = [&](int s) {
    const auto B = arma2d::build_B(b, s, s);
    const Eigen::MatrixXd G = B * B.transpose();
    return wishart::spectral_norm(G) / std::sqrt(G.squaredNorm() / B.cols());
  };
  const double r8 = R(8), r16 = R(16), r32 = R(32);
  EXPECT_LE(std::abs(r32 - r16), 0.01 * r32) << "R(8) = " << r8 << ", R(16) = " << r16 << ", R(32) = " << r32;
}

TEST(RatioBound, RatioApproachesSymbolLimit) {
  // As H = W grows, R tends to max|b^|^2 / sqrt(mean |b^|^4) over the torus.
  const Eigen::MatrixXd k = mat({{1.0, 0.5, -0.3}, {0.2, -0.6, 0.4}});
  const MAKernel b(k);
  auto R = [&](int s) {
    const auto B = arma2d::build_B(b, s, s);
    const Eigen::MatrixXd G = B * B.transpose();
    return wishart::spectral_norm(G) / std::sqrt(G.squaredNorm() / B.cols());
  };
  const int grid = 512;
  double peak = 0.0, fourth = 0.0;
  for (int u = 0; u < grid; ++u)
    for (int v = 0; v < grid; ++v) {
      std::complex<double> f = 0.0;
      for (int i = 0; i < k.rows(); ++i)
        for (int j = 0; j < k.cols(); ++j)
          f += k(i, j) * std::polar(1.0, 2 * std::numbers::pi * (i * u + j * v) / grid);
      const double p = std::norm(f);
      peak = std::max(peak, p);
      fourth += p * p;
    }
  const double limit = peak / std::sqrt(fourth / (grid * grid));
  const double r8 = R(8), r16 = R(16), r32 = R(32);
  EXPECT_GT(r8, r16);
  EXPECT_GT(r16, r32);
  EXPECT_GT(r32, limit);
  EXPECT_LT(r32 - limit, 0.75 * (r16 - limit));
  EXPECT_LT(r32 - limit, 0.1 * limit);
}
