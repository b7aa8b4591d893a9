#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "fdez/fde.hpp"
#include "fdez/permu.hpp"
#include "fdez/wishart.hpp"
#include "fixtures.hpp"
#include "oracles/oracles.hpp"

using namespace fdez;
using fde::Method;
using fde::Monomial;

namespace {

MomentVector ones(int k) { return MomentVector(std::vector<double>(k, 1.0)); }

MomentVector moments_of(const Eigen::MatrixXd& D, int k = 6) {
  return MomentVector(oracle::eigen_moments(D, k));
}

// Random moments realized by an actual PSD spectrum so that all moment
// inequalities hold.
MomentVector random_moments(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::vector<double> eig(1 + rng() % 6);
  for (auto& e : eig) e = u(rng);
  eig[0] += 0.1;
  std::vector<double> m;
  for (int k = 1; k <= 6; ++k) {
    double s = 0.0;
    for (double e : eig) s += std::pow(e, k);
    m.push_back(s / eig.size());
  }
  return MomentVector(m);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(TrSigma, Examples) {
  const MomentVector m(std::vector<double>{1.5, 3.25, 4.5});
  EXPECT_DOUBLE_EQ(fde::tr_sigma(m, permu::SignedPermutation::identity(2)), 1.5 * 1.5 * 1.5 * 1.5);
  EXPECT_DOUBLE_EQ(fde::tr_sigma(m, std::vector<int>{1, 1}), 2.25);
  EXPECT_DOUBLE_EQ(fde::tr_sigma(m, std::vector<int>{2}), 3.25);
  // (1)(2,-3,-4): one fixed point and one 3-cycle; D = diag(1, 2).
  const auto mD = moments_of(Eigen::Vector2d(1, 2).asDiagonal().toDenseMatrix(), 3);
  permu::ParticularPart half;
  half.elements = {1, 2, -3, -4};
  half.cycles = {{1}, {2, -3, -4}};
  EXPECT_NEAR(fde::tr_sigma(mD, half), 1.5 * 4.5, 1e-12);
  EXPECT_THROW(fde::tr_sigma(m, std::vector<int>{4}), std::out_of_range);
}

TEST(GenusCumulant, Examples) {
  const MomentVector m(std::vector<double>{1.3, 2.2, 4.1, 8.7});
  const int n = 7;
  const double lambda = 2.5;
  EXPECT_NEAR(fde::genus_cumulant(1, 1, n, lambda, m), n * lambda * 1.3, 1e-12);
  EXPECT_NEAR(fde::genus_cumulant(2, 1, n, lambda, m), 2 * lambda * 2.2, 1e-12);
  EXPECT_NEAR(fde::genus_cumulant(1, 2, n, lambda, m),
              n * (lambda * 2.2 + lambda * lambda * 1.3 * 1.3) + lambda * 2.2, 1e-10);
}

TEST(GenusCumulant, VarianceOneHasTwoConnectingPremapsWithChiTwo) {
  const auto poly = fde::genus_expansion(2, 1);
  ASSERT_EQ(poly.terms().size(), 1u);
  EXPECT_EQ(poly.coefficient(Monomial{0, 1, {2}}), 2);
}

TEST(GenusCumulant, SizeGuard) {
  const auto m = ones(6);
  EXPECT_THROW(fde::genus_cumulant(2, 3, 4, 1.0, m), std::invalid_argument);
  EXPECT_NO_THROW(fde::genus_cumulant(1, 5, 4, 1.0, m, 5));
  EXPECT_THROW(fde::genus_expansion(1, 6, 6), std::invalid_argument);
}

TEST(GenusCumulant, ExactAgainstWickPairing) {
  // The expansion is exact at every finite n.
  for (std::uint64_t seed : {1u, 2u}) {
    for (int n : {1, 2, 3, 5}) {
      const int d = n + 2;
      const auto D = oracle::random_spd(d, seed * 100 + n);
      const oracle::Wick wick(D, n);
      const auto m = moments_of(D);
      const double lambda = static_cast<double>(d) / n;
      for (int l = 1; l <= 4; ++l)
        EXPECT_LT(rel(fde::genus_cumulant(1, l, n, lambda, m), wick.mean(l)), 1e-11) << "l=" << l << " n=" << n;
      for (int l = 1; l <= 2; ++l)
        EXPECT_LT(rel(fde::genus_cumulant(2, l, n, lambda, m), wick.variance(l)), 1e-10) << "l=" << l << " n=" << n;
    }
  }
}

TEST(FdeMean, Examples) {
  EXPECT_DOUBLE_EQ(fde::fde_mean(1, 9, 1.0, ones(2)), 9.0);
  EXPECT_DOUBLE_EQ(fde::fde_mean(2, 9, 1.0, ones(2)), 19.0);
  const MomentVector m(std::vector<double>{1.5, 3.25});
  EXPECT_DOUBLE_EQ(fde::fde_mean(2, 4, 2.0, m), 68.5);
  EXPECT_NEAR(fde::fde_mean(2, 4, 2.0, m, Method::enumerative), 68.5, 1e-12);
  EXPECT_THROW(fde::fde_mean(3, 4, 2.0, ones(3)), std::invalid_argument);
  EXPECT_THROW(fde::fde_mean(5, 4, 2.0, ones(5), Method::enumerative), std::invalid_argument);
}

TEST(FdeMean, ExactForLevelsOneAndTwoAtSmallN) {
  // At n ∈ {1, 2} the identity E[Tr W^l] = μ_l^□ holds for l ∈ {1, 2} and
  // fails for l = 3.
  for (int n : {1, 2}) {
    const int d = 3;
    const auto D = oracle::random_spd(d, 40 + n);
    const oracle::Wick wick(D, n);
    const auto m = moments_of(D);
    const double lambda = static_cast<double>(d) / n;
    for (int l = 1; l <= 2; ++l) EXPECT_LT(rel(fde::fde_mean(l, n, lambda, m), wick.mean(l)), 1e-12);
    EXPECT_GT(rel(fde::fde_mean(3, n, lambda, m, Method::enumerative), wick.mean(3)), 1e-3);
  }
}

TEST(FdeMean, HigherGenusTailIsOrderOneOverN) {
  const MomentVector m(std::vector<double>{1.2, 2.0, 3.9, 8.4});
  for (int l : {3, 4}) {
    auto gap = [&](int n) {
      // Hold λ fixed as n grows.
      return std::abs(fde::genus_cumulant(1, l, n, 2.0, m) - fde::fde_mean(l, n, 2.0, m, Method::enumerative));
    };
    EXPECT_GE(gap(10) / gap(100), 5.0) << "l=" << l;
    EXPECT_GT(gap(10), 0.0);
  }
}

TEST(FdeVariance, Examples) {
  EXPECT_DOUBLE_EQ(fde::fde_variance(1, 1.0, ones(2)), 2.0);
  EXPECT_DOUBLE_EQ(fde::fde_variance(2, 1.0, ones(4)), 36.0);
  EXPECT_DOUBLE_EQ(fde::fde_variance(2, 1.0, ones(4), Method::enumerative), 36.0);
  EXPECT_THROW(fde::fde_variance(1, 1.0, MomentVector(std::vector<double>{0.0, 0.0})), std::domain_error);
  EXPECT_THROW(fde::fde_variance(3, 1.0, ones(6)), std::invalid_argument);
}

TEST(FdeVariance, ThirtySixLeadingPremapsForLevelTwo) {
  const auto premaps = fde::leading_variance_premaps(2);
  EXPECT_EQ(premaps.size(), 36u);
  std::map<std::vector<int>, int> types;
  std::set<std::string> halves;
  for (const auto& p : premaps) {
    const auto half = permu::particular_part(p);
    ++types[half.cycle_type()];
    halves.insert(half.to_string());
  }
  EXPECT_EQ(halves.size(), 36u);
  const std::map<std::vector<int>, int> expected{{{1, 1, 2}, 8}, {{2, 2}, 4}, {{1, 3}, 16}, {{4}, 8}};
  EXPECT_EQ(types, expected);
  std::set<std::string> listed;
  for (const auto& h : fixtures::kLevelTwoHalves) listed.insert(fixtures::canonical_cycles(h));
  EXPECT_EQ(listed.size(), 36u);
  EXPECT_EQ(halves, listed);
}

TEST(FdeVariance, SymbolicCoefficientsForLevelTwo) {
  fde::GenusPolynomial expected;
  expected.add(Monomial{0, 3, {1, 1, 2}}, 8);
  expected.add(Monomial{0, 2, {2, 2}}, 4);
  expected.add(Monomial{0, 2, {1, 3}}, 16);
  expected.add(Monomial{0, 1, {4}}, 8);
  EXPECT_EQ(fde::variance_expansion(2), expected);

  fde::GenusPolynomial level_one;
  level_one.add(Monomial{0, 1, {2}}, 2);
  EXPECT_EQ(fde::variance_expansion(1), level_one);
}

TEST(FdeVariance, LevelTwoGenusSlices) {
  const auto poly = fde::genus_expansion(2, 2);
  EXPECT_EQ(poly.n_slice(0), fde::variance_expansion(2));
  fde::GenusPolynomial next;
  next.add(Monomial{0, 1, {4}}, 20);
  next.add(Monomial{0, 2, {1, 3}}, 16);
  next.add(Monomial{0, 2, {2, 2}}, 4);
  EXPECT_EQ(poly.n_slice(-1), next);
  fde::GenusPolynomial last;
  last.add(Monomial{0, 1, {4}}, 20);
  EXPECT_EQ(poly.n_slice(-2), last);
}

TEST(FdeVariance, LevelThreeOnRequest) {
  EXPECT_THROW(fde::leading_variance_premaps(3), std::invalid_argument);
  const auto v = fde::fde_variance(3, 1.0, ones(6), Method::enumerative, 3);
  EXPECT_GT(v, 0.0);
  // At D = I, λ = 1 the leading variance is the sum over χ = 2 connecting premaps.
  EXPECT_DOUBLE_EQ(v, static_cast<double>(fde::leading_variance_premaps(3, 3).size()));
}

TEST(FdeVariance, ConvergenceOfFiniteNVariance) {
  const MomentVector m(std::vector<double>{1.1, 1.9, 3.7, 7.9});
  EXPECT_DOUBLE_EQ(fde::genus_cumulant(2, 1, 3, 2.0, m), fde::fde_variance(1, 2.0, m));
  auto gap = [&](int n) { return std::abs(fde::genus_cumulant(2, 2, n, 2.0, m) - fde::fde_variance(2, 2.0, m)); };
  EXPECT_GE(gap(10) / gap(100), 5.0);
  EXPECT_LT(gap(10000), 1e-2 * fde::fde_variance(2, 2.0, m));
}

TEST(FdeOracles, EnumerativeEqualsClosedFormOnRandomTuples) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> nn(1, 500);
  std::uniform_real_distribution<double> ll(0.1, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_moments(rng);
    const int n = nn(rng);
    const double lambda = ll(rng);
    for (int l = 1; l <= 2; ++l) {
      EXPECT_LE(rel(fde::fde_mean(l, n, lambda, m, Method::enumerative), fde::fde_mean(l, n, lambda, m)), 1e-12);
      EXPECT_LE(rel(fde::fde_variance(l, lambda, m, Method::enumerative), fde::fde_variance(l, lambda, m)), 1e-12);
    }
  }
}

TEST(FdeVariance, LowerBound) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ll(0.05, 30.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = random_moments(rng);
    const double lambda = ll(rng);
    for (int l = 1; l <= 2; ++l) EXPECT_GE(fde::fde_variance(l, lambda, m), std::pow(lambda * m.m(2), l));
  }
}

TEST(FdeZscore, Examples) {
  fde::FdeStatistics s{2, 68.5, 36.0, 2.0, 4};
  EXPECT_DOUBLE_EQ(fde::fde_zscore(68.5, s), 0.0);
  EXPECT_DOUBLE_EQ(fde::fde_zscore(68.5 + 6.0, s), 1.0);
  EXPECT_DOUBLE_EQ(fde::fde_zscore(70.0, s), 0.25);
  s.variance = 0.0;
  EXPECT_THROW(fde::fde_zscore(1.0, s), std::domain_error);
}

TEST(FdeStatistics, Bundle) {
  const auto s = fde::fde_statistics(2, 4, 2.0, MomentVector(std::vector<double>{1.5, 3.25, 1.0, 1.0}));
  EXPECT_EQ(s.level, 2);
  EXPECT_DOUBLE_EQ(s.mean, 68.5);
  EXPECT_EQ(s.n, 4);
}

TEST(RatioR, Examples) {
  EXPECT_NEAR(fde::ratio_R(Eigen::MatrixXd::Identity(5, 5)), 1.0, 1e-12);
  Eigen::VectorXd u = Eigen::VectorXd::Ones(9).normalized();
  EXPECT_NEAR(fde::ratio_R(u * u.transpose()), 3.0, 1e-9);
  EXPECT_NEAR(fde::ratio_R(Eigen::Vector4d(2, 1, 1, 1).asDiagonal().toDenseMatrix()), 2.0 / std::sqrt(7.0 / 4), 1e-12);
  EXPECT_THROW(fde::ratio_R(Eigen::MatrixXd::Zero(3, 3)), std::invalid_argument);
}

TEST(RatioR, ScaleInvariant) {
  const auto D = oracle::random_spd(7, 3);
  for (double c : {0.01, 3.0, 1e4}) EXPECT_NEAR(fde::ratio_R(c * D), fde::ratio_R(D), 1e-9);
  EXPECT_GE(fde::ratio_R(D), 1.0);
}

TEST(CumulantBound, Examples) {
  EXPECT_DOUBLE_EQ(fde::cumulant_bound(1, 1, 100, 1.0), 0.01);
  EXPECT_DOUBLE_EQ(fde::cumulant_bound(2, 1, 100, 1.0), 0.03);
  EXPECT_DOUBLE_EQ(fde::cumulant_bound(3, 1, 100, 2.0), 1.2);
}
