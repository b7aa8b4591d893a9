#include "fdez/fde.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fdez/partition.hpp"
#include "fdez/wishart.hpp"

namespace fdez::fde {

using permu::Premap;

double tr_sigma(const MomentVector& moments, std::span<const int> cycle_type) {
  double acc = 1.0;
  for (int len : cycle_type) acc *= moments.m(len);
  return acc;
}

double tr_sigma(const MomentVector& moments, const permu::ParticularPart& half) {
  const auto t = half.cycle_type();
  return tr_sigma(moments, t);
}

double tr_sigma(const MomentVector& moments, const permu::SignedPermutation& s) {
  double acc = 1.0;
  for (const auto& c : s.cycles()) acc *= moments.m(static_cast<int>(c.size()));
  return acc;
}

void GenusPolynomial::add(const Monomial& m, std::int64_t coefficient) {
  auto& c = terms_[m];
  c += coefficient;
  if (c == 0) terms_.erase(m);
}

std::int64_t GenusPolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

double GenusPolynomial::evaluate(double n, double lambda, const MomentVector& moments) const {
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    acc += static_cast<double>(c) * std::pow(n, m.n_power) * std::pow(lambda, m.lambda_power) *
           tr_sigma(moments, m.cycle_type);
  }
  return acc;
}

GenusPolynomial GenusPolynomial::n_slice(int p) const {
  GenusPolynomial out;
  for (const auto& [m, c] : terms_) {
    if (m.n_power != p) continue;
    Monomial k = m;
    k.n_power = 0;
    out.add(k, c);
  }
  return out;
}

namespace {

template <typename Visit>
void for_each_connected_premap(int r, int l, Visit&& visit) {
  const auto gamma = permu::block_cycles(l, r);
  const auto blocks = permu::signed_blocks(gamma);
  permu::for_each_premap(r * l, [&](const Premap& p) {
    if (r > 1 && !permu::join_is_full(permu::orbits(p.permutation()), blocks)) return;
    visit(gamma, p);
  });
}

GenusPolynomial expansion_unchecked(int r, int l) {
  GenusPolynomial poly;
  for_each_connected_premap(r, l, [&](const permu::Permutation& gamma, const Premap& p) {
    const int chi = permu::euler_char(gamma, p);
    const auto half = permu::particular_part(p);
    poly.add(Monomial{chi - r, static_cast<int>(half.cycle_count()), half.cycle_type()});
  });
  return poly;
}

void check_level(int l) {
  if (l < 1) throw std::invalid_argument("trace power level must be >= 1");
}

}  // namespace

GenusPolynomial genus_expansion(int r, int l, int max_size) {
  if (r < 1) throw std::invalid_argument("cumulant order must be >= 1");
  check_level(l);
  if (max_size > kMaxGenusSize)
    throw std::invalid_argument("genus expansion size cap is " + std::to_string(kMaxGenusSize));
  if (r * l > max_size)
    throw std::invalid_argument("genus expansion needs l*r <= " + std::to_string(max_size));
  return expansion_unchecked(r, l);
}

double genus_cumulant(int r, int l, int n, double lambda, const MomentVector& moments,
                      int max_size) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  return genus_expansion(r, l, max_size).evaluate(n, lambda, moments);
}

std::vector<Premap> leading_variance_premaps(int l, int max_level) {
  check_level(l);
  if (l > max_level || max_level > 3)
    throw std::invalid_argument("variance enumeration supports l <= 3 on request, 2 by default");
  std::vector<Premap> out;
  for_each_connected_premap(2, l, [&](const permu::Permutation& gamma, const Premap& p) {
    if (permu::euler_char(gamma, p) == 2) out.push_back(p);
  });
  return out;
}

GenusPolynomial mean_expansion(int l) {
  check_level(l);
  if (l > 4) throw std::invalid_argument("enumerative mean supports l <= 4");
  auto full = expansion_unchecked(1, l);
  GenusPolynomial out;
  for (const auto& [m, c] : full.terms())
    if (m.n_power >= 0) out.add(m, c);
  return out;
}

GenusPolynomial variance_expansion(int l, int max_level) {
  GenusPolynomial out;
  for (const auto& p : leading_variance_premaps(l, max_level)) {
    const auto half = permu::particular_part(p);
    out.add(Monomial{0, static_cast<int>(half.cycle_count()), half.cycle_type()});
  }
  return out;
}

double fde_mean(int l, int n, double lambda, const MomentVector& moments, Method method) {
  check_level(l);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (method == Method::enumerative) return mean_expansion(l).evaluate(n, lambda, moments);
  const double m1 = moments.m(1);
  switch (l) {
    case 1:
      return n * lambda * m1;
    case 2: {
      const double m2 = moments.m(2);
      return n * (lambda * m2 + lambda * lambda * m1 * m1) + lambda * m2;
    }
    default:
      throw std::invalid_argument("closed-form mean only for l in {1, 2}");
  }
}

double fde_variance(int l, double lambda, const MomentVector& moments, Method method,
                    int max_level) {
  check_level(l);
  double v = 0.0;
  if (method == Method::enumerative) {
    v = variance_expansion(l, max_level).evaluate(1.0, lambda, moments);
  } else if (l == 1) {
    v = 2.0 * lambda * moments.m(2);
  } else if (l == 2) {
    const double m1 = moments.m(1), m2 = moments.m(2), m3 = moments.m(3), m4 = moments.m(4);
    const double l2 = lambda * lambda;
    v = 2.0 * (4.0 * l2 * lambda * m1 * m1 * m2 + 2.0 * l2 * m2 * m2 + 8.0 * l2 * m1 * m3 +
               4.0 * lambda * m4);
  } else {
    throw std::invalid_argument("closed-form variance only for l in {1, 2}");
  }
  if (!(v > 0.0))
    throw std::domain_error("FDE variance is not positive (degenerate weight matrix)");
  return v;
}

FdeStatistics fde_statistics(int l, int n, double lambda, const MomentVector& moments,
                             Method method) {
  return {l, fde_mean(l, n, lambda, moments, method), fde_variance(l, lambda, moments, method),
          lambda, n};
}

double fde_zscore(double observed_trace, const FdeStatistics& stats) {
  if (!(stats.variance > 0.0)) throw std::domain_error("z-score needs positive variance");
  return (observed_trace - stats.mean) / std::sqrt(stats.variance);
}

double ratio_R(const Eigen::MatrixXd& D) {
  if (D.rows() != D.cols() || D.rows() == 0)
    throw std::invalid_argument("ratio_R needs a non-empty square matrix");
  const double tr2 = D.squaredNorm() / static_cast<double>(D.rows());
  if (tr2 == 0.0) throw std::invalid_argument("ratio_R of the zero matrix");
  return wishart::spectral_norm(D) / std::sqrt(tr2);
}

double cumulant_bound(int r, int l, int n, double R) {
  if (r < 1) throw std::invalid_argument("cumulant order must be >= 1");
  check_level(l);
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const int size = r * l;
  double count = 1.0;
  for (int k = 2 * size - 1; k > 1; k -= 2) count *= k;
  const int n_power = r <= 2 ? 1 : r - 2;
  return std::pow(R, size) * count / std::pow(static_cast<double>(n), n_power);
}

}  // namespace fdez::fde
