#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "fdez/moments.hpp"
#include "fdez/permu.hpp"

namespace fdez::fde {

/// tr_σ[D] for a cycle type: Π_j m_{len_j}(D).
double tr_sigma(const MomentVector& moments, std::span<const int> cycle_type);
double tr_sigma(const MomentVector& moments, const permu::ParticularPart& half);
/// All cycles of s, fixed points included, contribute a factor.
double tr_sigma(const MomentVector& moments, const permu::SignedPermutation& s);

/// One monomial n^{n_power} λ^{lambda_power} Π m_{cycle_type[j]}.
struct Monomial {
  int n_power = 0;
  int lambda_power = 0;
  std::vector<int> cycle_type;  // ascending

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Polynomial with exact integer coefficients, collected from premap sums.
class GenusPolynomial {
 public:
  void add(const Monomial& m, std::int64_t coefficient = 1);
  const std::map<Monomial, std::int64_t>& terms() const { return terms_; }
  std::int64_t coefficient(const Monomial& m) const;

  double evaluate(double n, double lambda, const MomentVector& moments) const;

  /// Terms with n_power == p, with the n factor dropped.
  GenusPolynomial n_slice(int p) const;

  friend bool operator==(const GenusPolynomial&, const GenusPolynomial&) = default;

 private:
  std::map<Monomial, std::int64_t> terms_;
};

inline constexpr int kDefaultGenusSize = 4;
inline constexpr int kMaxGenusSize = 5;

/// Exact finite-n expansion of κ_r[Tr(W^l)] as a polynomial in n, λ and the
/// moments of D: the sum over premaps π of ±[lr] whose orbits connect the
/// signed blocks of γ = (1..l)(l+1..2l)..., of n^{χ(γ,π) - r} λ^{#(π/2)}
/// tr_{π/2}[D]. Requires l·r <= max_size <= kMaxGenusSize.
GenusPolynomial genus_expansion(int r, int l, int max_size = kDefaultGenusSize);

double genus_cumulant(int r, int l, int n, double lambda, const MomentVector& moments,
                      int max_size = kDefaultGenusSize);

/// Premaps of ±[2l] that connect {±V_1, ±V_2} with χ = 2: the index set of
/// the leading variance term.
std::vector<permu::Premap> leading_variance_premaps(int l, int max_level = 2);

/// μ_l^□ = n α_l + β_l as a polynomial (χ = 2 and χ = 1 premaps of ±[l]).
GenusPolynomial mean_expansion(int l);
/// Var_l^□ as a polynomial in λ and moments (no n dependence).
GenusPolynomial variance_expansion(int l, int max_level = 2);

enum class Method { closed_form, enumerative };

/// Closed form for l ∈ {1, 2}; enumerative over premaps of ±[l] for l <= 4.
double fde_mean(int l, int n, double lambda, const MomentVector& moments,
                Method method = Method::closed_form);

/// Closed form for l ∈ {1, 2}; enumerative over premaps of ±[2l] for
/// l <= max_level (2 by default, 3 on request). Throws std::domain_error if
/// the result is not positive, which signals D = 0 or invalid moments.
double fde_variance(int l, double lambda, const MomentVector& moments,
                    Method method = Method::closed_form, int max_level = 2);

struct FdeStatistics {
  int level = 1;
  double mean = 0.0;
  double variance = 0.0;
  double lambda = 0.0;
  int n = 0;
};

FdeStatistics fde_statistics(int l, int n, double lambda, const MomentVector& moments,
                             Method method = Method::closed_form);

/// (observed − mean) / √variance; throws std::domain_error on variance <= 0.
double fde_zscore(double observed_trace, const FdeStatistics& stats);

/// ‖D‖ / √tr(D²) with tr normalized; throws std::invalid_argument for D = 0.
double ratio_R(const Eigen::MatrixXd& D);

/// R^{rl} |PM_{rl}| / n^{r-2} for r >= 3, and R^{rl} |PM_{rl}| / n for r <= 2.
double cumulant_bound(int r, int l, int n, double R);

}  // namespace fdez::fde
