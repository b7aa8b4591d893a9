#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace fdez::permu {

/// Bijection of the signed ground set ±[n] = {-n, ..., -1, 1, ..., n}.
///
/// Cycles are reported in canonical form: each cycle starts at its element of
/// smallest absolute value (the positive one on a tie), and cycles are sorted
/// by that first element under the same order.
class SignedPermutation {
 public:
  static SignedPermutation identity(int n);

  /// Points not listed in any cycle are fixed. Throws std::invalid_argument
  /// on out-of-range points or repeated points.
  static SignedPermutation from_cycles(int n,
                                       const std::vector<std::vector<int>>& cycles);

  /// `images[index_of(x)]` is the image of x, with points ordered
  /// -n..-1, 1..n. Throws std::invalid_argument if not a bijection.
  static SignedPermutation from_images(int n, std::vector<int> images);

  int size() const { return n_; }
  int operator()(int x) const;

  SignedPermutation inverse() const;

  /// All cycles including fixed points, canonical order.
  std::vector<std::vector<int>> cycles() const;
  std::size_t cycle_count() const;
  bool is_identity() const;

  /// "(1,2)(-1,-2)"; fixed points omitted; the identity renders as "id".
  std::string to_string() const;

  friend bool operator==(const SignedPermutation&,
                         const SignedPermutation&) = default;
  friend auto operator<=>(const SignedPermutation&,
                          const SignedPermutation&) = default;

  static std::size_t index_of(int n, int x);

 private:
  SignedPermutation(int n, std::vector<int> images)
      : n_(n), images_(std::move(images)) {}

  int n_ = 0;
  std::vector<int> images_;
};

/// Order on signed points used for canonical forms: 1, -1, 2, -2, ...
inline int canonical_rank(int x) { return x > 0 ? 2 * x - 1 : -2 * x; }

/// Points of ±[n] in canonical order.
std::vector<int> signed_points(int n);

/// s∘t, i.e. x ↦ s(t(x)).
SignedPermutation compose(const SignedPermutation& s, const SignedPermutation& t);

inline SignedPermutation operator*(const SignedPermutation& s,
                                   const SignedPermutation& t) {
  return compose(s, t);
}

/// The involution k ↔ -k on ±[n].
SignedPermutation delta(int n);

/// π(k) = -π⁻¹(-k) for all k, and no cycle holds both k and -k.
bool is_premap(const SignedPermutation& s);

class Premap {
 public:
  /// Throws std::invalid_argument if `s` fails either premap condition.
  explicit Premap(SignedPermutation s);

  const SignedPermutation& permutation() const { return perm_; }
  int size() const { return perm_.size(); }
  int operator()(int x) const { return perm_(x); }
  std::string to_string() const { return perm_.to_string(); }

  friend bool operator==(const Premap&, const Premap&) = default;

 private:
  struct Trusted {};
  Premap(Trusted, SignedPermutation s) : perm_(std::move(s)) {}
  friend void for_each_premap(int, const std::function<void(const Premap&)>&, int);

  SignedPermutation perm_;
};

inline constexpr int kDefaultPremapBound = 8;

/// (2n-1)!!, the number of premaps on ±[n].
std::uint64_t premap_count(int n);

/// Visits every premap on ±[n] in a fixed order. Throws
/// std::invalid_argument when n < 1 or n > bound.
void for_each_premap(int n, const std::function<void(const Premap&)>& visit,
                     int bound = kDefaultPremapBound);

std::vector<Premap> enumerate_premaps(int n, int bound = kDefaultPremapBound);

/// The cycles of a signed permutation whose smallest-|x| element is positive,
/// i.e. [π/2] together with the permutation π/2 they generate.
struct ParticularPart {
  std::vector<int> elements;             // canonical order
  std::vector<std::vector<int>> cycles;  // canonical, fixed points kept

  std::size_t cycle_count() const { return cycles.size(); }
  /// Cycle lengths, ascending.
  std::vector<int> cycle_type() const;
  /// Same as SignedPermutation::to_string but singletons are written out,
  /// since they carry support information: "(1)(2,-3,-4)".
  std::string to_string() const;
};

ParticularPart particular_part(const SignedPermutation& s);
inline ParticularPart particular_part(const Premap& p) {
  return particular_part(p.permutation());
}

/// A permutation of [l] in one-line form: images[k-1] = g(k).
using Permutation = std::vector<int>;

/// Throws std::invalid_argument unless `g` is a bijection of [g.size()].
void check_permutation(std::span<const int> g);

/// (1,...,l)(l+1,...,2l)...((r-1)l+1,...,rl) in one-line form.
Permutation block_cycles(int l, int r);

struct GammaPair {
  SignedPermutation plus;
  SignedPermutation minus;
};

/// γ₊ acts as g on [l] and fixes -[l]; γ₋ fixes [l] and sends -k to -g(k).
GammaPair gamma_pm(std::span<const int> g);

/// χ(γ, π) = #((γ₊γ₋⁻¹)/2) + #(π/2) + #(γ₋⁻¹πγ₊/2) - m on ±[m].
int euler_char(std::span<const int> g, const Premap& p);

}  // namespace fdez::permu
