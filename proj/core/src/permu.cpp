#include "fdez/permu.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace fdez::permu {

namespace {

void check_size(int n) {
  if (n < 1) throw std::invalid_argument("signed ground set needs n >= 1");
}

bool in_range(int n, int x) { return x != 0 && std::abs(x) <= n; }

bool canonical_less(int a, int b) { return canonical_rank(a) < canonical_rank(b); }

void write_cycle(std::ostringstream& os, const std::vector<int>& c) {
  os << '(';
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << ')';
}

}  // namespace

std::size_t SignedPermutation::index_of(int n, int x) {
  return static_cast<std::size_t>(x < 0 ? x + n : x + n - 1);
}

std::vector<int> signed_points(int n) {
  check_size(n);
  std::vector<int> pts;
  pts.reserve(2 * static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    pts.push_back(k);
    pts.push_back(-k);
  }
  return pts;
}

SignedPermutation SignedPermutation::identity(int n) {
  check_size(n);
  std::vector<int> images(2 * static_cast<std::size_t>(n));
  for (int x = -n; x <= n; ++x)
    if (x != 0) images[index_of(n, x)] = x;
  return SignedPermutation(n, std::move(images));
}

SignedPermutation SignedPermutation::from_images(int n, std::vector<int> images) {
  check_size(n);
  if (images.size() != 2 * static_cast<std::size_t>(n))
    throw std::invalid_argument("image table has wrong length");
  std::vector<bool> hit(images.size(), false);
  for (int v : images) {
    if (!in_range(n, v)) throw std::invalid_argument("image out of range");
    const auto i = index_of(n, v);
    if (hit[i]) throw std::invalid_argument("image table is not a bijection");
    hit[i] = true;
  }
  return SignedPermutation(n, std::move(images));
}

SignedPermutation SignedPermutation::from_cycles(
    int n, const std::vector<std::vector<int>>& cycles) {
  auto p = identity(n);
  std::vector<bool> seen(p.images_.size(), false);
  for (const auto& c : cycles) {
    for (int x : c) {
      if (!in_range(n, x)) throw std::invalid_argument("cycle point out of range");
      auto i = index_of(n, x);
      if (seen[i]) throw std::invalid_argument("point repeated in cycle notation");
      seen[i] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i)
      p.images_[index_of(n, c[i])] = c[(i + 1) % c.size()];
  }
  return p;
}

int SignedPermutation::operator()(int x) const {
  if (!in_range(n_, x)) throw std::out_of_range("point outside ±[n]");
  return images_[index_of(n_, x)];
}

SignedPermutation SignedPermutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int x = -n_; x <= n_; ++x)
    if (x != 0) inv[index_of(n_, images_[index_of(n_, x)])] = x;
  return SignedPermutation(n_, std::move(inv));
}

std::vector<std::vector<int>> SignedPermutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size(), false);
  // Visiting points in canonical order makes each cycle start at its
  // canonical minimum and keeps cycles sorted by that minimum.
  for (int x : signed_points(n_)) {
    if (seen[index_of(n_, x)]) continue;
    std::vector<int> c;
    for (int y = x; !seen[index_of(n_, y)]; y = images_[index_of(n_, y)]) {
      seen[index_of(n_, y)] = true;
      c.push_back(y);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t SignedPermutation::cycle_count() const { return cycles().size(); }

bool SignedPermutation::is_identity() const {
  for (int x = -n_; x <= n_; ++x)
    if (x != 0 && images_[index_of(n_, x)] != x) return false;
  return true;
}

std::string SignedPermutation::to_string() const {
  if (is_identity()) return "id";
  std::ostringstream os;
  for (const auto& c : cycles())
    if (c.size() > 1) write_cycle(os, c);
  return os.str();
}

SignedPermutation compose(const SignedPermutation& s, const SignedPermutation& t) {
  if (s.size() != t.size())
    throw std::invalid_argument("compose: permutations on different ground sets");
  const int n = s.size();
  std::vector<int> images(2 * static_cast<std::size_t>(n));
  for (int x = -n; x <= n; ++x)
    if (x != 0) images[SignedPermutation::index_of(n, x)] = s(t(x));
  return SignedPermutation::from_images(n, std::move(images));
}

SignedPermutation delta(int n) {
  check_size(n);
  std::vector<std::vector<int>> cs;
  for (int k = 1; k <= n; ++k) cs.push_back({k, -k});
  return SignedPermutation::from_cycles(n, cs);
}

bool is_premap(const SignedPermutation& s) {
  const int n = s.size();
  const auto inv = s.inverse();
  for (int x = -n; x <= n; ++x)
    if (x != 0 && s(x) != -inv(-x)) return false;
  for (const auto& c : s.cycles()) {
    for (int x : c)
      if (std::find(c.begin(), c.end(), -x) != c.end()) return false;
  }
  return true;
}

Premap::Premap(SignedPermutation s) : perm_(std::move(s)) {
  if (!is_premap(perm_)) throw std::invalid_argument("not a premap: " + perm_.to_string());
}

std::uint64_t premap_count(int n) {
  check_size(n);
  std::uint64_t c = 1;
  for (int k = 2 * n - 1; k > 1; k -= 2) c *= static_cast<std::uint64_t>(k);
  return c;
}

namespace {

// Backtracking over the images of unassigned points. Setting π(x) = v
// forces π(-v) = -x; the cycle condition is checked on complete maps.
class PremapSearch {
 public:
  PremapSearch(int n, const std::function<void(const SignedPermutation&)>& leaf)
      : n_(n),
        points_(signed_points(n)),
        image_(2 * static_cast<std::size_t>(n), 0),
        used_(2 * static_cast<std::size_t>(n), false),
        leaf_(leaf) {}

  void run() { step(); }

 private:
  std::size_t idx(int x) const { return SignedPermutation::index_of(n_, x); }

  void step() {
    auto it = std::find_if(points_.begin(), points_.end(),
                           [&](int x) { return image_[idx(x)] == 0; });
    if (it == points_.end()) {
      finish();
      return;
    }
    const int x = *it;
    for (int v : points_) {
      if (used_[idx(v)] || v == -x) continue;
      // v unused implies -v unassigned, and x unassigned implies -x unused:
      // every assignment arrives together with its forced partner.
      image_[idx(x)] = v;
      image_[idx(-v)] = -x;
      used_[idx(v)] = true;
      used_[idx(-x)] = true;
      step();
      image_[idx(x)] = 0;
      image_[idx(-v)] = 0;
      used_[idx(v)] = false;
      used_[idx(-x)] = false;
    }
  }

  void finish() {
    // No cycle may contain both k and -k.
    std::vector<int> cycle_id(image_.size(), -1);
    int id = 0;
    for (int x : points_) {
      if (cycle_id[idx(x)] >= 0) continue;
      for (int y = x; cycle_id[idx(y)] < 0; y = image_[idx(y)]) cycle_id[idx(y)] = id;
      ++id;
    }
    for (int k = 1; k <= n_; ++k)
      if (cycle_id[idx(k)] == cycle_id[idx(-k)]) return;
    leaf_(SignedPermutation::from_images(n_, image_));
  }

  int n_;
  std::vector<int> points_;
  std::vector<int> image_;
  std::vector<bool> used_;
  const std::function<void(const SignedPermutation&)>& leaf_;
};

}  // namespace

void for_each_premap(int n, const std::function<void(const Premap&)>& visit, int bound) {
  check_size(n);
  if (n > bound)
    throw std::invalid_argument("premap enumeration above bound " + std::to_string(bound));
  std::function<void(const SignedPermutation&)> leaf = [&](const SignedPermutation& s) {
    visit(Premap(Premap::Trusted{}, s));
  };
  PremapSearch(n, leaf).run();
}

std::vector<Premap> enumerate_premaps(int n, int bound) {
  std::vector<Premap> out;
  for_each_premap(n, [&](const Premap& p) { out.push_back(p); }, bound);
  return out;
}

std::vector<int> ParticularPart::cycle_type() const {
  std::vector<int> t;
  for (const auto& c : cycles) t.push_back(static_cast<int>(c.size()));
  std::sort(t.begin(), t.end());
  return t;
}

std::string ParticularPart::to_string() const {
  std::ostringstream os;
  for (const auto& c : cycles) write_cycle(os, c);
  return os.str();
}

ParticularPart particular_part(const SignedPermutation& s) {
  ParticularPart out;
  for (auto& c : s.cycles()) {
    // Canonical cycles start at their smallest-|x| element.
    if (c.front() < 0) continue;
    out.elements.insert(out.elements.end(), c.begin(), c.end());
    out.cycles.push_back(std::move(c));
  }
  std::sort(out.elements.begin(), out.elements.end(), canonical_less);
  return out;
}

void check_permutation(std::span<const int> g) {
  const int l = static_cast<int>(g.size());
  if (l < 1) throw std::invalid_argument("permutation of an empty set");
  std::vector<bool> hit(g.size(), false);
  for (int v : g) {
    if (v < 1 || v > l || hit[v - 1])
      throw std::invalid_argument("not a permutation of [l]");
    hit[v - 1] = true;
  }
}

Permutation block_cycles(int l, int r) {
  if (l < 1 || r < 1) throw std::invalid_argument("block_cycles needs l, r >= 1");
  Permutation g(static_cast<std::size_t>(l) * r);
  for (int b = 0; b < r; ++b)
    for (int i = 0; i < l; ++i) g[b * l + i] = b * l + (i + 1) % l + 1;
  return g;
}

GammaPair gamma_pm(std::span<const int> g) {
  check_permutation(g);
  const int l = static_cast<int>(g.size());
  std::vector<int> plus(2 * g.size()), minus(2 * g.size());
  for (int k = 1; k <= l; ++k) {
    plus[SignedPermutation::index_of(l, k)] = g[k - 1];
    plus[SignedPermutation::index_of(l, -k)] = -k;
    minus[SignedPermutation::index_of(l, k)] = k;
    minus[SignedPermutation::index_of(l, -k)] = -g[k - 1];
  }
  return {SignedPermutation::from_images(l, std::move(plus)),
          SignedPermutation::from_images(l, std::move(minus))};
}

int euler_char(std::span<const int> g, const Premap& p) {
  const auto [plus, minus] = gamma_pm(g);
  if (p.size() != plus.size())
    throw std::invalid_argument("euler_char: γ and π live on different ground sets");
  const auto& gp = plus;
  const auto gm_inv = minus.inverse();
  const auto faces = compose(gp, gm_inv);
  const auto edges = compose(gm_inv, compose(p.permutation(), gp));
  return static_cast<int>(particular_part(faces).cycle_count() +
                          particular_part(p).cycle_count() +
                          particular_part(edges).cycle_count()) -
         p.size();
}

}  // namespace fdez::permu
