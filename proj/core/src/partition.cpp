#include "fdez/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fdez::permu {

namespace {

bool canonical_less(int a, int b) { return canonical_rank(a) < canonical_rank(b); }

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

void check_length(std::size_t k) {
  if (k == 0) throw std::invalid_argument("empty moment/cumulant sequence");
  if (k > static_cast<std::size_t>(kMaxPartitionSize))
    throw std::invalid_argument("sequence longer than the partition bound");
}

}  // namespace

SetPartition::SetPartition(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("partition has an empty block");
    std::sort(b.begin(), b.end(), canonical_less);
    ground_.insert(ground_.end(), b.begin(), b.end());
  }
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& a, const auto& b) { return canonical_less(a.front(), b.front()); });
  std::sort(ground_.begin(), ground_.end(), canonical_less);
  if (std::adjacent_find(ground_.begin(), ground_.end()) != ground_.end())
    throw std::invalid_argument("partition blocks overlap");
}

std::string SetPartition::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) os << ',';
    os << '{';
    for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
      if (j) os << ',';
      os << blocks_[i][j];
    }
    os << '}';
  }
  os << '}';
  return os.str();
}

SetPartition orbits(const SignedPermutation& s) { return SetPartition(s.cycles()); }

SetPartition signed_blocks(std::span<const int> g) {
  check_permutation(g);
  const int l = static_cast<int>(g.size());
  std::vector<bool> seen(g.size(), false);
  std::vector<std::vector<int>> blocks;
  for (int k = 1; k <= l; ++k) {
    if (seen[k - 1]) continue;
    std::vector<int> b;
    for (int y = k; !seen[y - 1]; y = g[y - 1]) {
      seen[y - 1] = true;
      b.push_back(y);
      b.push_back(-y);
    }
    blocks.push_back(std::move(b));
  }
  return SetPartition(std::move(blocks));
}

bool join_is_full(const SetPartition& p, const SetPartition& q) {
  if (p.ground() != q.ground())
    throw std::invalid_argument("join_is_full: partitions of different ground sets");
  const auto& ground = p.ground();
  std::unordered_map<int, std::size_t> pos;
  for (std::size_t i = 0; i < ground.size(); ++i) pos.emplace(ground[i], i);

  DisjointSets sets(ground.size());
  std::size_t components = ground.size();
  for (const auto* part : {&p, &q})
    for (const auto& b : part->blocks())
      for (std::size_t j = 1; j < b.size(); ++j)
        if (sets.unite(pos.at(b[0]), pos.at(b[j]))) --components;
  return components <= 1;
}

void for_each_partition_labels(
    int n, const std::function<void(std::span<const int>, int)>& visit) {
  if (n < 1) throw std::invalid_argument("partitions of [n] need n >= 1");
  if (n > kMaxPartitionSize)
    throw std::invalid_argument("partition enumeration above bound " +
                                std::to_string(kMaxPartitionSize));
  // Restricted growth strings: labels[0] = 0, labels[i] <= 1 + max(labels[<i]).
  std::vector<int> labels(n, 0), prefix_max(n, 0);
  while (true) {
    visit(labels, prefix_max[n - 1] + 1);
    int i = n - 1;
    while (i > 0 && labels[i] == prefix_max[i - 1] + 1) --i;
    if (i == 0) return;
    ++labels[i];
    prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
    for (int j = i + 1; j < n; ++j) {
      labels[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
}

std::vector<SetPartition> enumerate_partitions(int n) {
  std::vector<SetPartition> out;
  for_each_partition_labels(n, [&](std::span<const int> labels, int blocks) {
    std::vector<std::vector<int>> bs(blocks);
    for (std::size_t i = 0; i < labels.size(); ++i)
      bs[labels[i]].push_back(static_cast<int>(i) + 1);
    out.emplace_back(std::move(bs));
  });
  return out;
}

std::vector<double> cumulants_from_moments(std::span<const double> moments) {
  check_length(moments.size());
  const int k = static_cast<int>(moments.size());
  // μ(π, 1_n) = (-1)^{|π|-1} (|π|-1)!
  std::vector<double> mobius(k + 1, 1.0);
  for (int b = 2; b <= k; ++b) mobius[b] = -mobius[b - 1] * (b - 1);

  std::vector<double> out(k);
  std::vector<int> sizes;
  for (int n = 1; n <= k; ++n) {
    double acc = 0.0;
    for_each_partition_labels(n, [&](std::span<const int> labels, int blocks) {
      sizes.assign(blocks, 0);
      for (int l : labels) ++sizes[l];
      double term = mobius[blocks];
      for (int s : sizes) term *= moments[s - 1];
      acc += term;
    });
    out[n - 1] = acc;
  }
  return out;
}

std::vector<double> moments_from_cumulants(std::span<const double> cumulants) {
  check_length(cumulants.size());
  const int k = static_cast<int>(cumulants.size());
  std::vector<double> out(k);
  std::vector<int> sizes;
  for (int n = 1; n <= k; ++n) {
    double acc = 0.0;
    for_each_partition_labels(n, [&](std::span<const int> labels, int blocks) {
      sizes.assign(blocks, 0);
      for (int l : labels) ++sizes[l];
      double term = 1.0;
      for (int s : sizes) term *= cumulants[s - 1];
      acc += term;
    });
    out[n - 1] = acc;
  }
  return out;
}

}  // namespace fdez::permu
