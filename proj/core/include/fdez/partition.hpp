#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fdez/permu.hpp"

namespace fdez::permu {

/// Partition of a finite set of integers into disjoint non-empty blocks.
/// Blocks are stored sorted in canonical point order, and sorted among
/// themselves by their first element.
class SetPartition {
 public:
  /// Ground set is the union of the blocks. Throws std::invalid_argument on
  /// empty blocks or overlapping blocks.
  explicit SetPartition(std::vector<std::vector<int>> blocks);

  const std::vector<int>& ground() const { return ground_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }

  std::string to_string() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  std::vector<int> ground_;
  std::vector<std::vector<int>> blocks_;
};

/// Partition of ±[n] into the orbits of s.
SetPartition orbits(const SignedPermutation& s);

/// {±V_1, ..., ±V_r} where V_j are the orbits of g on [l].
SetPartition signed_blocks(std::span<const int> g);

/// True iff the join p ∨ q is the one-block partition. Throws
/// std::invalid_argument if the ground sets differ.
bool join_is_full(const SetPartition& p, const SetPartition& q);

inline constexpr int kMaxPartitionSize = 12;

/// Visits all partitions of [n] as restricted growth strings:
/// labels[i] is the 0-based block of element i+1.
void for_each_partition_labels(
    int n, const std::function<void(std::span<const int> labels, int blocks)>& visit);

std::vector<SetPartition> enumerate_partitions(int n);

/// Classical cumulants κ_1..κ_k from raw moments m_1..m_k, by Möbius
/// inversion over the partition lattice.
std::vector<double> cumulants_from_moments(std::span<const double> moments);

/// m_n = Σ_{π ∈ P(n)} Π_{V ∈ π} κ_|V|.
std::vector<double> moments_from_cumulants(std::span<const double> cumulants);

}  // namespace fdez::permu
