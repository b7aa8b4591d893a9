#pragma once

#include <span>
#include <vector>

namespace fdez {

/// Normalized trace powers m_k = tr(D^k), k = 1..size().
class MomentVector {
 public:
  MomentVector() = default;
  explicit MomentVector(std::vector<double> values);

  /// 1-based; throws std::out_of_range when order k is not available.
  double m(int k) const;
  int size() const { return static_cast<int>(values_.size()); }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const MomentVector&, const MomentVector&) = default;

 private:
  std::vector<double> values_;
};

}  // namespace fdez
