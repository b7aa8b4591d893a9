#include "fdez/moments.hpp"

#include <stdexcept>
#include <string>

namespace fdez {

MomentVector::MomentVector(std::vector<double> values) : values_(std::move(values)) {}

double MomentVector::m(int k) const {
  if (k < 1 || k > size())
    throw std::out_of_range("missing moment of order " + std::to_string(k));
  return values_[k - 1];
}

}  // namespace fdez
