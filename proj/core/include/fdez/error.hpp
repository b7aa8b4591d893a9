#pragma once

#include <stdexcept>

namespace fdez {

/// Shapes that violate a model constraint, e.g. d < n or a data matrix whose
/// size disagrees with (H, W, N).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fdez
