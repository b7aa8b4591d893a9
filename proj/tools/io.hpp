#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "fdez/arma2d.hpp"

namespace fdez::cli {

/// Malformed kernel or data file (exit code 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// AR kernel with a zero of P in the closed unit ball (exit code 4).
class NonReversibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A kernel file holds one block (MA) or two blocks separated by a blank
/// line (AR first, then MA). A block is a "q1 q2" header followed by q1
/// rows of q2 whitespace-separated decimals.
struct KernelSpec {
  std::optional<Eigen::MatrixXd> ar;
  Eigen::MatrixXd ma;

  bool is_arma() const { return ar.has_value(); }
};

KernelSpec parse_kernel_text(const std::string& text);
KernelSpec read_kernel_file(const std::string& path);
/// Reads --ar and --ma from separate single-block files.
KernelSpec read_kernel_pair(const std::string& ar_path, const std::string& ma_path);

std::string format_kernel(const Eigen::MatrixXd& k);
std::string format_kernel(const KernelSpec& spec);

/// Data CSV: one row per pixel r = (h-1)W + w, one column per sample.
Eigen::MatrixXd parse_data_csv(const std::string& text);
Eigen::MatrixXd read_data_csv(const std::string& path);
void write_data_csv(std::ostream& os, const Eigen::MatrixXd& X);

struct ReversibilityOptions {
  int grid = arma2d::kDefaultReversibilityGrid;
  double tol = arma2d::kDefaultReversibilityTol;
};

/// The MA kernel to test against: the MA block itself, or the o×o expansion
/// of Q/P for an ARMA spec. Throws NonReversibleError for an AR kernel that
/// fails the reversibility check, and ParseError when a11 != 1 or b11 == 0.
arma2d::MAKernel resolve_ma(const KernelSpec& spec, int max_order,
                            const ReversibilityOptions& rev = {});

std::string read_text_file(const std::string& path);

}  // namespace fdez::cli
