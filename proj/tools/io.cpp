#include "io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "fdez/gof.hpp"

namespace fdez::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const auto start = i;
    while (i < s.size() && !(s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, std::size_t line) {
  tok = trim(tok);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  T v{};
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line) + ": cannot parse '" + std::string(tok) + "'");
  return v;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  auto ls = split(text, '\n');
  if (!ls.empty() && trim(ls.back()).empty()) ls.pop_back();
  return ls;
}

Eigen::MatrixXd parse_block(const std::vector<std::string_view>& lines, std::size_t& i) {
  const auto header = tokens(lines[i]);
  if (header.size() != 2) throw ParseError("line " + std::to_string(i + 1) + ": expected 'q1 q2'");
  const int rows = parse_number<int>(header[0], i + 1);
  const int cols = parse_number<int>(header[1], i + 1);
  if (rows < 1 || cols < 1)
    throw ParseError("line " + std::to_string(i + 1) + ": kernel sizes must be positive");
  ++i;
  Eigen::MatrixXd k(rows, cols);
  for (int r = 0; r < rows; ++r, ++i) {
    if (i >= lines.size()) throw ParseError("kernel block ends early");
    const auto row = tokens(lines[i]);
    if (static_cast<int>(row.size()) != cols)
      throw ParseError("line " + std::to_string(i + 1) + ": expected " + std::to_string(cols) +
                       " values");
    for (int c = 0; c < cols; ++c) k(r, c) = parse_number<double>(row[c], i + 1);
  }
  return k;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KernelSpec parse_kernel_text(const std::string& text) {
  const auto lines = lines_of(text);
  std::vector<Eigen::MatrixXd> blocks;
  std::size_t i = 0;
  while (true) {
    bool separated = blocks.empty();
    while (i < lines.size() && trim(lines[i]).empty()) {
      ++i;
      separated = true;
    }
    if (i >= lines.size()) break;
    if (!separated) throw ParseError("line " + std::to_string(i + 1) + ": expected a blank line");
    if (blocks.size() == 2) throw ParseError("kernel file has more than two blocks");
    blocks.push_back(parse_block(lines, i));
  }
  if (blocks.empty()) throw ParseError("kernel file is empty");
  KernelSpec spec;
  if (blocks.size() == 2) {
    spec.ar = std::move(blocks[0]);
    spec.ma = std::move(blocks[1]);
  } else {
    spec.ma = std::move(blocks[0]);
  }
  return spec;
}

KernelSpec read_kernel_file(const std::string& path) { return parse_kernel_text(read_text_file(path)); }

KernelSpec read_kernel_pair(const std::string& ar_path, const std::string& ma_path) {
  auto ar = read_kernel_file(ar_path);
  auto ma = read_kernel_file(ma_path);
  if (ar.is_arma() || ma.is_arma()) throw ParseError("--ar and --ma files take one block each");
  KernelSpec spec;
  spec.ar = std::move(ar.ma);
  spec.ma = std::move(ma.ma);
  return spec;
}

std::string format_kernel(const Eigen::MatrixXd& k) {
  std::ostringstream os;
  os << k.rows() << ' ' << k.cols() << '\n';
  for (Eigen::Index r = 0; r < k.rows(); ++r) {
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
      if (c) os << ' ';
      os << gof::format_double(k(r, c));
    }
    os << '\n';
  }
  return os.str();
}

std::string format_kernel(const KernelSpec& spec) {
  if (!spec.is_arma()) return format_kernel(spec.ma);
  return format_kernel(*spec.ar) + "\n" + format_kernel(spec.ma);
}

Eigen::MatrixXd parse_data_csv(const std::string& text) {
  const auto lines = lines_of(text);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) throw ParseError("line " + std::to_string(i + 1) + ": empty row");
    std::vector<double> row;
    for (auto tok : split(lines[i], ',')) row.push_back(parse_number<double>(tok, i + 1));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("line " + std::to_string(i + 1) + ": ragged row");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("data file is empty");
  Eigen::MatrixXd X(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) X(r, c) = rows[r][c];
  return X;
}

Eigen::MatrixXd read_data_csv(const std::string& path) { return parse_data_csv(read_text_file(path)); }

void write_data_csv(std::ostream& os, const Eigen::MatrixXd& X) {
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
      if (c) os << ',';
      os << gof::format_double(X(r, c));
    }
    os << '\n';
  }
}

arma2d::MAKernel resolve_ma(const KernelSpec& spec, int max_order, const ReversibilityOptions& rev) {
  try {
    if (!spec.is_arma()) return arma2d::MAKernel(spec.ma);
    const arma2d::ARMAKernelPair pair(*spec.ar, spec.ma);
    if (!arma2d::is_reversible(pair.ar(), rev.grid, rev.tol))
      throw NonReversibleError("AR kernel is not reversible");
    return arma2d::MAKernel(arma2d::arma_to_ma(pair, max_order, max_order));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace fdez::cli
