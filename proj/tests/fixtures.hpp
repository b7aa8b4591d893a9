#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "fdez/permu.hpp"

namespace fixtures {

// π/2 of the 36 connecting premaps of ±[4] with χ = 2 for γ = (1,2)(3,4).
inline const std::vector<std::string> kLevelTwoHalves = {
    "(1)(3)(2,4)",     "(1)(4)(2,3)",     "(2)(3)(1,4)",     "(2)(4)(1,3)",
    "(1,3)(2,4)",      "(1,4)(2,3)",
    "(1)(2,3,4)",      "(1)(2,4,3)",      "(2)(1,3,4)",      "(2)(1,4,3)",
    "(3)(1,2,4)",      "(3)(1,4,2)",      "(4)(1,2,3)",      "(4)(1,3,2)",
    "(1,2,3,4)",       "(1,2,4,3)",       "(1,4,3,2)",       "(1,3,4,2)",
    "(1)(3)(2,-4)",    "(1)(4)(2,-3)",    "(2)(3)(1,-4)",    "(2)(4)(1,-3)",
    "(1,-3)(2,-4)",    "(1,-4)(2,-3)",
    "(1)(2,-3,-4)",    "(1)(2,-4,-3)",    "(2)(1,-3,-4)",    "(2)(1,-4,-3)",
    "(3)(1,2,-4)",     "(3)(1,-4,2)",     "(4)(1,2,-3)",     "(4)(1,-3,2)",
    "(1,2,-3,-4)",     "(1,2,-4,-3)",     "(1,-4,-3,2)",     "(1,-3,-4,2)",
};

// Rewrites cycle notation in canonical form: each cycle rotated to its
// smallest-|x| element (positive first) and cycles sorted the same way.
inline std::string canonical_cycles(const std::string& text) {
  std::vector<std::vector<int>> cycles;
  std::size_t i = 0;
  while ((i = text.find('(', i)) != std::string::npos) {
    const auto j = text.find(')', i);
    std::vector<int> c;
    std::stringstream ss(text.substr(i + 1, j - i - 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(std::stoi(tok));
    const auto first = std::min_element(c.begin(), c.end(), [](int a, int b) {
      return fdez::permu::canonical_rank(a) < fdez::permu::canonical_rank(b);
    });
    std::rotate(c.begin(), first, c.end());
    cycles.push_back(c);
    i = j;
  }
  std::sort(cycles.begin(), cycles.end(), [](const auto& a, const auto& b) {
    return fdez::permu::canonical_rank(a[0]) < fdez::permu::canonical_rank(b[0]);
  });
  std::string out;
  for (const auto& c : cycles) {
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) out += (k ? "," : "") + std::to_string(c[k]);
    out += ')';
  }
  return out;
}

}  // namespace fixtures
