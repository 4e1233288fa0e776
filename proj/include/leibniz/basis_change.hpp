#pragma once

#include <string>
#include <vector>

#include "leibniz/matrix.hpp"

namespace leibniz {

// Rows of matrix are the new basis vectors in old coordinates; log names the
// steps that produced it.
struct BasisChange {
  Matrix matrix;
  std::vector<std::string> log;

  static BasisChange identity(std::size_t n) { return {Matrix::identity(n), {}}; }
};

// First apply `first`, then `second` (whose rows are written in the basis
// produced by `first`).
inline BasisChange then(const BasisChange& first, const BasisChange& second) {
  BasisChange out{second.matrix * first.matrix, first.log};
  out.log.insert(out.log.end(), second.log.begin(), second.log.end());
  return out;
}

}  // namespace leibniz
