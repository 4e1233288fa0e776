#pragma once

#include "leibniz/algebra.hpp"

namespace fixtures {

using leibniz::Algebra;
using leibniz::Scalar;

// [e,x] = e
inline Algebra l2() {
  Algebra a({"e", "x"});
  a.set_coeff(0, 1, 0, Scalar(1));
  return a;
}

// [e,x] = e, [x,e] = -e
inline Algebra r2() {
  Algebra a = l2();
  a.set_coeff(1, 0, 0, Scalar(-1));
  return a;
}

inline Algebra abelian(std::size_t n) { return Algebra(n); }

// sl2 in the basis h, e, f.
inline Algebra sl2() {
  Algebra a({"h", "e", "f"});
  a.set_coeff(1, 2, 0, Scalar(1));
  a.set_coeff(2, 1, 0, Scalar(-1));
  a.set_coeff(0, 1, 1, Scalar(2));
  a.set_coeff(1, 0, 1, Scalar(-2));
  a.set_coeff(0, 2, 2, Scalar(-2));
  a.set_coeff(2, 0, 2, Scalar(2));
  return a;
}

}  // namespace fixtures
