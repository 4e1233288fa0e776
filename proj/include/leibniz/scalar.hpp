#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace leibniz {

// Exact rational coefficient. mpq_class keeps values canonical (lowest terms,
// positive denominator) as long as every constructor path calls
// canonicalize(), which make_scalar() does.
using Scalar = mpq_class;
using Vector = std::vector<Scalar>;

Scalar make_scalar(long num, long den = 1);

// Parses "p", "-p" or "p/q" with arbitrary-size integers.
Scalar parse_scalar(std::string_view text);

// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Scalar& value);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t index);
bool is_zero(const Vector& v);

// Total order used wherever a deterministic choice between parameter
// vectors is needed: nonzero values precede zero, nonzero values compare by
// value.
bool canonical_less(const Scalar& a, const Scalar& b);
bool canonical_less(const Vector& a, const Vector& b);

std::string to_string(const Vector& v);

}  // namespace leibniz
