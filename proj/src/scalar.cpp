#include "leibniz/scalar.hpp"

#include <algorithm>
#include <sstream>

#include "leibniz/errors.hpp"

namespace leibniz {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kDimension: return "dimension_error";
    case ErrorCode::kNotInClass: return "not_in_class";
    case ErrorCode::kInconsistentForm: return "inconsistent_form";
    case ErrorCode::kUnsupportedField: return "unsupported_field";
    case ErrorCode::kNotAnIdeal: return "not_an_ideal";
    case ErrorCode::kSingular: return "singular_matrix";
    case ErrorCode::kSchema: return "schema_error";
    case ErrorCode::kBudget: return "budget_error";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kInternal: return "internal_error";
  }
  return "unknown";
}

Scalar make_scalar(long num, long den) {
  if (den == 0) throw InvalidArgumentError("zero denominator");
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

mpz_class parse_integer(std::string_view s) {
  if (!valid_integer(s)) throw InvalidArgumentError("malformed integer '" + std::string(s) + "'");
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  auto slash = text.find('/');
  Scalar s;
  if (slash == std::string_view::npos) {
    s = Scalar(parse_integer(text));
  } else {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InvalidArgumentError("zero denominator in '" + std::string(text) + "'");
    s = Scalar(num, den);
    s.canonicalize();
  }
  return s;
}

std::string to_string(const Scalar& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Vector zero_vector(std::size_t n) { return Vector(n, Scalar(0)); }

Vector unit_vector(std::size_t n, std::size_t index) {
  Vector v(n, Scalar(0));
  v.at(index) = 1;
  return v;
}

bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

bool canonical_less(const Scalar& a, const Scalar& b) {
  bool za = sgn(a) == 0, zb = sgn(b) == 0;
  if (za != zb) return zb;
  if (za) return false;
  return a < b;
}

bool canonical_less(const Vector& a, const Vector& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (canonical_less(a[i], b[i])) return true;
    if (canonical_less(b[i], a[i])) return false;
  }
  return a.size() < b.size();
}

std::string to_string(const Vector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << to_string(v[i]);
  }
  os << ')';
  return os.str();
}

}  // namespace leibniz
