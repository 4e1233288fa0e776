#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "leibniz/algebra.hpp"
#include "leibniz/basis_change.hpp"
#include "leibniz/families.hpp"
#include "leibniz/invariants.hpp"
#include "leibniz/normalizer.hpp"

namespace leibniz {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// AlgebraFile: {schema_version, dim, basis, products: [{left, right,
// value: [{idx, num, den}]}]}; indices 0-based, absent pairs are zero.
Json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const Json& j);  // SchemaError on any violation
Algebra parse_algebra_file(std::string_view text);
std::string dump(const Json& j);  // two-space indent, trailing newline

// "1,-2/3,0" -> vector; empty text gives an empty vector.
Vector parse_params(std::string_view text);
std::vector<std::size_t> parse_indices(std::string_view text);

Json scalar_json(const Scalar& v);
Json vector_json(const Vector& v);
Json matrix_json(const Matrix& m);
Json spec_json(const FamilySpec& s);
Json form_json(const GeneralForm& f);
Json change_json(const BasisChange& c);
Json profile_json(const InvariantProfile& p);

}  // namespace leibniz
