#include "leibniz/io.hpp"

#include <set>

#include "leibniz/errors.hpp"

namespace leibniz {

namespace {

mpz_class parse_integer(const Json& j, const char* what) {
  if (!j.is_string()) throw SchemaError(std::string(what) + " must be a decimal string");
  const std::string s = j.get<std::string>();
  std::string_view digits = s;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
    throw SchemaError(std::string(what) + " is not an integer: '" + s + "'");
  return mpz_class(s, 10);
}

std::size_t parse_index(const Json& j, std::size_t dim, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < 0 || static_cast<unsigned long long>(v) >= dim)
    throw SchemaError(std::string(what) + " " + std::to_string(v) + " outside [0, " + std::to_string(dim) + ")");
  return static_cast<std::size_t>(v);
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw SchemaError(std::string("missing field '") + name + "'");
  return j.at(name);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

Json algebra_to_json(const Algebra& a) {
  const std::size_t n = a.dim();
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["dim"] = n;
  j["basis"] = a.labels();
  Json products = Json::array();
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t r = 0; r < n; ++r) {
      if (a.product_is_zero(l, r)) continue;
      Json value = Json::array();
      for (std::size_t m = 0; m < n; ++m) {
        const Scalar& c = a.coeff(l, r, m);
        if (sgn(c) == 0) continue;
        value.push_back({{"idx", m}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
      }
      products.push_back({{"left", l}, {"right", r}, {"value", value}});
    }
  j["products"] = products;
  return j;
}

Algebra algebra_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("algebra file must be a JSON object");
  const Json& version = field(j, "schema_version");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion)
    throw SchemaError(std::string("unsupported schema_version; expected \"") + kSchemaVersion + "\"");
  const Json& dim_j = field(j, "dim");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) throw SchemaError("dim must be a positive integer");
  const auto n = static_cast<std::size_t>(dim_j.get<long long>());

  const Json& basis = field(j, "basis");
  if (!basis.is_array() || basis.size() != n) throw SchemaError("basis must list dim labels");
  std::vector<std::string> labels;
  for (const auto& b : basis) {
    if (!b.is_string()) throw SchemaError("basis labels must be strings");
    labels.push_back(b.get<std::string>());
  }
  Algebra a(labels);

  const Json& products = field(j, "products");
  if (!products.is_array()) throw SchemaError("products must be an array");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& p : products) {
    const std::size_t l = parse_index(field(p, "left"), n, "left");
    const std::size_t r = parse_index(field(p, "right"), n, "right");
    if (!seen.insert({l, r}).second)
      throw SchemaError("duplicate product (" + std::to_string(l) + ", " + std::to_string(r) + ")");
    const Json& value = field(p, "value");
    if (!value.is_array()) throw SchemaError("value must be an array");
    std::set<std::size_t> idx_seen;
    for (const auto& term : value) {
      const std::size_t m = parse_index(field(term, "idx"), n, "idx");
      if (!idx_seen.insert(m).second) throw SchemaError("duplicate idx in a product value");
      mpz_class num = parse_integer(field(term, "num"), "num");
      mpz_class den = parse_integer(field(term, "den"), "den");
      if (sgn(den) <= 0) throw SchemaError("den must be positive");
      Scalar c(num, den);
      c.canonicalize();
      a.set_coeff(l, r, m, c);
    }
  }
  return a;
}

Algebra parse_algebra_file(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  return algebra_from_json(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Vector parse_params(std::string_view text) {
  Vector out;
  for (auto piece : split(text, ',')) {
    piece = trim(piece);
    if (piece.empty()) throw SchemaError("empty entry in parameter list");
    try {
      out.push_back(parse_scalar(piece));
    } catch (const Error&) {
      throw SchemaError("bad rational '" + std::string(piece) + "'");
    }
  }
  return out;
}

std::vector<std::size_t> parse_indices(std::string_view text) {
  std::vector<std::size_t> out;
  for (auto piece : split(text, ',')) {
    piece = trim(piece);
    if (piece.empty() || piece.find_first_not_of("0123456789") != std::string_view::npos)
      throw SchemaError("bad index '" + std::string(piece) + "'");
    out.push_back(std::stoul(std::string(piece)));
  }
  return out;
}

Json scalar_json(const Scalar& v) { return to_string(v); }

Json vector_json(const Vector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(scalar_json(x));
  return j;
}

Json matrix_json(const Matrix& m) {
  Json j = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) j.push_back(vector_json(m.row(r)));
  return j;
}

Json spec_json(const FamilySpec& s) {
  Json j;
  j["label"] = label_name(s.label);
  j["family"] = "M" + std::to_string(static_cast<int>(s.family()));
  j["k"] = s.k;
  j["t"] = s.t;
  j["param"] = param_name(s.family());
  j["params"] = vector_json(s.params);
  j["text"] = to_string(s);
  return j;
}

Json form_json(const GeneralForm& f) {
  Json j;
  j["k"] = f.k;
  j["t"] = f.t;
  j["alpha"] = vector_json(f.alpha);
  j["beta"] = matrix_json(f.beta);
  j["gamma"] = matrix_json(f.gamma);
  j["nu"] = matrix_json(f.nu);
  j["delta"] = matrix_json(f.delta);
  return j;
}

Json change_json(const BasisChange& c) {
  Json j;
  j["matrix"] = matrix_json(c.matrix);
  j["log"] = c.log;
  return j;
}

Json profile_json(const InvariantProfile& p) {
  Json j;
  j["dim"] = p.dim;
  j["lcs_dims"] = p.lcs_dims;
  j["ds_dims"] = p.ds_dims;
  j["ann_r_dim"] = p.ann_r_dim;
  j["ann_l_dim"] = p.ann_l_dim;
  j["center_dim"] = p.center_dim;
  j["der_dim"] = p.der_dim;
  j["squared_dim"] = p.squared_dim;
  j["spectrum_available"] = p.spectrum_available;
  Json spec = Json::array();
  for (const auto& e : p.right_spectrum_multiset) spec.push_back({{"value", to_string(e.value)}, {"multiplicity", e.multiplicity}});
  j["right_spectrum_multiset"] = spec;
  return j;
}

}  // namespace leibniz
