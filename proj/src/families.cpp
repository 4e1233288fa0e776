#include "leibniz/families.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "leibniz/errors.hpp"

namespace leibniz {

namespace {

struct LabelInfo {
  Label label;
  const char* name;
  Family family;
  int fixed_t;  // 1 or -1 (meaning k) for L labels, 0 for M labels
};

constexpr std::array<LabelInfo, 17> kLabels{{
    {Label::kL1, "L1", Family::kM1, 1},   {Label::kL2, "L2", Family::kM2, 1},
    {Label::kL3, "L3", Family::kM3, 1},   {Label::kL4, "L4", Family::kM6, 1},
    {Label::kL5, "L5", Family::kM7, 1},   {Label::kL6, "L6", Family::kM1, -1},
    {Label::kL7, "L7", Family::kM2, -1},  {Label::kL8, "L8", Family::kM5, -1},
    {Label::kL9, "L9", Family::kM4, -1},  {Label::kL10, "L10", Family::kM7, -1},
    {Label::kM1, "M1", Family::kM1, 0},   {Label::kM2, "M2", Family::kM2, 0},
    {Label::kM3, "M3", Family::kM3, 0},   {Label::kM4, "M4", Family::kM4, 0},
    {Label::kM5, "M5", Family::kM5, 0},   {Label::kM6, "M6", Family::kM6, 0},
    {Label::kM7, "M7", Family::kM7, 0},
}};

const LabelInfo& info(Label label) { return kLabels[static_cast<std::size_t>(label)]; }

int family_number(Family f) { return static_cast<int>(f); }

}  // namespace

std::string label_name(Label label) { return info(label).name; }

std::optional<Label> parse_label(std::string_view name) {
  for (const auto& li : kLabels)
    if (name == li.name) return li.label;
  return std::nullopt;
}

std::vector<Label> all_labels() {
  std::vector<Label> out;
  for (const auto& li : kLabels) out.push_back(li.label);
  return out;
}

bool is_l_label(Label label) { return info(label).fixed_t != 0; }

Family family_of(Label label) { return info(label).family; }

std::string param_name(Family family) {
  switch (family) {
    case Family::kM5: return "gamma";
    case Family::kM6: return "nu";
    case Family::kM7: return "delta";
    default: return "beta";
  }
}

TRange family_t_range(Family family, int k) {
  switch (family) {
    case Family::kM3:
    case Family::kM6: return {1, k - 1};
    case Family::kM4:
    case Family::kM5: return {2, k};
    default: return {1, k};
  }
}

TRange label_t_range(Label label, int k) {
  const auto& li = info(label);
  if (li.fixed_t == 1) return {1, 1};
  if (li.fixed_t == -1) return {k, k};
  switch (li.family) {
    case Family::kM1:
    case Family::kM2:
    case Family::kM7: return {1, k};
    default: return {2, k - 1};
  }
}

std::optional<Label> l_alias(Family family, int k, int t) {
  for (const auto& li : kLabels) {
    if (li.family != family || li.fixed_t == 0) continue;
    if ((li.fixed_t == 1 && t == 1) || (li.fixed_t == -1 && t == k)) return li.label;
  }
  return std::nullopt;
}

Label label_for(Family family, int k, int t) {
  if (auto alias = l_alias(family, k, t)) return *alias;
  return static_cast<Label>(static_cast<int>(Label::kM1) + family_number(family) - 1);
}

std::size_t param_count(Family family, int k) {
  const auto m = static_cast<std::size_t>(k - 1);
  return family == Family::kM7 ? m * m : m;
}

void validate(const FamilySpec& spec) {
  if (spec.k < 2) throw DimensionError("k must be at least 2");
  TRange r = label_t_range(spec.label, spec.k);
  if (spec.t < r.lo || spec.t > r.hi)
    throw InvalidArgumentError(label_name(spec.label) + ": t=" + std::to_string(spec.t) + " outside [" +
                               std::to_string(r.lo) + ", " + std::to_string(r.hi) + "] for k=" +
                               std::to_string(spec.k));
  std::size_t want = param_count(spec.family(), spec.k);
  if (spec.params.size() != want)
    throw DimensionError(label_name(spec.label) + " expects " + std::to_string(want) + " " +
                         param_name(spec.family()) + " entries, got " + std::to_string(spec.params.size()));
}

FamilySpec make_spec(Label label, int k, std::optional<int> t, Vector params) {
  FamilySpec s;
  s.label = label;
  s.k = k;
  const auto& li = info(label);
  if (li.fixed_t != 0) {
    int implied = li.fixed_t == 1 ? 1 : k;
    if (t && *t != implied)
      throw InvalidArgumentError(label_name(label) + " fixes t=" + std::to_string(implied));
    s.t = implied;
  } else {
    if (!t) throw InvalidArgumentError(label_name(label) + " needs t");
    s.t = *t;
  }
  s.params = std::move(params);
  validate(s);
  return s;
}

FamilySpec make_family_spec(Family family, int k, int t, Vector params) {
  TRange r = family_t_range(family, k);
  if (t < r.lo || t > r.hi) throw InvalidArgumentError("t outside the family's range");
  return make_spec(label_for(family, k, t), k, t, std::move(params));
}

std::string to_string(const FamilySpec& spec) {
  std::ostringstream os;
  os << label_name(spec.label);
  if (!is_l_label(spec.label)) os << "," << spec.t;
  os << "(";
  for (std::size_t i = 0; i < spec.params.size(); ++i) os << (i ? ", " : "") << to_string(spec.params[i]);
  os << ")";
  return os.str();
}

std::vector<std::string> family_basis_labels(int k) {
  std::vector<std::string> labels;
  for (int i = 1; i <= k; ++i) labels.push_back("e" + std::to_string(i));
  for (int j = 1; j < k; ++j) labels.push_back("x" + std::to_string(j));
  return labels;
}

Algebra instantiate_family(const FamilySpec& spec) {
  validate(spec);
  const int k = spec.k, t = spec.t;
  const Vector& p = spec.params;
  Algebra a(family_basis_labels(k));
  auto E = [k](int i) { return e_index(k, i); };
  auto X = [k](int j) { return x_index(k, j); };
  const Scalar one(1), minus_one(-1);

  for (int i = 1; i < k; ++i) {
    a.add_coeff(E(i), X(i), E(i), one);
    if (i < t) a.add_coeff(X(i), E(i), E(i), minus_one);
  }
  switch (spec.family()) {
    case Family::kM1:
    case Family::kM2:
      for (int i = 1; i < k; ++i) {
        a.add_coeff(E(k), X(i), E(k), p[i - 1]);
        if (spec.family() == Family::kM2) a.add_coeff(X(i), E(k), E(k), -p[i - 1]);
      }
      break;
    case Family::kM3:
      for (int i = 1; i < k; ++i) a.add_coeff(E(t), X(i), E(k), p[i - 1]);
      a.add_coeff(E(k), X(t), E(k), one);
      break;
    case Family::kM4:
      for (int i = 1; i < k; ++i) {
        a.add_coeff(E(1), X(i), E(k), p[i - 1]);
        a.add_coeff(X(i), E(1), E(k), -p[i - 1]);
      }
      a.add_coeff(E(k), X(1), E(k), one);
      a.add_coeff(X(1), E(k), E(k), minus_one);
      break;
    case Family::kM5:
      a.add_coeff(E(k), X(1), E(k), one);
      for (int i = 1; i < k; ++i) a.add_coeff(X(i), E(1), E(k), p[i - 1]);
      break;
    case Family::kM6:
      a.add_coeff(E(k), X(t), E(k), one);
      a.add_coeff(X(t), E(k), E(k), minus_one);
      for (int i = 1; i < k; ++i) a.add_coeff(X(i), E(k), E(t), p[i - 1]);
      break;
    case Family::kM7:
      for (int i = 1; i < k; ++i)
        for (int j = 1; j < k; ++j) a.add_coeff(X(i), X(j), E(k), p[(i - 1) * (k - 1) + (j - 1)]);
      break;
  }
  return a;
}

namespace {

std::size_t dim_of(int k) { return static_cast<std::size_t>(2 * k - 1); }

// Swap (e_p, x_p) with (e_q, x_q).
BasisChange swap_pair(int k, int p, int q) {
  Matrix m = Matrix::identity(dim_of(k));
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    Vector ra = m.row(a), rb = m.row(b);
    m.set_row(a, rb);
    m.set_row(b, ra);
  };
  swap_rows(e_index(k, p), e_index(k, q));
  swap_rows(x_index(k, p), x_index(k, q));
  return {m, {"swap (e" + std::to_string(p) + ", x" + std::to_string(p) + ") with (e" + std::to_string(q) + ", x" +
              std::to_string(q) + ")"}};
}

// e_k' = c e_k divides every parameter by c.
BasisChange scale_ek(int k, const Scalar& c) {
  Matrix m = Matrix::identity(dim_of(k));
  m(e_index(k, k), e_index(k, k)) = c;
  return {m, {"e" + std::to_string(k) + "' = " + to_string(c) + " e" + std::to_string(k)}};
}

// Moves the first nonzero entry of group [lo, hi] to position lo. Returns
// false when the group is zero.
bool front_of_group(FamilySpec& s, BasisChange& change, int lo, int hi) {
  for (int i = lo; i <= hi; ++i) {
    if (sgn(s.params[i - 1]) == 0) continue;
    if (i != lo) {
      std::swap(s.params[i - 1], s.params[lo - 1]);
      change = then(change, swap_pair(s.k, i, lo));
    }
    return true;
  }
  return false;
}

void scale_to_one(FamilySpec& s, BasisChange& change, std::size_t pos) {
  Scalar c = s.params[pos];
  if (c == 1) return;
  for (auto& v : s.params) v /= c;
  change = then(change, scale_ek(s.k, c));
}

// Groups in priority order for the leading-one patterns.
std::vector<std::pair<int, int>> leading_groups(Family f, int k, int t) {
  switch (f) {
    case Family::kM3: return {{1, t - 1}, {t, t}, {t + 1, k - 1}};
    case Family::kM4: return {{1, 1}, {2, t - 1}, {t, k - 1}};
    case Family::kM5: return {{2, t - 1}, {t, k - 1}};
    default: return {};
  }
}

}  // namespace

NormalizedSpec normalize_params(const FamilySpec& spec) {
  validate(spec);
  NormalizedSpec out;
  out.spec = spec;
  out.change = BasisChange::identity(dim_of(spec.k));
  FamilySpec& s = out.spec;
  const int k = s.k, t = s.t;
  auto& log = out.normalization_log;

  switch (s.family()) {
    case Family::kM1:
      out.canonical = true;
      log.push_back("M1: every parameter vector is already normalized");
      break;
    case Family::kM2: {
      if (is_zero(s.params)) {
        log.push_back("M2 with beta = 0 coincides with M1,t(0)");
        break;
      }
      for (int j = t; j < k; ++j)
        if (sgn(s.params[j - 1]) != 0) {
          log.push_back("beta_" + std::to_string(j) + " != 0 with j >= t: isomorphic to M1," + std::to_string(t + 1));
          return out;
        }
      out.canonical = true;
      log.push_back("M2: beta supported on indices below t");
      break;
    }
    case Family::kM3:
    case Family::kM4:
    case Family::kM5: {
      if (s.family() == Family::kM5 && sgn(s.params[0]) != 0) {
        Matrix m = Matrix::identity(dim_of(k));
        m(e_index(k, 1), e_index(k, k)) = -s.params[0];
        out.change = then(out.change, BasisChange{m, {"e1' = e1 - gamma_1 e" + std::to_string(k)}});
        s.params[0] = 0;
      }
      for (auto [lo, hi] : leading_groups(s.family(), k, t)) {
        if (lo > hi) continue;
        if (front_of_group(s, out.change, lo, hi)) {
          scale_to_one(s, out.change, static_cast<std::size_t>(lo - 1));
          out.canonical = true;
          log.push_back("leading parameter at position " + std::to_string(lo) + " scaled to 1");
          break;
        }
      }
      if (!out.canonical) log.push_back("all parameters vanish: collapses to an M1 table");
      break;
    }
    case Family::kM6:
      log.push_back("M6,t is isomorphic to M5,t+1");
      break;
    case Family::kM7: {
      for (std::size_t i = 0; i < s.params.size(); ++i)
        if (sgn(s.params[i]) != 0) {
          scale_to_one(s, out.change, i);
          out.canonical = true;
          log.push_back("first nonzero delta scaled to 1");
          break;
        }
      if (!out.canonical) log.push_back("delta = 0 collapses to M1,t(0)");
      break;
    }
  }
  return out;
}

std::optional<Rewrite> rewrite_isomorphism(const FamilySpec& spec) {
  validate(spec);
  const int k = spec.k, t = spec.t;
  const Vector& b = spec.params;
  const std::size_t n = dim_of(k);
  auto E = [k](int i) { return e_index(k, i); };
  auto X = [k](int j) { return x_index(k, j); };

  if (spec.family() == Family::kM2) {
    int j = 0;
    for (int i = t; i < k && j == 0; ++i)
      if (sgn(b[i - 1]) != 0) j = i;
    if (j == 0) return std::nullopt;
    const Scalar bj = b[j - 1];
    Matrix m = Matrix::identity(n);
    m.set_row(E(t), unit_vector(n, E(k)));
    m.set_row(E(k), unit_vector(n, E(j)));
    if (j != t) m.set_row(E(j), unit_vector(n, E(t)));
    Vector target(static_cast<std::size_t>(k - 1));
    for (int i = 1; i < k; ++i) {
      Vector row = unit_vector(n, X(i));
      if (i == t) {
        row = zero_vector(n);
        row[X(j)] = 1 / bj;
        target[i - 1] = 1 / bj;
      } else if (i == j) {
        row = unit_vector(n, X(t));
        row[X(j)] = -b[t - 1] / bj;
        target[i - 1] = -b[t - 1] / bj;
      } else {
        row[X(j)] = -b[i - 1] / bj;
        target[i - 1] = -b[i - 1] / bj;
      }
      m.set_row(X(i), row);
    }
    std::string js = std::to_string(j), ts = std::to_string(t), ks = std::to_string(k);
    BasisChange change{m,
                       {"e" + ts + "' = e" + ks + ", e" + ks + "' = e" + js + (j != t ? ", e" + js + "' = e" + ts : ""),
                        "x" + ts + "' = x" + js + "/beta_" + js + ", x_i' = x_i - (beta_i/beta_" + js + ") x" + js}};
    return Rewrite{make_family_spec(Family::kM1, k, t + 1, target), change};
  }

  if (spec.family() == Family::kM6) {
    Matrix m = Matrix::identity(n);
    m.set_row(E(1), unit_vector(n, E(k)));
    m.set_row(E(k), unit_vector(n, E(t)));
    if (t != 1) {
      m.set_row(E(t), unit_vector(n, E(1)));
      m.set_row(X(1), unit_vector(n, X(t)));
      m.set_row(X(t), unit_vector(n, X(1)));
    }
    Vector target = b;
    std::swap(target[0], target[t - 1]);
    std::string ts = std::to_string(t), ks = std::to_string(k);
    BasisChange change{m, {"e1' = e" + ks + ", e" + ts + "' = e1, e" + ks + "' = e" + ts + ", x1' <-> x" + ts}};
    return Rewrite{make_family_spec(Family::kM5, k, t + 1, target), change};
  }
  return std::nullopt;
}

BasisChange pair_permutation(int k, const std::vector<int>& sigma) {
  const std::size_t n = dim_of(k);
  if (sigma.size() != static_cast<std::size_t>(k - 1)) throw DimensionError("permutation has wrong length");
  Matrix m(n, n);
  m(e_index(k, k), e_index(k, k)) = 1;
  std::string text = "relabel pairs:";
  for (int i = 1; i < k; ++i) {
    int from = sigma[static_cast<std::size_t>(i - 1)];
    m(e_index(k, i), e_index(k, from)) = 1;
    m(x_index(k, i), x_index(k, from)) = 1;
    text += " " + std::to_string(from);
  }
  return {m, {text}};
}

FamilySpec permute_params(const FamilySpec& spec, const std::vector<int>& sigma) {
  FamilySpec out = spec;
  const std::size_t m = static_cast<std::size_t>(spec.k - 1);
  if (spec.family() == Family::kM7) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        out.params[i * m + j] =
            spec.params[static_cast<std::size_t>(sigma[i] - 1) * m + static_cast<std::size_t>(sigma[j] - 1)];
  } else {
    for (std::size_t i = 0; i < m; ++i) out.params[i] = spec.params[static_cast<std::size_t>(sigma[i] - 1)];
  }
  return out;
}

Algebra instantiate_max_class(const std::vector<Summand>& signature) {
  if (signature.empty()) throw InvalidArgumentError("signature must be nonempty");
  const std::size_t k = signature.size();
  std::vector<std::string> labels;
  for (std::size_t i = 1; i <= k; ++i) labels.push_back("e" + std::to_string(i));
  for (std::size_t i = 1; i <= k; ++i) labels.push_back("x" + std::to_string(i));
  Algebra a(labels);
  for (std::size_t i = 0; i < k; ++i) {
    a.set_coeff(i, k + i, i, Scalar(1));
    if (signature[i] == Summand::kR2) a.set_coeff(k + i, i, i, Scalar(-1));
  }
  return a;
}

namespace {

// Slot pattern for a branch: '0', '1' or '*' (free) per parameter.
struct Pattern {
  std::string slots;
  bool free_nonzero = false;  // at least one free slot must be nonzero
  bool leading_one = false;   // first nonzero is scaled to 1 (delta)
};

Pattern branch_pattern(const CanonicalBranch& b, int k) {
  const int m = k - 1, t = b.t;
  Pattern p;
  auto fill = [&](char c) { p.slots.assign(static_cast<std::size_t>(m), c); };
  auto set = [&](int pos, char c) { p.slots[pos - 1] = c; };
  switch (b.family) {
    case Family::kM1: fill('*'); break;
    case Family::kM2:
      fill('0');
      for (int i = 1; i < t; ++i) set(i, '*');
      p.free_nonzero = true;
      break;
    case Family::kM3:
    case Family::kM4:
    case Family::kM5: {
      fill('*');
      auto groups = leading_groups(b.family, k, t);
      if (b.family == Family::kM5) set(1, '0');
      std::size_t used = 0;
      for (auto [lo, hi] : groups) {
        if (lo > hi) continue;
        if (++used == static_cast<std::size_t>(b.branch)) {
          set(lo, '1');
          break;
        }
        for (int i = lo; i <= hi; ++i) set(i, '0');
      }
      break;
    }
    case Family::kM6: break;
    case Family::kM7:
      p.slots.assign(static_cast<std::size_t>(m * m), '*');
      p.free_nonzero = true;
      p.leading_one = true;
      break;
  }
  return p;
}

std::string pattern_text(const CanonicalBranch& b, int k) {
  Pattern p = branch_pattern(b, k);
  std::string sym = b.family == Family::kM5 ? "g" : b.family == Family::kM7 ? "d" : "b";
  std::ostringstream os;
  os << label_name(label_for(b.family, k, b.t));
  if (!is_l_label(label_for(b.family, k, b.t))) os << "," << b.t;
  os << "(";
  if (b.family == Family::kM7) {
    os << "d_ij not all zero, first nonzero = 1";
  } else {
    for (std::size_t i = 0; i < p.slots.size(); ++i) {
      os << (i ? ", " : "");
      if (p.slots[i] == '*') os << sym << i + 1;
      else os << p.slots[i];
    }
    if (p.free_nonzero) os << "; not all zero";
  }
  os << ")";
  return os.str();
}

}  // namespace

std::vector<CanonicalBranch> canonical_branches(int k) {
  if (k < 2) throw DimensionError("k must be at least 2");
  std::vector<CanonicalBranch> out;
  auto add = [&](Family f, int t, int branch) {
    CanonicalBranch b{f, t, branch, ""};
    b.pattern = pattern_text(b, k);
    out.push_back(b);
  };
  for (int t = 1; t <= k; ++t) add(Family::kM1, t, 1);
  for (int t = 2; t <= k; ++t) add(Family::kM2, t, 1);
  for (Family f : {Family::kM3, Family::kM4, Family::kM5}) {
    TRange r = family_t_range(f, k);
    for (int t = r.lo; t <= r.hi; ++t) {
      int branch = 0;
      for (auto [lo, hi] : leading_groups(f, k, t))
        if (lo <= hi) add(f, t, ++branch);
    }
  }
  for (int t = 1; t <= k; ++t) add(Family::kM7, t, 1);
  return out;
}

std::vector<Vector> branch_samples(const CanonicalBranch& branch, int k, std::size_t count, std::uint64_t seed) {
  Pattern p = branch_pattern(branch, k);
  Rng rng(seed);
  std::vector<Vector> out;
  for (std::size_t draw = 0; draw < count; ++draw) {
    Vector v(p.slots.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      switch (p.slots[i]) {
        case '0': v[i] = 0; break;
        case '1': v[i] = 1; break;
        default: v[i] = draw == 0 ? Scalar(0) : draw == 1 ? Scalar(1) : rng.small_rational(4);
      }
    }
    if (p.free_nonzero) {
      bool any = false;
      for (std::size_t i = 0; i < v.size(); ++i) any |= (p.slots[i] == '*' && sgn(v[i]) != 0);
      if (!any)
        for (std::size_t i = 0; i < v.size(); ++i)
          if (p.slots[i] == '*') {
            v[i] = 1;
            break;
          }
    }
    if (p.leading_one)
      for (auto& x : v)
        if (sgn(x) != 0) {
          Scalar c = x;
          for (auto& y : v) y /= c;
          break;
        }
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace leibniz
