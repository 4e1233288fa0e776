#include "leibniz/invariants.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "leibniz/derivations.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/normalizer.hpp"

namespace leibniz {

namespace {

std::vector<std::size_t> term_dims(const SeriesReport& r) {
  std::vector<std::size_t> out;
  for (const auto& t : r.terms) out.push_back(t.dim());
  return out;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t r = c.size();
  for (std::size_t i = r; i-- > 0;) {
    if (c[i] < n - r + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

constexpr std::size_t kMaxWeightSubsets = 20000;

std::optional<std::vector<SpectrumEntry>> weight_spectrum(const Algebra& a) {
  Subspace nil = discover_nilradical(a);
  std::vector<Matrix> ops;
  for (std::size_t idx : nil.complement_indices()) ops.push_back(restricted_right_mult(a, nil, unit_vector(a.dim(), idx)));
  if (ops.empty()) return std::vector<SpectrumEntry>{};
  const std::size_t m = ops.size();
  std::vector<Vector> weights;
  for (const auto& w : weight_decomposition(ops))
    for (std::size_t r = 0; r < w.basis.size(); ++r) weights.push_back(w.weight);

  const std::size_t r = rank(Matrix::from_rows(weights, m));
  std::vector<Scalar> pool;
  if (r > 0) {
    std::vector<std::size_t> pick(r);
    std::iota(pick.begin(), pick.end(), 0);
    std::size_t visited = 0;
    do {
      if (++visited > kMaxWeightSubsets) return std::nullopt;
      std::vector<Vector> chosen;
      for (std::size_t i : pick) chosen.push_back(weights[i]);
      Matrix cols = Matrix::from_rows(chosen, m).transpose();
      if (rank(cols) != r) continue;
      for (std::size_t w = 0; w < weights.size(); ++w) {
        if (std::find(pick.begin(), pick.end(), w) != pick.end()) continue;
        auto coords = solve(cols, weights[w]);
        if (!coords) continue;
        for (const auto& c : *coords) pool.push_back(c);
      }
    } while (next_combination(pick, weights.size()));
  }
  std::sort(pool.begin(), pool.end(), [](const Scalar& x, const Scalar& y) { return x < y; });
  std::vector<SpectrumEntry> out;
  for (const auto& v : pool) {
    if (!out.empty() && out.back().value == v) ++out.back().multiplicity;
    else out.push_back({v, 1});
  }
  return out;
}

}  // namespace

InvariantProfile invariant_profile(const Algebra& a) {
  InvariantProfile p;
  const std::size_t n = a.dim();
  p.dim = n;
  p.lcs_dims = term_dims(series(a, SeriesKind::kLowerCentral));
  p.ds_dims = term_dims(series(a, SeriesKind::kDerived));
  Annihilators ann = annihilators_center(a);
  p.ann_r_dim = ann.right.dim();
  p.ann_l_dim = ann.left.dim();
  p.center_dim = ann.center.dim();
  p.der_dim = derivation_space(a).dim();
  p.squared_dim = subspace_product(a, Subspace::whole(n), Subspace::whole(n)).dim();
  try {
    if (auto s = weight_spectrum(a)) {
      p.right_spectrum_multiset = std::move(*s);
      p.spectrum_available = true;
    }
  } catch (const Error&) {
    p.spectrum_available = false;
  }
  return p;
}

std::string to_string(const InvariantProfile& p) {
  auto list = [](const std::vector<std::size_t>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
    return s + "]";
  };
  std::ostringstream o;
  o << "dim: " << p.dim << "\nlcs_dims: " << list(p.lcs_dims) << "\nds_dims: " << list(p.ds_dims)
    << "\nann_r_dim: " << p.ann_r_dim << "\nann_l_dim: " << p.ann_l_dim << "\ncenter_dim: " << p.center_dim
    << "\nder_dim: " << p.der_dim << "\nsquared_dim: " << p.squared_dim << "\nright_spectrum_multiset: ";
  if (!p.spectrum_available) {
    o << "unavailable";
  } else {
    o << "[";
    for (std::size_t i = 0; i < p.right_spectrum_multiset.size(); ++i)
      o << (i ? ", " : "") << "(" << to_string(p.right_spectrum_multiset[i].value) << ", "
        << p.right_spectrum_multiset[i].multiplicity << ")";
    o << "]";
  }
  return o.str();
}

Distinction distinguish(const InvariantProfile& a, const InvariantProfile& b) {
  if (a.dim != b.dim) return {true, "dim"};
  if (a.lcs_dims != b.lcs_dims) return {true, "lcs_dims"};
  if (a.ds_dims != b.ds_dims) return {true, "ds_dims"};
  if (a.ann_r_dim != b.ann_r_dim) return {true, "ann_r_dim"};
  if (a.ann_l_dim != b.ann_l_dim) return {true, "ann_l_dim"};
  if (a.center_dim != b.center_dim) return {true, "center_dim"};
  if (a.der_dim != b.der_dim) return {true, "der_dim"};
  if (a.squared_dim != b.squared_dim) return {true, "squared_dim"};
  if (a.spectrum_available && b.spectrum_available && a.right_spectrum_multiset != b.right_spectrum_multiset)
    return {true, "right_spectrum_multiset"};
  return {false, ""};
}

Distinction distinguish(const Algebra& a, const Algebra& b) {
  return distinguish(invariant_profile(a), invariant_profile(b));
}

bool verify_witness(const Algebra& a, const Algebra& b, const Matrix& p) {
  if (a.dim() != b.dim() || p.rows() != a.dim() || p.cols() != a.dim() || !invertible(p)) return false;
  return change_basis(a, p) == b;
}

namespace {

// Scale-invariant data of a single basis vector.
struct Fingerprint {
  std::size_t left_rank, right_rank;
  std::vector<bool> member;
  auto operator<=>(const Fingerprint&) const = default;
};

class Fingerprinter {
 public:
  explicit Fingerprinter(const Algebra& a) : a_(a) {
    Annihilators ann = annihilators_center(a);
    spaces_ = {ann.right, ann.left};
    for (const auto& t : series(a, SeriesKind::kLowerCentral).terms) spaces_.push_back(t);
    for (const auto& t : series(a, SeriesKind::kDerived).terms) spaces_.push_back(t);
  }

  Fingerprint of(std::size_t i) const {
    const std::size_t n = a_.dim();
    Matrix left(n, n), right(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        left(m, j) = a_.coeff(i, j, m);
        right(m, j) = a_.coeff(j, i, m);
      }
    Fingerprint f{rank(left), rank(right), {}};
    for (const auto& s : spaces_) f.member.push_back(s.contains(unit_vector(n, i)));
    return f;
  }

  std::vector<Fingerprint> all() const {
    std::vector<Fingerprint> out;
    for (std::size_t i = 0; i < a_.dim(); ++i) out.push_back(of(i));
    return out;
  }

 private:
  const Algebra& a_;
  std::vector<Subspace> spaces_;
};

std::optional<Scalar> rational_sqrt(const Scalar& v) {
  if (sgn(v) < 0) return std::nullopt;
  mpz_class num = v.get_num(), den = v.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
  return Scalar(mpz_class(sqrt(num)), mpz_class(sqrt(den)));
}

struct Equation {
  std::size_t i, j, m;
  Scalar ratio;  // c_i c_j = ratio * c_m
};

// Finds nonzero c with c_i c_j = ratio c_m for every equation, fixing free
// scalings to 1.
bool solve_scalings(const std::vector<Equation>& eqs, std::vector<std::optional<Scalar>>& c) {
  for (;;) {
    bool progressed = false;
    for (const auto& e : eqs) {
      std::optional<std::size_t> u;
      bool single = true;
      for (std::size_t v : {e.i, e.j, e.m})
        if (!c[v]) {
          if (u && *u != v) single = false;
          u = v;
        }
      if (!u || !single) continue;
      int expo = (e.i == *u) + (e.j == *u) - (e.m == *u);
      if (expo == 0) continue;
      Scalar lhs = 1, rhs = e.ratio;
      if (e.i != *u) lhs *= *c[e.i];
      if (e.j != *u) lhs *= *c[e.j];
      if (e.m != *u) rhs *= *c[e.m];
      Scalar val = rhs / lhs;
      if (expo == 1) c[*u] = val;
      else if (expo == -1) c[*u] = 1 / val;
      else {
        auto root = rational_sqrt(val);
        if (!root) return false;
        auto branch = c;
        branch[*u] = -*root;
        if (solve_scalings(eqs, branch)) {
          c = branch;
          return true;
        }
        c[*u] = *root;
      }
      progressed = true;
    }
    if (progressed) continue;
    auto free = std::find_if(c.begin(), c.end(), [](const auto& x) { return !x.has_value(); });
    if (free == c.end()) break;
    *free = Scalar(1);
  }
  for (const auto& e : eqs)
    if (*c[e.i] * *c[e.j] != e.ratio * *c[e.m]) return false;
  return true;
}

constexpr std::size_t kMaxPermutations = 200000;

// b'_i = c_i a_{pi(i)} for permutations pi matching fingerprints.
std::optional<Matrix> permutation_scaling(const Algebra& a, const Algebra& b, std::size_t& candidates) {
  const std::size_t n = a.dim();
  auto fa = Fingerprinter(a).all(), fb = Fingerprinter(b).all();
  {
    auto sa = fa, sb = fb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<std::vector<std::size_t>> options(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (fb[i] == fa[j]) options[i].push_back(j);

  std::vector<std::size_t> pi(n);
  std::vector<bool> used(n, false);
  std::optional<Matrix> found;
  std::size_t visited = 0;

  auto try_permutation = [&]() -> std::optional<Matrix> {
    std::vector<Equation> eqs;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t m = 0; m < n; ++m) {
          const Scalar& x = a.coeff(pi[i], pi[j], pi[m]);
          const Scalar& y = b.coeff(i, j, m);
          if ((sgn(x) == 0) != (sgn(y) == 0)) return std::nullopt;
          if (sgn(x) != 0) eqs.push_back({i, j, m, y / x});
        }
    std::vector<std::optional<Scalar>> c(n);
    if (!solve_scalings(eqs, c)) return std::nullopt;
    Matrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(i, pi[i]) = *c[i];
    if (!verify_witness(a, b, p)) return std::nullopt;
    return p;
  };

  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (found || visited >= kMaxPermutations) return;
    if (i == n) {
      ++visited;
      ++candidates;
      found = try_permutation();
      return;
    }
    for (std::size_t j : options[i]) {
      if (used[j]) continue;
      used[j] = true;
      pi[i] = j;
      walk(i + 1);
      used[j] = false;
      if (found) return;
    }
  };
  walk(0);
  return found;
}

}  // namespace

SearchResult isomorphism_search(const Algebra& a, const Algebra& b, SearchBudget budget,
                                const std::vector<BasisChange>& hints) {
  if (a.dim() != b.dim()) throw DimensionError("isomorphism search needs equal dimensions");
  if (budget == SearchBudget::kFullSmall && a.dim() > 5)
    throw BudgetError("full_small search is limited to dimension 5");
  const std::size_t n = a.dim();
  SearchResult out;
  for (const auto& h : hints) {
    ++out.candidates;
    if (verify_witness(a, b, h.matrix)) {
      out.witness = h;
      return out;
    }
  }
  if (a == b) {
    out.witness = BasisChange::identity(n);
    out.witness->log.push_back("identity");
    return out;
  }
  if (auto p = permutation_scaling(a, b, out.candidates)) {
    out.witness = BasisChange{*p, {"permutation with rescaling"}};
    return out;
  }
  if (budget != SearchBudget::kFullSmall) return out;

  const std::vector<Scalar> values{1, -1, 2, -2, Scalar(1, 2), Scalar(-1, 2)};
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (r != c) slots.emplace_back(r, c);
  auto attempt = [&](const Matrix& shear) -> bool {
    Algebra sheared = change_basis(a, shear);
    if (auto p = permutation_scaling(sheared, b, out.candidates)) {
      out.witness = BasisChange{*p * shear, {"unipotent shear", "permutation with rescaling"}};
      return true;
    }
    return false;
  };
  for (std::size_t s1 = 0; s1 < slots.size(); ++s1)
    for (const auto& v1 : values) {
      Matrix shear = Matrix::identity(n);
      shear(slots[s1].first, slots[s1].second) = v1;
      if (attempt(shear)) return out;
    }
  for (std::size_t s1 = 0; s1 < slots.size(); ++s1)
    for (std::size_t s2 = s1 + 1; s2 < slots.size(); ++s2)
      for (const auto& v1 : values)
        for (const auto& v2 : values) {
          Matrix shear = Matrix::identity(n);
          shear(slots[s1].first, slots[s1].second) = v1;
          shear(slots[s2].first, slots[s2].second) = v2;
          if (!invertible(shear)) continue;
          if (attempt(shear)) return out;
        }
  return out;
}

std::vector<FamilySpec> canonical_sample(int k, std::size_t draws, std::uint64_t seed) {
  std::vector<FamilySpec> out;
  for (const auto& branch : canonical_branches(k))
    for (const auto& p : branch_samples(branch, k, draws, seed)) {
      FamilySpec c = canonical_form(make_family_spec(branch.family, k, branch.t, p));
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  return out;
}

std::string CollisionReport::text() const {
  std::ostringstream o;
  o << "k: " << k << "\nspecs: " << specs << "\npairs: " << pairs << "\ndistinguished: " << distinguished
    << "\ninconclusive: " << collisions.size() << "\nisomorphic: " << isomorphic.size() << "\n";
  for (const auto& line : collisions) o << line << "\n";
  for (const auto& line : isomorphic) o << line << "\n";
  return o.str();
}

CollisionReport collision_report(int k, std::size_t draws, std::uint64_t seed) {
  CollisionReport report;
  report.k = k;
  auto specs = canonical_sample(k, draws, seed);
  report.specs = specs.size();
  std::vector<Algebra> algebras;
  std::vector<InvariantProfile> profiles;
  for (const auto& s : specs) {
    algebras.push_back(instantiate_family(s));
    profiles.push_back(invariant_profile(algebras.back()));
  }
  for (std::size_t i = 0; i < specs.size(); ++i)
    for (std::size_t j = i + 1; j < specs.size(); ++j) {
      ++report.pairs;
      if (distinguish(profiles[i], profiles[j]).distinguished) {
        ++report.distinguished;
        continue;
      }
      auto r = isomorphism_search(algebras[i], algebras[j], SearchBudget::kPermutationScaling);
      std::string pair = to_string(specs[i]) + " | " + to_string(specs[j]);
      if (r.isomorphic()) report.isomorphic.push_back(pair + " | isomorphic");
      else report.collisions.push_back(pair + " | inconclusive");
    }
  return report;
}

}  // namespace leibniz
