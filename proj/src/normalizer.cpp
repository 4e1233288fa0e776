#include "leibniz/normalizer.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "leibniz/derivations.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/random.hpp"

namespace leibniz {

namespace {

std::size_t ndim(int k) { return static_cast<std::size_t>(2 * k - 1); }
std::size_t E(int k, int i) { return e_index(k, i); }
std::size_t X(int k, int j) { return x_index(k, j); }
std::size_t uz(int v) { return static_cast<std::size_t>(v); }

}  // namespace

GeneralForm empty_form(int k) {
  if (k < 2) throw DimensionError("k must be at least 2");
  const std::size_t m = uz(k - 1);
  GeneralForm f;
  f.k = k;
  f.t = 1;
  f.alpha = zero_vector(m);
  f.beta = Matrix(uz(k), m);
  f.gamma = Matrix(m, m);
  f.nu = Matrix(m, uz(k));
  f.delta = Matrix(m, m);
  return f;
}

void validate(const GeneralForm& f) {
  if (f.k < 2) throw DimensionError("k must be at least 2");
  const std::size_t m = uz(f.k - 1);
  if (f.alpha.size() != m || f.beta.rows() != uz(f.k) || f.beta.cols() != m || f.gamma.rows() != m ||
      f.gamma.cols() != m || f.nu.rows() != m || f.nu.cols() != uz(f.k) || f.delta.rows() != m || f.delta.cols() != m)
    throw DimensionError("general form coefficient shapes do not match k");
  for (std::size_t i = 0; i < m; ++i) {
    const Scalar& a = f.alpha[i];
    if (a != 0 && a != -1) throw InvalidArgumentError("alpha entries must be 0 or -1");
    if ((a == -1) != (static_cast<int>(i) + 1 < f.t))
      throw InvalidArgumentError("alpha must be -1 exactly on indices below t");
  }
}

Algebra instantiate_form(const GeneralForm& f) {
  validate(f);
  const int k = f.k;
  Algebra a(family_basis_labels(k));
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j < k; ++j) {
      if (i == j) a.add_coeff(E(k, i), X(k, j), E(k, i), Scalar(1));
      a.add_coeff(E(k, i), X(k, j), E(k, k), f.beta(uz(i - 1), uz(j - 1)));
    }
  for (int i = 1; i < k; ++i) {
    a.add_coeff(X(k, i), E(k, i), E(k, i), f.alpha[uz(i - 1)]);
    for (int j = 1; j < k; ++j) {
      a.add_coeff(X(k, i), E(k, j), E(k, k), f.gamma(uz(i - 1), uz(j - 1)));
      a.add_coeff(X(k, i), X(k, j), E(k, k), f.delta(uz(i - 1), uz(j - 1)));
    }
    for (int j = 1; j <= k; ++j) a.add_coeff(X(k, i), E(k, k), E(k, j), f.nu(uz(i - 1), uz(j - 1)));
  }
  return a;
}

GeneralForm read_form(const Algebra& a, int k) {
  if (a.dim() != ndim(k)) throw DimensionError("algebra dimension is not 2k-1");
  GeneralForm f = empty_form(k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j < k; ++j) f.beta(uz(i - 1), uz(j - 1)) = a.coeff(E(k, i), X(k, j), E(k, k));
  int t = 1;
  bool leading = true;
  for (int i = 1; i < k; ++i) {
    f.alpha[uz(i - 1)] = a.coeff(X(k, i), E(k, i), E(k, i));
    if (leading && f.alpha[uz(i - 1)] == -1) ++t;
    else leading = false;
    for (int j = 1; j < k; ++j) {
      f.gamma(uz(i - 1), uz(j - 1)) = a.coeff(X(k, i), E(k, j), E(k, k));
      f.delta(uz(i - 1), uz(j - 1)) = a.coeff(X(k, i), X(k, j), E(k, k));
    }
    for (int j = 1; j <= k; ++j) f.nu(uz(i - 1), uz(j - 1)) = a.coeff(X(k, i), E(k, k), E(k, j));
  }
  f.t = t;
  try {
    validate(f);
  } catch (const Error& e) {
    throw NotInClassError(std::string("general form: ") + e.what());
  }
  if (!(instantiate_form(f) == a)) throw NotInClassError("products fall outside the general-form template");
  return f;
}

std::string to_string(const GeneralForm& f) {
  std::ostringstream os;
  os << "k=" << f.k << " t=" << f.t << " alpha=" << to_string(f.alpha) << "\nbeta=\n"
     << f.beta.to_string() << "gamma=\n"
     << f.gamma.to_string() << "nu=\n"
     << f.nu.to_string() << "delta=\n"
     << f.delta.to_string();
  return os.str();
}

Algebra apply_basis_change(const Algebra& a, const BasisChange& p) {
  if (p.matrix.rows() != a.dim() || p.matrix.cols() != a.dim()) throw DimensionError("basis change has wrong size");
  return change_basis(a, p.matrix);
}

BasisChange random_basis_change(std::uint64_t seed, int k, ScrambleProfile profile) {
  if (k < 2) throw DimensionError("k must be at least 2");
  const std::size_t n = ndim(k), kk = uz(k);
  Rng rng(seed);
  for (;;) {
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        bool zero_block = profile == ScrambleProfile::kNilradicalPreserving && r < kk && c >= kk;
        if (!zero_block) m(r, c) = Scalar(rng.uniform(-2, 2));
      }
    if (invertible(m))
      return {m, {profile == ScrambleProfile::kGeneral ? "random invertible change"
                                                       : "random nilradical-preserving change"}};
  }
}

namespace {

struct Space {
  Vector weight;              // values on the complement basis q
  std::vector<Vector> basis;  // ambient; generalized vectors first, eigenvectors last
  std::size_t eigen_dim = 0;
};

struct Context {
  const Algebra* a = nullptr;
  int k = 2;
  std::size_t n = 0;
  Subspace nil;
  std::vector<Vector> q;
  std::vector<Space> spaces;
};

Context make_context(const Algebra& a, int k, const Subspace& nil) {
  Context ctx;
  ctx.a = &a;
  ctx.k = k;
  ctx.n = a.dim();
  ctx.nil = nil;
  for (std::size_t idx : nil.complement_indices()) ctx.q.push_back(unit_vector(ctx.n, idx));
  std::vector<Matrix> ops;
  for (const auto& q : ctx.q) ops.push_back(restricted_right_mult(a, nil, q));
  std::vector<WeightSpace> ws;
  try {
    ws = weight_decomposition(ops);
  } catch (const InvalidArgumentError& e) {
    throw NotInClassError(std::string("right multiplications on the nilradical: ") + e.what());
  }
  for (const auto& w : ws) {
    Space s;
    s.weight = w.weight;
    s.eigen_dim = w.eigen_dim;
    for (const auto& c : w.basis) {
      Vector v = zero_vector(ctx.n);
      for (std::size_t r = 0; r < c.size(); ++r)
        for (std::size_t m = 0; m < ctx.n; ++m) v[m] += c[r] * nil.basis()[r][m];
      s.basis.push_back(v);
    }
    ctx.spaces.push_back(std::move(s));
  }
  return ctx;
}

bool parallel(const Vector& u, const Vector& v) {
  return Subspace::span(u.size(), {u}) == Subspace::span(v.size(), {v});
}

// {w in span(basis) : [q_j, w] = s * weight_j * w for all j}
Subspace left_eigen(const Context& ctx, const std::vector<Vector>& basis, const Vector& weight, int s) {
  const std::size_t d = basis.size(), n = ctx.n;
  Matrix m(ctx.q.size() * n, d);
  for (std::size_t j = 0; j < ctx.q.size(); ++j)
    for (std::size_t r = 0; r < d; ++r) {
      Vector img = bracket(*ctx.a, ctx.q[j], basis[r]);
      for (std::size_t c = 0; c < n; ++c) m(j * n + c, r) = img[c] - Scalar(s) * weight[j] * basis[r][c];
    }
  std::vector<Vector> out;
  for (const auto& a : nullspace(m)) {
    Vector v = zero_vector(n);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < n; ++c) v[c] += a[r] * basis[r][c];
    out.push_back(v);
  }
  return Subspace::span(n, out);
}

// 0 or -1 when [x, v] = type * weight(x) * v for every x, else 1.
int left_type(const Context& ctx, const Vector& v, const Vector& weight) {
  if (left_eigen(ctx, {v}, weight, 0).dim() == 1) return 0;
  if (left_eigen(ctx, {v}, weight, -1).dim() == 1) return -1;
  return 1;
}

// [q, w] = s * [w, q] for every q and every w in span(basis).
bool left_is_right(const Context& ctx, const std::vector<Vector>& basis, int s) {
  for (const auto& q : ctx.q)
    for (const auto& b : basis) {
      Vector l = bracket(*ctx.a, q, b), r = bracket(*ctx.a, b, q);
      for (std::size_t c = 0; c < ctx.n; ++c)
        if (l[c] != Scalar(s) * r[c]) return false;
    }
  return true;
}

struct Slot {
  Vector v;
  Vector weight;
  int type = 0;
  bool special = false;
};

struct Candidate {
  Family family;
  Vector ek;
  std::vector<Slot> slots;
  bool allow_delta = false;
};

struct Presentation {
  FamilySpec spec;
  BasisChange change;
};

// Builds the basis for a candidate and accepts it only when the conjugated
// table equals the family table exactly.
std::optional<Presentation> build(const Context& ctx, const Candidate& c) {
  const int k = ctx.k;
  const std::size_t n = ctx.n, m = uz(k - 1);
  std::vector<Slot> minus, zero;
  for (const auto& s : c.slots) {
    auto& group = s.type == -1 ? minus : zero;
    if (s.special) group.insert(group.begin(), s);
    else group.push_back(s);
  }
  const int t = 1 + static_cast<int>(minus.size());
  TRange range = family_t_range(c.family, k);
  if (t < range.lo || t > range.hi) return std::nullopt;
  std::vector<Slot> ordered = minus;
  ordered.insert(ordered.end(), zero.begin(), zero.end());

  Matrix lambda(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) lambda(i, j) = ordered[i].weight[j];
  if (!invertible(lambda)) return std::nullopt;
  Matrix coeff = inverse(lambda.transpose());

  std::vector<Vector> e;
  for (const auto& s : ordered) e.push_back(s.v);
  e.push_back(c.ek);
  std::vector<Vector> x;
  for (std::size_t j = 0; j < m; ++j) {
    Vector v = zero_vector(n);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t col = 0; col < n; ++col) v[col] += coeff(j, r) * ctx.q[r][col];
    x.push_back(v);
  }

  // x_j' = x_j - n_j with n_j in N so that [x_i', x_j'] lies in span{e_k}
  // (M7) or vanishes.
  const std::size_t kk = uz(k);
  const std::size_t shift_unknowns = m * kk;
  const std::size_t unknowns = shift_unknowns + (c.allow_delta ? m * m : 0);
  Matrix sys(m * m * n, unknowns);
  Vector rhs(m * m * n);
  std::vector<std::vector<Vector>> ex(kk, std::vector<Vector>(m)), xe(m, std::vector<Vector>(kk));
  for (std::size_t l = 0; l < kk; ++l)
    for (std::size_t j = 0; j < m; ++j) {
      ex[l][j] = bracket(*ctx.a, e[l], x[j]);
      xe[j][l] = bracket(*ctx.a, x[j], e[l]);
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Vector xx = bracket(*ctx.a, x[i], x[j]);
      for (std::size_t col = 0; col < n; ++col) {
        const std::size_t row = (i * m + j) * n + col;
        rhs[row] = xx[col];
        for (std::size_t l = 0; l < kk; ++l) {
          sys(row, i * kk + l) += ex[l][j][col];
          sys(row, j * kk + l) += xe[i][l][col];
        }
        if (c.allow_delta) sys(row, shift_unknowns + i * m + j) = c.ek[col];
      }
    }
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = 0; l < kk; ++l)
      if (sgn((*sol)[j * kk + l]) != 0)
        for (std::size_t col = 0; col < n; ++col) x[j][col] -= (*sol)[j * kk + l] * e[l][col];

  std::vector<Vector> rows = e;
  rows.insert(rows.end(), x.begin(), x.end());
  Matrix p = Matrix::from_rows(rows, n);
  if (!invertible(p)) return std::nullopt;
  Algebra table = change_basis(*ctx.a, p);

  Vector params(param_count(c.family, k));
  for (int i = 1; i < k; ++i) {
    Scalar v;
    switch (c.family) {
      case Family::kM1:
      case Family::kM2: v = table.coeff(E(k, k), X(k, i), E(k, k)); break;
      case Family::kM3: v = table.coeff(E(k, t), X(k, i), E(k, k)); break;
      case Family::kM4: v = table.coeff(E(k, 1), X(k, i), E(k, k)); break;
      case Family::kM5: v = table.coeff(X(k, i), E(k, 1), E(k, k)); break;
      case Family::kM6: v = table.coeff(X(k, i), E(k, k), E(k, t)); break;
      case Family::kM7:
        for (int j = 1; j < k; ++j) params[uz(i - 1) * m + uz(j - 1)] = table.coeff(X(k, i), X(k, j), E(k, k));
        continue;
    }
    params[uz(i - 1)] = v;
  }
  FamilySpec spec;
  spec.label = label_for(c.family, k, t);
  spec.k = k;
  spec.t = t;
  spec.params = params;
  if (!(instantiate_family(spec) == table)) return std::nullopt;

  BasisChange change{p, {}};
  change.log.push_back("e_k chosen as " + to_string(c.ek));
  change.log.push_back("x_j dual to the weights of e_1..e_{k-1}, shifted by the nilradical");
  change.log.push_back("pairs with alpha=-1 first: t=" + std::to_string(t));
  return Presentation{spec, change};
}

// Presentations with e_k on each admissible line (or on the forced vector).
std::vector<Candidate> candidates(const Context& ctx, const std::optional<Vector>& forced) {
  std::vector<Candidate> out;
  const auto& S = ctx.spaces;
  std::size_t wide = S.size();
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i].basis.size() > 2) return out;
    if (S[i].basis.size() == 2) {
      if (wide != S.size()) return out;
      wide = i;
    }
  }

  auto slot_for = [&](const Space& s, bool& ok) {
    Slot sl{s.basis[0], s.weight, left_type(ctx, s.basis[0], s.weight), false};
    ok = ok && sl.type != 1;
    return sl;
  };

  if (wide == S.size()) {
    for (std::size_t c = 0; c < S.size(); ++c) {
      if (forced && !parallel(*forced, S[c].basis[0])) continue;
      Vector ek = forced ? *forced : S[c].basis[0];
      bool ok = true;
      std::vector<Slot> slots;
      for (std::size_t o = 0; o < S.size(); ++o)
        if (o != c) slots.push_back(slot_for(S[o], ok));
      if (!ok) continue;
      if (is_zero(S[c].weight)) {
        out.push_back({Family::kM1, ek, slots, false});
        out.push_back({Family::kM7, ek, slots, true});
        continue;
      }
      int type = left_type(ctx, ek, S[c].weight);
      if (type == 0) out.push_back({Family::kM1, ek, slots, false});
      else if (type == -1) out.push_back({Family::kM2, ek, slots, false});
    }
    return out;
  }

  const Space& w = S[wide];
  bool ok = true;
  std::vector<Slot> base;
  for (std::size_t o = 0; o < S.size(); ++o)
    if (o != wide) base.push_back(slot_for(S[o], ok));
  if (!ok) return out;
  Subspace wspan = Subspace::span(ctx.n, w.basis);
  if (forced && !wspan.contains(*forced)) return out;

  auto with = [&](Family f, const Vector& ek, Slot extra) {
    std::vector<Slot> slots = base;
    slots.push_back(std::move(extra));
    out.push_back({f, ek, slots, false});
  };

  if (w.eigen_dim == 1) {
    const Vector& eig = w.basis.back();
    const Vector& gen = w.basis.front();
    if (forced && !parallel(*forced, eig)) return out;
    Vector ek = forced ? *forced : eig;
    if (left_is_right(ctx, w.basis, 0)) with(Family::kM3, ek, {gen, w.weight, 0, true});
    else if (left_is_right(ctx, w.basis, -1)) with(Family::kM4, ek, {gen, w.weight, -1, true});
    return out;
  }

  Subspace w0 = left_eigen(ctx, w.basis, w.weight, 0);
  Subspace wm = left_eigen(ctx, w.basis, w.weight, -1);
  std::vector<Vector> choices;
  if (forced) choices.push_back(*forced);
  else {
    if (!w0.is_zero()) choices.push_back(w0.basis().back());
    if (!wm.is_zero()) choices.push_back(wm.basis().back());
  }
  for (const auto& v : choices) {
    Vector other = parallel(v, w.basis[1]) ? w.basis[0] : w.basis[1];
    if (w0.contains(v)) {
      if (!wm.is_zero()) with(Family::kM1, v, {wm.basis()[0], w.weight, -1, false});
      else if (w0.dim() == 2) with(Family::kM1, v, {other, w.weight, 0, false});
      else with(Family::kM5, v, {other, w.weight, -1, true});
    } else if (wm.contains(v)) {
      if (!w0.is_zero()) with(Family::kM2, v, {w0.basis()[0], w.weight, 0, false});
      else if (wm.dim() == 2) with(Family::kM2, v, {other, w.weight, -1, false});
    } else if (w0.dim() == 1) {
      with(Family::kM6, v, {w0.basis()[0], w.weight, 0, true});
    }
  }
  return out;
}

std::vector<Presentation> presentations(const Context& ctx, const std::optional<Vector>& forced) {
  std::vector<Presentation> out;
  bool have_plain_zero = false;
  for (const auto& c : candidates(ctx, forced)) {
    // A zero-weight e_k first tries the delta-free table.
    if (c.family == Family::kM7 && have_plain_zero) continue;
    if (auto p = build(ctx, c)) {
      if (c.family == Family::kM1 && is_zero(p->spec.params) && !c.allow_delta) have_plain_zero = true;
      out.push_back(std::move(*p));
    }
  }
  return out;
}

}  // namespace

Subspace discover_nilradical(const Algebra& a) {
  const std::size_t n = a.dim();
  if (n < 3 || n % 2 == 0) throw DimensionError("dimension must be 2k-1 with k >= 2");
  const std::size_t k = (n + 1) / 2;
  Subspace derived = subspace_product(a, Subspace::whole(n), Subspace::whole(n));
  // {v : [d, v] = 0 for d in [L,L]}
  Matrix m(derived.dim() * n, n);
  for (std::size_t r = 0; r < derived.dim(); ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Vector img = bracket(a, derived.basis()[r], unit_vector(n, c));
      for (std::size_t i = 0; i < n; ++i) m(r * n + i, c) = img[i];
    }
  Subspace centralizer = derived.is_zero() ? Subspace::whole(n) : Subspace::span(n, nullspace(m));
  if (centralizer.dim() != k)
    throw NotInClassError("no abelian nilradical of dimension " + std::to_string(k) + " (candidate has dimension " +
                          std::to_string(centralizer.dim()) + ")");
  return centralizer;
}

namespace {

void check_nilradical(const Algebra& a, const Subspace& nil, int k) {
  if (nil.ambient_dim() != a.dim()) throw DimensionError("nilradical lives in the wrong space");
  if (nil.dim() != uz(k)) throw NotInClassError("nilradical must have dimension k");
  if (!is_abelian(a, nil)) throw NotInClassError("nilradical is not abelian");
  auto cert = nilradical_check(a, nil);
  if (!cert.is_nilpotent_ideal) throw NotInClassError("candidate is not a nilpotent ideal");
  if (!cert.one_dim_extension_maximal) throw NotInClassError("candidate nilradical is not maximal");
}

// Some w in span(basis), independent of ek, with [q_j, w] = s * weight_j * w
// modulo span{ek}; s tried as 0 then -1.
std::optional<Vector> left_eigen_mod(const Context& ctx, const std::vector<Vector>& basis, const Vector& weight,
                                     const Vector& ek) {
  const std::size_t d = basis.size(), n = ctx.n, nq = ctx.q.size();
  for (int s : {0, -1}) {
    Matrix m(nq * n, d + nq);
    for (std::size_t j = 0; j < nq; ++j) {
      for (std::size_t r = 0; r < d; ++r) {
        Vector img = bracket(*ctx.a, ctx.q[j], basis[r]);
        for (std::size_t c = 0; c < n; ++c) m(j * n + c, r) = img[c] - Scalar(s) * weight[j] * basis[r][c];
      }
      for (std::size_t c = 0; c < n; ++c) m(j * n + c, d + j) = ek[c];
    }
    for (const auto& sol : nullspace(m)) {
      Vector v = zero_vector(n);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < n; ++c) v[c] += sol[r] * basis[r][c];
      if (Subspace::span(n, {v, ek}).dim() != 2) continue;
      auto lead = std::find_if(v.begin(), v.end(), [](const Scalar& x) { return sgn(x) != 0; });
      Scalar inv = 1 / *lead;
      for (auto& x : v) x *= inv;
      return v;
    }
  }
  return std::nullopt;
}

bool joint_eigenvector(const Context& ctx, const Vector& v, const Vector& weight) {
  for (std::size_t j = 0; j < ctx.q.size(); ++j) {
    Vector img = bracket(*ctx.a, v, ctx.q[j]);
    for (std::size_t c = 0; c < ctx.n; ++c)
      if (img[c] != weight[j] * v[c]) return false;
  }
  return true;
}

}  // namespace

Extraction extract_general_form(const Algebra& a, const std::optional<Subspace>& nilradical_hint) {
  const std::size_t n = a.dim();
  if (n < 3 || n % 2 == 0) throw DimensionError("dimension must be 2k-1 with k >= 2");
  const int k = static_cast<int>((n + 1) / 2);
  const std::size_t m = uz(k - 1);
  if (!is_leibniz(a)) throw NotInClassError("input violates the Leibniz identity");
  Subspace nil = nilradical_hint ? *nilradical_hint : discover_nilradical(a);
  check_nilradical(a, nil, k);
  Context ctx = make_context(a, k, nil);

  std::vector<Vector> flag, weights;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < ctx.spaces.size(); ++i)
    for (const auto& v : ctx.spaces[i].basis) {
      flag.push_back(v);
      weights.push_back(ctx.spaces[i].weight);
      owner.push_back(i);
    }
  if (rank(Matrix::from_rows(weights, m)) != m)
    throw NotInClassError("eigenvalue matrix has rank below k-1");

  // e_k: the last joint eigenvector whose removal leaves a nonsingular minor.
  std::optional<std::size_t> pos;
  for (std::size_t p = flag.size(); p-- > 0 && !pos;) {
    if (!joint_eigenvector(ctx, flag[p], weights[p])) continue;
    std::vector<Vector> rest;
    for (std::size_t r = 0; r < flag.size(); ++r)
      if (r != p) rest.push_back(weights[r]);
    if (invertible(Matrix::from_rows(rest, m))) pos = p;
  }
  if (!pos) throw NotInClassError("no common eigenvector leaves a nonsingular minor");

  // Inside a two-dimensional weight space the partner of e_k must be a left
  // eigenvector modulo e_k.
  const Space& home = ctx.spaces[owner[*pos]];
  if (home.basis.size() == 2) {
    std::optional<Vector> u;
    for (const auto& b : home.basis)
      if (!u) u = left_eigen_mod(ctx, {b}, home.weight, flag[*pos]);
    if (!u) u = left_eigen_mod(ctx, home.basis, home.weight, flag[*pos]);
    if (!u) throw NotInClassError("no left eigenvector beside e_k in its weight space");
    for (std::size_t r = 0; r < flag.size(); ++r)
      if (r != *pos && owner[r] == owner[*pos]) flag[r] = *u;
  }

  std::vector<Vector> e;
  std::vector<Vector> ew;
  for (std::size_t r = 0; r < flag.size(); ++r)
    if (r != *pos) {
      e.push_back(flag[r]);
      ew.push_back(weights[r]);
    }
  e.push_back(flag[*pos]);

  Matrix lambda = Matrix::from_rows(ew, m);
  Matrix coeff = inverse(lambda.transpose());
  std::vector<Vector> x;
  for (std::size_t j = 0; j < m; ++j) {
    Vector v = zero_vector(n);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < n; ++c) v[c] += coeff(j, r) * ctx.q[r][c];
    x.push_back(v);
  }

  // Shift the x's by the nilradical so that [x_i, x_j] lies in span{e_k}.
  const std::size_t kk = uz(k), shift_unknowns = m * kk;
  Matrix sys(m * m * n, shift_unknowns + m * m);
  Vector rhs(m * m * n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Vector xx = bracket(a, x[i], x[j]);
      std::vector<Vector> ex(kk), xe(kk);
      for (std::size_t l = 0; l < kk; ++l) {
        ex[l] = bracket(a, e[l], x[j]);
        xe[l] = bracket(a, x[i], e[l]);
      }
      for (std::size_t c = 0; c < n; ++c) {
        const std::size_t row = (i * m + j) * n + c;
        rhs[row] = xx[c];
        for (std::size_t l = 0; l < kk; ++l) {
          sys(row, i * kk + l) += ex[l][c];
          sys(row, j * kk + l) += xe[l][c];
        }
        sys(row, shift_unknowns + i * m + j) = e.back()[c];
      }
    }
  auto sol = solve(sys, rhs);
  if (!sol) throw NotInClassError("[x_i, x_j] cannot be moved into span{e_k}");
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = 0; l < kk; ++l)
      for (std::size_t c = 0; c < n; ++c) x[j][c] -= (*sol)[j * kk + l] * e[l][c];

  // Pairs with alpha = -1 first, stable.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto alpha_of = [&](std::size_t i) {
    Vector img = bracket(a, x[i], e[i]);
    Matrix two = Matrix::from_rows({e[i], e.back()}, n);
    auto coeffs = solve(two.transpose(), img);
    if (!coeffs) throw NotInClassError("[x_i, e_i] leaves span{e_i, e_k}");
    return (*coeffs)[0];
  };
  std::vector<Scalar> alpha(m);
  for (std::size_t i = 0; i < m; ++i) {
    alpha[i] = alpha_of(i);
    if (alpha[i] != 0 && alpha[i] != -1) throw NotInClassError("alpha outside {0, -1}");
  }
  std::stable_partition(order.begin(), order.end(), [&](std::size_t i) { return alpha[i] == -1; });

  std::vector<Vector> rows;
  for (std::size_t i : order) rows.push_back(e[i]);
  rows.push_back(e.back());
  for (std::size_t i : order) rows.push_back(x[i]);
  Matrix p = Matrix::from_rows(rows, n);
  if (!invertible(p)) throw InternalError("extraction produced a singular basis");

  Extraction out;
  out.nilradical = nil;
  out.form = read_form(change_basis(a, p), k);
  out.change.matrix = p;
  out.change.log = {
      "nilradical: dimension " + std::to_string(k) + " abelian ideal",
      "simultaneous triangular basis of the right multiplications on the nilradical",
      "e_k := common eigenvector " + to_string(e.back()) + " (nonsingular minor)",
      "x_j dual to the diagonal weights (a_ii = 1, a_ij = 0)",
      "x_j shifted by the nilradical so [x_i, x_j] lies in span{e_k}",
      "relabel so alpha_1..alpha_{t-1} = -1: t = " + std::to_string(out.form.t)};
  return out;
}


namespace {

int special_index(const FamilySpec& s) {
  switch (s.family()) {
    case Family::kM3:
    case Family::kM6: return s.t;
    case Family::kM4:
    case Family::kM5: return 1;
    default: return 0;
  }
}

// Orders normalized presentations: canonical first, then family, t and the
// parameter vector (nonzero entries before zeros).
bool preferred(const NormalizedSpec& a, const NormalizedSpec& b) {
  if (a.canonical != b.canonical) return a.canonical;
  if (a.spec.family() != b.spec.family()) return a.spec.family() < b.spec.family();
  if (a.spec.t != b.spec.t) return a.spec.t < b.spec.t;
  return canonical_less(a.spec.params, b.spec.params);
}

// Every relabeling within the alpha groups that keeps the special index.
std::vector<std::vector<int>> group_permutations(const FamilySpec& s) {
  const int k = s.k, t = s.t, special = special_index(s);
  std::vector<int> g1, g2;
  for (int i = 1; i < t; ++i)
    if (i != special) g1.push_back(i);
  for (int i = t; i < k; ++i)
    if (i != special) g2.push_back(i);
  std::vector<std::vector<int>> out;
  std::vector<int> p1 = g1;
  do {
    std::vector<int> p2 = g2;
    do {
      std::vector<int> sigma(uz(k - 1));
      std::iota(sigma.begin(), sigma.end(), 1);
      for (std::size_t i = 0; i < g1.size(); ++i) sigma[uz(g1[i] - 1)] = p1[i];
      for (std::size_t i = 0; i < g2.size(); ++i) sigma[uz(g2[i] - 1)] = p2[i];
      out.push_back(std::move(sigma));
    } while (std::next_permutation(p2.begin(), p2.end()));
  } while (std::next_permutation(p1.begin(), p1.end()));
  return out;
}

std::vector<std::string> case_trace(const GeneralForm& f, bool ek_in_ann_r, CaseConstraints& constraints) {
  std::vector<std::string> trace;
  const int k = f.k;
  const std::size_t m = uz(k - 1);
  bool all_zero = f.t == 1, all_minus = f.t == k;
  if (all_zero) trace.push_back("alpha = 0");
  else if (all_minus) trace.push_back("alpha = -1 (reconstructed)");
  else trace.push_back("mixed alpha, t = " + std::to_string(f.t) + " (reconstructed)");

  auto bk = [&](std::size_t j) { return f.beta(m, j); };
  std::optional<std::size_t> outside;
  std::size_t ones = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (bk(j) != 0 && bk(j) != 1 && !outside) outside = j;
    if (bk(j) == 1) ++ones;
  }
  if (outside) {
    trace.push_back("Case 1");
    constraints.checked = true;
    constraints.index = *outside + 1;
    for (std::size_t i = 0; i < m; ++i) {
      const Scalar& nik = f.nu(i, m);
      for (std::size_t j = 0; j < m; ++j)
        if (sgn(nik * (f.nu(j, m) + bk(j))) != 0) ++constraints.violations;
      if (sgn(nik * f.delta(*outside, *outside)) != 0) ++constraints.violations;
    }
  } else if (ones > 0) {
    trace.push_back("Case 2");
    std::string branch = ones >= 2 ? "Case 2.1" : "Case 2.2";
    trace.push_back(branch);
    trace.push_back(branch + (ek_in_ann_r ? ".1" : ".2"));
  } else {
    trace.push_back("Case 3");
  }
  return trace;
}

}  // namespace

ClassificationResult classify(const GeneralForm& form) {
  validate(form);
  const int k = form.k;
  const std::size_t n = ndim(k);
  Algebra a = instantiate_form(form);
  auto violations = check_leibniz(a);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw InconsistentFormError("general form violates the Leibniz identity at basis triple (" + std::to_string(v.i) +
                                ", " + std::to_string(v.j) + ", " + std::to_string(v.m) + ")");
  }

  ClassificationResult out;
  const Vector ek = unit_vector(n, uz(k - 1));
  out.ek_in_right_annihilator = annihilators_center(a).right.contains(ek);
  out.nu_vanishes = form.nu.is_zero();
  if (out.ek_in_right_annihilator != out.nu_vanishes)
    throw InternalError("right annihilator membership of e_k disagrees with nu");
  out.case_trace = case_trace(form, out.ek_in_right_annihilator, out.constraints);
  if (out.constraints.violations > 0)
    throw InconsistentFormError("Case 1 constraints nu_ik (nu_jk + beta_kj) = 0 and nu_ik delta_mm = 0 fail " +
                                std::to_string(out.constraints.violations) + " times");

  std::vector<std::size_t> e_idx(uz(k));
  std::iota(e_idx.begin(), e_idx.end(), 0);
  Subspace nil = Subspace::coordinate(n, e_idx);
  check_nilradical(a, nil, k);
  Context ctx = make_context(a, k, nil);

  auto table = presentations(ctx, ek);
  if (table.empty()) throw NotInClassError("no family table matches the general form");
  {
    NormalizedSpec tn = normalize_params(table.front().spec);
    out.table = tn.spec;
    out.table_change = then(table.front().change, tn.change);
    for (const auto& step : tn.normalization_log) out.table_change.log.push_back(step);
  }

  auto all = presentations(ctx, std::nullopt);
  if (all.empty()) throw InternalError("table presentation found but no canonical candidate");
  std::optional<NormalizedSpec> best;
  std::size_t best_index = 0;
  std::vector<int> best_sigma;
  for (std::size_t p = 0; p < all.size(); ++p)
    for (const auto& sigma : group_permutations(all[p].spec)) {
      NormalizedSpec cand = normalize_params(permute_params(all[p].spec, sigma));
      if (!best || preferred(cand, *best)) {
        best = std::move(cand);
        best_index = p;
        best_sigma = sigma;
      }
    }
  out.spec = *best;
  out.change = then(then(all[best_index].change, pair_permutation(k, best_sigma)), best->change);
  for (const auto& step : best->normalization_log) out.change.log.push_back(step);
  if (!(change_basis(a, out.change.matrix) == instantiate_family(out.spec.spec)))
    throw InternalError("classification witness does not conjugate onto the family table");
  return out;
}

AlgebraClassification classify_algebra(const Algebra& a, const std::optional<Subspace>& nilradical_hint) {
  AlgebraClassification out;
  out.extraction = extract_general_form(a, nilradical_hint);
  out.result = classify(out.extraction.form);
  out.change = then(out.extraction.change, out.result.change);
  if (!(change_basis(a, out.change.matrix) == instantiate_family(out.result.spec.spec)))
    throw InternalError("composed witness does not conjugate onto the family table");
  return out;
}

FamilySpec canonical_form(const FamilySpec& spec) {
  return classify_algebra(instantiate_family(spec)).result.spec.spec;
}

}  // namespace leibniz
