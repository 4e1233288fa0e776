#include "leibniz/derivations.hpp"

#include <algorithm>

#include "leibniz/errors.hpp"
#include "leibniz/random.hpp"

namespace leibniz {

Matrix right_mult_matrix(const Algebra& a, const Vector& x) {
  const std::size_t n = a.dim();
  if (x.size() != n) throw DimensionError("right_mult_matrix: vector length does not match algebra dimension");
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector col = bracket(a, unit_vector(n, i), x);
    for (std::size_t r = 0; r < n; ++r) m(r, i) = col[r];
  }
  return m;
}

namespace {

// Matrix of op restricted to the invariant subspace s, in s.basis() coordinates.
Matrix restrict_operator(const Matrix& op, const Subspace& s) {
  const auto& b = s.basis();
  Matrix m(b.size(), b.size());
  for (std::size_t r = 0; r < b.size(); ++r) {
    Vector image = op * b[r];
    if (!s.contains(image)) throw InvalidArgumentError("operator does not preserve the subspace");
    Vector c = s.coordinates(image);
    for (std::size_t q = 0; q < b.size(); ++q) m(q, r) = c[q];
  }
  return m;
}

Vector lift(const Vector& coords, const std::vector<Vector>& basis, std::size_t n) {
  Vector v(n, Scalar(0));
  for (std::size_t r = 0; r < basis.size(); ++r)
    if (sgn(coords[r]) != 0)
      for (std::size_t c = 0; c < n; ++c) v[c] += coords[r] * basis[r][c];
  return v;
}

}  // namespace

Matrix restricted_right_mult(const Algebra& a, const Subspace& n, const Vector& x) {
  return restrict_operator(right_mult_matrix(a, x), n);
}

bool is_derivation(const Algebra& a, const Matrix& d) {
  const std::size_t n = a.dim();
  if (d.rows() != n || d.cols() != n) throw DimensionError("derivation has wrong size");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector lhs = d * a.product(i, j);
      Vector r1 = bracket(a, d.col(i), unit_vector(n, j));
      Vector r2 = bracket(a, unit_vector(n, i), d.col(j));
      for (std::size_t m = 0; m < n; ++m)
        if (lhs[m] != r1[m] + r2[m]) return false;
    }
  return true;
}

DerivationSpace derivation_space(const Algebra& a) {
  const std::size_t n = a.dim();
  // Unknown D(m, l) sits in column m * n + l.
  Matrix eq(n * n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) {
        const std::size_t row = (i * n + j) * n + m;
        for (std::size_t l = 0; l < n; ++l) {
          eq(row, m * n + l) += a.coeff(i, j, l);
          eq(row, l * n + i) -= a.coeff(l, j, m);
          eq(row, l * n + j) -= a.coeff(i, l, m);
        }
      }
  DerivationSpace out;
  out.ambient_dim = n;
  for (const auto& v : nullspace(eq)) {
    Matrix d(n, n);
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t l = 0; l < n; ++l) d(m, l) = v[m * n + l];
    out.basis.push_back(std::move(d));
  }
  return out;
}

bool in_span(const DerivationSpace& space, const Matrix& d) {
  const std::size_t n = space.ambient_dim;
  std::vector<Vector> rows;
  auto flatten = [n](const Matrix& m) {
    Vector v(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) v[r * n + c] = m(r, c);
    return v;
  };
  for (const auto& b : space.basis) rows.push_back(flatten(b));
  return Subspace::span(n * n, rows).contains(flatten(d));
}

bool is_nilpotent_matrix(const Matrix& m) {
  if (!m.square()) throw DimensionError("nilpotency test needs a square matrix");
  // m^n = 0 iff m^(2^s) = 0 for any 2^s >= n; square until the exponent covers n.
  Matrix p = m;
  for (std::size_t e = 1; e < m.rows(); e *= 2) p = p * p;
  return p.is_zero();
}

Vector characteristic_polynomial(const Matrix& m) {
  if (!m.square()) throw DimensionError("characteristic polynomial needs a square matrix");
  // Faddeev-LeVerrier: exact over a field of characteristic zero.
  const std::size_t n = m.rows();
  Vector c(n + 1, Scalar(0));
  c[n] = 1;
  Matrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    Matrix amk = m * mk;
    Scalar trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += amk(i, i);
    c[n - k] = -trace / Scalar(static_cast<long>(k));
  }
  return c;
}

namespace {

Scalar horner(const Vector& p, const Scalar& x) {
  Scalar acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// Divides p by (t - r), assuming r is a root.
Vector deflate(const Vector& p, const Scalar& r) {
  Vector q(p.size() - 1, Scalar(0));
  Scalar carry = 0;
  for (std::size_t i = p.size() - 1; i-- > 0;) {
    carry = p[i + 1] + carry * r;
    q[i] = carry;
  }
  return q;
}

constexpr unsigned long kTrialDivisionLimit = 10'000'000;

std::vector<mpz_class> divisors(const mpz_class& value) {
  mpz_class v = abs(value);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (d > kTrialDivisionLimit)
      throw UnsupportedFieldError("characteristic polynomial coefficients too large for rational root search");
    if (v % d == 0) {
      small.push_back(d);
      if (d * d != v) large.push_back(v / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<RationalRoot> rational_roots(const Vector& coefficients) {
  Vector p = coefficients;
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
  std::vector<RationalRoot> roots;
  if (p.size() <= 1) return roots;

  std::size_t zero_mult = 0;
  while (sgn(p.front()) == 0) {
    p.erase(p.begin());
    ++zero_mult;
  }
  if (zero_mult) roots.push_back({Scalar(0), zero_mult});

  while (p.size() > 1) {
    mpz_class lcm_den = 1;
    for (const auto& c : p) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    mpz_class a0 = Scalar(p.front() * lcm_den).get_num();
    mpz_class an = Scalar(p.back() * lcm_den).get_num();
    std::optional<Scalar> found;
    for (const auto& num : divisors(a0)) {
      for (const auto& den : divisors(an)) {
        for (int sign : {1, -1}) {
          Scalar cand(sign * num, den);
          cand.canonicalize();
          if (sgn(horner(p, cand)) == 0) {
            found = cand;
            break;
          }
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
    std::size_t mult = 0;
    while (p.size() > 1 && sgn(horner(p, *found)) == 0) {
      p = deflate(p, *found);
      ++mult;
    }
    roots.push_back({*found, mult});
  }
  std::sort(roots.begin(), roots.end(),
            [](const RationalRoot& x, const RationalRoot& y) { return x.value < y.value; });
  return roots;
}

namespace {

struct Piece {
  Subspace space;
  Vector weight;
};

void require_commuting(const std::vector<Matrix>& ops) {
  for (std::size_t i = 0; i < ops.size(); ++i)
    for (std::size_t j = i + 1; j < ops.size(); ++j)
      if (!(ops[i] * ops[j] == ops[j] * ops[i])) throw InvalidArgumentError("operators do not commute");
}

// Flag-adapted basis of the generalized weight space (coordinates in w's basis).
WeightSpace build_flag(const std::vector<Matrix>& ops, const Piece& piece) {
  const Subspace& w = piece.space;
  const std::size_t d = w.dim(), n = w.ambient_dim();
  std::vector<Matrix> nil;
  for (std::size_t i = 0; i < ops.size(); ++i)
    nil.push_back(restrict_operator(ops[i], w) - Matrix::identity(d) * piece.weight[i]);

  std::vector<Subspace> levels;  // K_1 subset K_2 subset ... (coordinates)
  Subspace current(d);
  while (current.dim() < d) {
    // K_{j+1} = { v : N_i v in K_j for all i }.
    std::vector<Vector> annihilator = nullspace(current.is_zero() ? Matrix(0, d) : current.matrix());
    if (current.is_zero()) annihilator = Matrix::identity(d).row_vectors();
    std::vector<Vector> rows;
    for (const auto& n_i : nil)
      for (const auto& a : annihilator) rows.push_back(left_multiply(a, n_i));
    Subspace next = rows.empty() ? Subspace::whole(d) : Subspace::span(d, nullspace(Matrix::from_rows(rows, d)));
    if (next.dim() <= current.dim()) throw InternalError("weight space flag did not grow");
    levels.push_back(next);
    current = next;
  }

  std::vector<std::vector<Vector>> per_level;
  Subspace chosen(d);
  for (const auto& level : levels) {
    std::vector<Vector> fresh;
    for (const auto& v : level.basis()) {
      if (chosen.contains(v)) continue;
      fresh.push_back(v);
      chosen = chosen + Subspace::span(d, {v});
    }
    per_level.push_back(std::move(fresh));
  }

  WeightSpace out;
  out.weight = piece.weight;
  out.eigen_dim = levels.front().dim();
  for (std::size_t lvl = per_level.size(); lvl-- > 0;)
    for (const auto& v : per_level[lvl]) out.basis.push_back(lift(v, w.basis(), n));
  return out;
}

}  // namespace

std::vector<WeightSpace> weight_decomposition(const std::vector<Matrix>& ops) {
  if (ops.empty()) throw InvalidArgumentError("weight_decomposition needs at least one operator");
  const std::size_t n = ops.front().rows();
  for (const auto& op : ops)
    if (op.rows() != n || op.cols() != n) throw DimensionError("operators must be square of equal size");
  require_commuting(ops);

  std::vector<Piece> pieces{{Subspace::whole(n), {}}};
  for (const auto& op : ops) {
    std::vector<Piece> next;
    for (const auto& piece : pieces) {
      Matrix m = restrict_operator(op, piece.space);
      const std::size_t d = m.rows();
      std::size_t total = 0;
      for (const auto& root : rational_roots(characteristic_polynomial(m))) {
        total += root.multiplicity;
        Matrix shifted = power(m - Matrix::identity(d) * root.value, root.multiplicity);
        std::vector<Vector> vs;
        for (const auto& c : nullspace(shifted)) vs.push_back(lift(c, piece.space.basis(), n));
        Vector weight = piece.weight;
        weight.push_back(root.value);
        next.push_back({Subspace::span(n, vs), std::move(weight)});
      }
      if (total != d) throw UnsupportedFieldError("operator spectrum is not rational");
    }
    pieces = std::move(next);
  }
  std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
    if (x.space.pivots() != y.space.pivots()) return x.space.pivots() < y.space.pivots();
    const auto& bx = x.space.basis();
    const auto& by = y.space.basis();
    for (std::size_t i = 0; i < std::min(bx.size(), by.size()); ++i) {
      if (canonical_less(bx[i], by[i])) return true;
      if (canonical_less(by[i], bx[i])) return false;
    }
    return false;
  });

  std::vector<WeightSpace> out;
  for (const auto& piece : pieces) out.push_back(build_flag(ops, piece));
  return out;
}

Matrix simultaneous_triangular_basis(const std::vector<Matrix>& ops) {
  std::vector<Vector> rows;
  for (const auto& ws : weight_decomposition(ops))
    rows.insert(rows.end(), ws.basis.begin(), ws.basis.end());
  return Matrix::from_rows(rows, ops.front().rows());
}

NilIndependence nil_independence_rank(const Algebra& a, const Subspace& n, const std::vector<Vector>& q_basis) {
  NilIndependence out;
  out.eigen_matrix = Matrix(n.dim(), q_basis.size());
  if (q_basis.empty() || n.dim() == 0) {
    out.independent = q_basis.empty();
    return out;
  }
  std::vector<Matrix> ops;
  for (const auto& q : q_basis) ops.push_back(restricted_right_mult(a, n, q));
  std::size_t row = 0;
  for (const auto& ws : weight_decomposition(ops))
    for (std::size_t r = 0; r < ws.basis.size(); ++r, ++row)
      for (std::size_t j = 0; j < q_basis.size(); ++j) out.eigen_matrix(row, j) = ws.weight[j];
  out.rank = rank(out.eigen_matrix);
  out.independent = out.rank == q_basis.size();
  return out;
}

DimBound check_dim_bound(const Algebra& a, const Subspace& n, const std::vector<Vector>& q_basis) {
  NilIndependence ni = nil_independence_rank(a, n, q_basis);
  return {ni.independent, ni.rank};
}

std::optional<Vector> find_nilpotent_combination(const std::vector<Matrix>& ops, std::size_t samples,
                                                 std::uint64_t seed) {
  if (ops.empty()) return std::nullopt;
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Vector coeffs(ops.size());
    do {
      for (auto& c : coeffs) c = rng.small_rational(3);
    } while (is_zero(coeffs));
    Matrix combo = ops.front() * coeffs[0];
    for (std::size_t i = 1; i < ops.size(); ++i) combo = combo + ops[i] * coeffs[i];
    if (is_nilpotent_matrix(combo)) return coeffs;
  }
  return std::nullopt;
}

}  // namespace leibniz
