#include "leibniz/algebra.hpp"

#include <utility>

#include "leibniz/errors.hpp"

namespace leibniz {

Algebra::Algebra(std::size_t dim) : dim_(dim), tensor_(dim * dim * dim, Scalar(0)) {
  for (std::size_t i = 0; i < dim; ++i) labels_.push_back("b" + std::to_string(i + 1));
}

Algebra::Algebra(std::vector<std::string> labels) : Algebra(labels.size()) {
  set_labels(std::move(labels));
}

void Algebra::set_labels(std::vector<std::string> labels) {
  if (labels.size() != dim_) throw DimensionError("label count does not match dimension");
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) throw InvalidArgumentError("duplicate basis label '" + labels[i] + "'");
  labels_ = std::move(labels);
}

void Algebra::set_coeff(std::size_t i, std::size_t j, std::size_t m, const Scalar& value) {
  if (i >= dim_ || j >= dim_ || m >= dim_) throw DimensionError("structure constant index out of range");
  tensor_[(i * dim_ + j) * dim_ + m] = value;
}

void Algebra::add_coeff(std::size_t i, std::size_t j, std::size_t m, const Scalar& value) {
  if (i >= dim_ || j >= dim_ || m >= dim_) throw DimensionError("structure constant index out of range");
  tensor_[(i * dim_ + j) * dim_ + m] += value;
}

Vector Algebra::product(std::size_t i, std::size_t j) const {
  auto begin = tensor_.begin() + static_cast<long>((i * dim_ + j) * dim_);
  return Vector(begin, begin + static_cast<long>(dim_));
}

void Algebra::set_product(std::size_t i, std::size_t j, const Vector& value) {
  if (value.size() != dim_) throw DimensionError("product vector has wrong length");
  for (std::size_t m = 0; m < dim_; ++m) set_coeff(i, j, m, value[m]);
}

bool Algebra::product_is_zero(std::size_t i, std::size_t j) const {
  for (std::size_t m = 0; m < dim_; ++m)
    if (sgn(coeff(i, j, m)) != 0) return false;
  return true;
}

Vector bracket(const Algebra& a, const Vector& x, const Vector& y) {
  const std::size_t n = a.dim();
  if (x.size() != n || y.size() != n) throw DimensionError("bracket: vector length does not match algebra dimension");
  Vector out(n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(y[j]) == 0) continue;
      Scalar w = x[i] * y[j];
      for (std::size_t m = 0; m < n; ++m) {
        const Scalar& c = a.coeff(i, j, m);
        if (sgn(c) != 0) out[m] += w * c;
      }
    }
  }
  return out;
}

namespace {

// [b_i, v]
Vector left_basis(const Algebra& a, std::size_t i, const Vector& v) {
  return bracket(a, unit_vector(a.dim(), i), v);
}

// [v, b_j]
Vector right_basis(const Algebra& a, const Vector& v, std::size_t j) {
  return bracket(a, v, unit_vector(a.dim(), j));
}

}  // namespace

std::vector<LeibnizViolation> check_leibniz(const Algebra& a) {
  const std::size_t n = a.dim();
  std::vector<LeibnizViolation> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector ij = a.product(i, j);
      for (std::size_t m = 0; m < n; ++m) {
        Vector lhs = left_basis(a, i, a.product(j, m));
        Vector t1 = right_basis(a, ij, m);
        Vector t2 = right_basis(a, a.product(i, m), j);
        for (std::size_t r = 0; r < n; ++r) lhs[r] = lhs[r] - t1[r] + t2[r];
        if (!is_zero(lhs)) out.push_back({i, j, m, std::move(lhs)});
      }
    }
  return out;
}

bool is_leibniz(const Algebra& a) { return check_leibniz(a).empty(); }

Subspace subspace_product(const Algebra& a, const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != a.dim() || v.ambient_dim() != a.dim())
    throw DimensionError("subspace_product: ambient dimension mismatch");
  std::vector<Vector> vs;
  for (const auto& x : u.basis())
    for (const auto& y : v.basis()) {
      Vector p = bracket(a, x, y);
      if (!is_zero(p)) vs.push_back(std::move(p));
    }
  return Subspace::span(a.dim(), vs);
}

namespace {

template <typename Next>
SeriesReport run_series(SeriesKind kind, const Subspace& start, std::size_t cap, Next next) {
  SeriesReport report{kind, {start}, true, start.dim()};
  for (std::size_t step = 0;; ++step) {
    if (step > cap) throw InternalError("series did not stabilise within dim+1 steps");
    Subspace following = next(report.terms.back());
    if (following == report.terms.back()) break;
    report.terms.push_back(std::move(following));
  }
  report.terminal_dim = report.terms.back().dim();
  return report;
}

}  // namespace

SeriesReport series(const Algebra& a, SeriesKind kind) {
  const Subspace whole = Subspace::whole(a.dim());
  if (kind == SeriesKind::kLowerCentral)
    return run_series(kind, whole, a.dim() + 1,
                      [&](const Subspace& s) { return subspace_product(a, s, whole); });
  return run_series(kind, whole, a.dim() + 1,
                    [&](const Subspace& s) { return subspace_product(a, s, s); });
}

SeriesReport subalgebra_lower_central(const Algebra& a, const Subspace& u) {
  return run_series(SeriesKind::kLowerCentral, u, a.dim() + 1,
                    [&](const Subspace& s) { return subspace_product(a, s, u); });
}

AlgebraClass algebra_class(const Algebra& a) {
  SeriesReport lcs = series(a, SeriesKind::kLowerCentral);
  if (lcs.terminal_dim == 0) return {AlgebraClass::Kind::kNilpotent, lcs.terms.size()};
  SeriesReport ds = series(a, SeriesKind::kDerived);
  if (ds.terminal_dim == 0) return {AlgebraClass::Kind::kSolvableNotNilpotent, ds.terms.size() - 1};
  return {AlgebraClass::Kind::kNeither, 0};
}

std::string to_string(const AlgebraClass& c) {
  switch (c.kind) {
    case AlgebraClass::Kind::kNilpotent: return "nilpotent(" + std::to_string(c.index) + ")";
    case AlgebraClass::Kind::kSolvableNotNilpotent:
      return "solvable_not_nilpotent(" + std::to_string(c.index) + ")";
    case AlgebraClass::Kind::kNeither: return "neither";
  }
  return "neither";
}

Annihilators annihilators_center(const Algebra& a) {
  const std::size_t n = a.dim();
  // Row block i of `right` is the map x -> [b_i, x]; of `left`, x -> [x, b_i].
  Matrix right(n * n, n), left(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      for (std::size_t m = 0; m < n; ++m) {
        right(i * n + m, l) = a.coeff(i, l, m);
        left(i * n + m, l) = a.coeff(l, i, m);
      }
  Annihilators out;
  out.right = Subspace::span(n, nullspace(right));
  out.left = Subspace::span(n, nullspace(left));
  out.center = out.right.intersect(out.left);
  return out;
}

bool is_subalgebra(const Algebra& a, const Subspace& u) {
  return u.contains(subspace_product(a, u, u));
}

bool is_ideal(const Algebra& a, const Subspace& u) {
  const Subspace whole = Subspace::whole(a.dim());
  return u.contains(subspace_product(a, u, whole)) && u.contains(subspace_product(a, whole, u));
}

bool is_abelian(const Algebra& a, const Subspace& u) {
  return subspace_product(a, u, u).is_zero();
}

Subspace ideal_closure(const Algebra& a, const Subspace& generators) {
  const Subspace whole = Subspace::whole(a.dim());
  Subspace current = generators;
  while (true) {
    Subspace next = current + subspace_product(a, current, whole) + subspace_product(a, whole, current);
    if (next == current) return current;
    current = std::move(next);
  }
}

bool is_nilpotent_subalgebra(const Algebra& a, const Subspace& u) {
  return subalgebra_lower_central(a, u).terminal_dim == 0;
}

NilradicalCertificate nilradical_check(const Algebra& a, const Subspace& n) {
  if (n.ambient_dim() != a.dim()) throw DimensionError("nilradical_check: ambient dimension mismatch");
  NilradicalCertificate cert;
  cert.is_nilpotent_ideal = is_ideal(a, n) && is_nilpotent_subalgebra(a, n);
  if (!cert.is_nilpotent_ideal) return cert;
  cert.one_dim_extension_maximal = true;
  for (auto c : n.complement_indices()) {
    Vector v = unit_vector(a.dim(), c);
    Subspace ext = ideal_closure(a, n + Subspace::span(a.dim(), {v}));
    if (is_nilpotent_subalgebra(a, ext)) {
      cert.one_dim_extension_maximal = false;
      cert.failing_witness = std::move(v);
      break;
    }
  }
  return cert;
}

Algebra quotient_algebra(const Algebra& a, const Subspace& i) {
  std::vector<Vector> complement;
  for (auto c : i.complement_indices()) complement.push_back(unit_vector(a.dim(), c));
  Algebra q = quotient_algebra(a, i, complement);
  std::vector<std::string> labels;
  for (auto c : i.complement_indices()) labels.push_back(a.labels()[c]);
  q.set_labels(std::move(labels));
  return q;
}

Algebra quotient_algebra(const Algebra& a, const Subspace& i, const std::vector<Vector>& complement) {
  if (i.ambient_dim() != a.dim()) throw DimensionError("quotient: ambient dimension mismatch");
  if (!is_ideal(a, i)) throw NotAnIdealError("quotient: subspace is not a two-sided ideal");
  if (complement.size() + i.dim() != a.dim()) throw DimensionError("quotient: complement has wrong size");
  std::vector<Vector> rows = i.basis();
  rows.insert(rows.end(), complement.begin(), complement.end());
  Matrix basis = Matrix::from_rows(rows, a.dim());
  if (!invertible(basis)) throw InvalidArgumentError("quotient: complement is not complementary to the ideal");
  Matrix inv = inverse(basis);
  const std::size_t q = complement.size(), offset = i.dim();
  Algebra out(q);
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t s = 0; s < q; ++s) {
      Vector coords = left_multiply(bracket(a, complement[r], complement[s]), inv);
      for (std::size_t m = 0; m < q; ++m) out.set_coeff(r, s, m, coords[offset + m]);
    }
  return out;
}

Algebra change_basis(const Algebra& a, const Matrix& p) {
  const std::size_t n = a.dim();
  if (p.rows() != n || p.cols() != n) throw DimensionError("basis change has wrong size");
  Matrix inv = inverse(p);
  Algebra out(n);
  out.set_labels(a.labels());
  std::vector<Vector> rows = p.row_vectors();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector v = bracket(a, rows[i], rows[j]);
      if (is_zero(v)) continue;
      out.set_product(i, j, left_multiply(v, inv));
    }
  return out;
}

Algebra restrict_to(const Algebra& a, const Subspace& u) {
  const auto& b = u.basis();
  Algebra out(b.size());
  for (std::size_t r = 0; r < b.size(); ++r)
    for (std::size_t s = 0; s < b.size(); ++s) {
      Vector v = bracket(a, b[r], b[s]);
      if (!u.contains(v)) throw InvalidArgumentError("restrict_to: subspace is not a subalgebra");
      out.set_product(r, s, u.coordinates(v));
    }
  return out;
}

}  // namespace leibniz
