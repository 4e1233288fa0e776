#include "leibniz/subspace.hpp"

#include "leibniz/errors.hpp"

namespace leibniz {

Subspace::Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  Subspace s(ambient_dim);
  if (vectors.empty()) return s;
  for (const auto& v : vectors)
    if (v.size() != ambient_dim) throw DimensionError("spanning vector has wrong length");
  EchelonForm e = rref(Matrix::from_rows(vectors, ambient_dim));
  s.rows_ = e.reduced.row_vectors();
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace Subspace::whole(std::size_t ambient_dim) {
  std::vector<std::size_t> all(ambient_dim);
  for (std::size_t i = 0; i < ambient_dim; ++i) all[i] = i;
  return coordinate(ambient_dim, all);
}

Subspace Subspace::coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& indices) {
  std::vector<Vector> vs;
  for (auto i : indices) vs.push_back(unit_vector(ambient_dim, i));
  return span(ambient_dim, vs);
}

Matrix Subspace::matrix() const { return Matrix::from_rows(rows_, ambient_dim_); }

bool Subspace::contains(const Vector& v) const {
  if (v.size() != ambient_dim_) throw DimensionError("vector length does not match subspace ambient dimension");
  // Reduce v against the echelon rows; v is inside iff the remainder vanishes.
  Vector r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar f = r[pivots_[i]];
    if (sgn(f) == 0) continue;
    for (std::size_t c = 0; c < ambient_dim_; ++c)
      if (sgn(rows_[i][c]) != 0) r[c] -= f * rows_[i][c];
  }
  return leibniz::is_zero(r);
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionError("ambient dimension mismatch");
  for (const auto& v : other.rows_)
    if (!contains(v)) return false;
  return true;
}

Vector Subspace::coordinates(const Vector& v) const {
  if (!contains(v)) throw InvalidArgumentError("vector is not in the subspace");
  Vector c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

std::vector<std::size_t> Subspace::complement_indices() const {
  std::vector<bool> pivot(ambient_dim_, false);
  for (auto p : pivots_) pivot[p] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ambient_dim_; ++i)
    if (!pivot[i]) out.push_back(i);
  return out;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionError("ambient dimension mismatch");
  std::vector<Vector> vs = rows_;
  vs.insert(vs.end(), other.rows_.begin(), other.rows_.end());
  return span(ambient_dim_, vs);
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_dim_ != ambient_dim_) throw DimensionError("ambient dimension mismatch");
  if (is_zero() || other.is_zero()) return Subspace(ambient_dim_);
  // Solve sum a_i u_i = sum b_j v_j; the a-parts give the intersection.
  const std::size_t r = rows_.size(), s = other.rows_.size();
  Matrix m(ambient_dim_, r + s);
  for (std::size_t c = 0; c < ambient_dim_; ++c) {
    for (std::size_t i = 0; i < r; ++i) m(c, i) = rows_[i][c];
    for (std::size_t j = 0; j < s; ++j) m(c, r + j) = -other.rows_[j][c];
  }
  std::vector<Vector> vs;
  for (const auto& sol : nullspace(m)) {
    Vector v(ambient_dim_, Scalar(0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t c = 0; c < ambient_dim_; ++c) v[c] += sol[i] * rows_[i][c];
    vs.push_back(std::move(v));
  }
  return span(ambient_dim_, vs);
}

}  // namespace leibniz
