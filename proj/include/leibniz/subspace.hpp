#pragma once

#include <cstddef>
#include <vector>

#include "leibniz/matrix.hpp"

namespace leibniz {

// Subspace of Q^n stored as its reduced row-echelon basis. The echelon form
// is unique, so equality is plain structural equality.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient_dim);  // zero subspace

  static Subspace span(std::size_t ambient_dim, const std::vector<Vector>& vectors);
  static Subspace whole(std::size_t ambient_dim);
  static Subspace coordinate(std::size_t ambient_dim, const std::vector<std::size_t>& indices);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return rows_.size(); }
  bool is_zero() const { return rows_.empty(); }
  const std::vector<Vector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Matrix matrix() const;

  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;

  // Coordinates of v with respect to basis(); throws if v is not inside.
  Vector coordinates(const Vector& v) const;

  // Standard basis indices that are not pivots: they span a complement.
  std::vector<std::size_t> complement_indices() const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  bool operator==(const Subspace& other) const = default;

 private:
  std::size_t ambient_dim_ = 0;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace leibniz
