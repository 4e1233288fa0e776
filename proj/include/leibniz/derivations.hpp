#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "leibniz/algebra.hpp"

namespace leibniz {

// R_x as a matrix acting on column coordinate vectors: column i is [b_i, x].
Matrix right_mult_matrix(const Algebra& a, const Vector& x);

// Matrix of R_x restricted to the invariant subspace n, in the coordinates of
// n.basis(). Throws if n is not R_x-invariant.
Matrix restricted_right_mult(const Algebra& a, const Subspace& n, const Vector& x);

struct DerivationSpace {
  std::size_t ambient_dim = 0;
  std::vector<Matrix> basis;
  std::size_t dim() const { return basis.size(); }
};

bool is_derivation(const Algebra& a, const Matrix& d);
DerivationSpace derivation_space(const Algebra& a);
bool in_span(const DerivationSpace& space, const Matrix& d);

bool is_nilpotent_matrix(const Matrix& m);

// Characteristic polynomial det(t I - m), coefficients from t^0 upwards.
Vector characteristic_polynomial(const Matrix& m);

// Rational roots with multiplicities. The multiplicities sum to the degree
// exactly when the polynomial splits over Q.
struct RationalRoot {
  Scalar value;
  std::size_t multiplicity;
};
std::vector<RationalRoot> rational_roots(const Vector& coefficients);

// One joint generalized weight space of a commuting family of operators.
struct WeightSpace {
  Vector weight;              // eigenvalue of each operator on the space
  std::vector<Vector> basis;  // flag-adapted: generalized vectors first, common eigenvectors last
  std::size_t eigen_dim = 0;  // dimension of the common eigenspace
  bool semisimple() const { return eigen_dim == basis.size(); }
};

// Joint generalized weight decomposition of commuting operators acting on
// Q^n (columns). Spaces are ordered by their echelon pivots. Throws
// InvalidArgumentError for non-commuting input and UnsupportedFieldError when
// some spectrum is not rational.
std::vector<WeightSpace> weight_decomposition(const std::vector<Matrix>& ops);

// Basis (as rows) in which every operator is lower triangular with respect to
// the column action, built from the weight decomposition.
Matrix simultaneous_triangular_basis(const std::vector<Matrix>& ops);

struct NilIndependence {
  std::size_t rank = 0;
  Matrix eigen_matrix;  // dim N x |Q|: diagonal entries of the triangularised restrictions
  bool independent = false;
};

NilIndependence nil_independence_rank(const Algebra& a, const Subspace& n, const std::vector<Vector>& q_basis);

struct DimBound {
  bool holds = false;
  std::size_t witness_rank = 0;
};

DimBound check_dim_bound(const Algebra& a, const Subspace& n, const std::vector<Vector>& q_basis);

// Draws `samples` nonzero coefficient vectors and returns the first one whose
// combination of `ops` is nilpotent, if any.
std::optional<Vector> find_nilpotent_combination(const std::vector<Matrix>& ops, std::size_t samples,
                                                 std::uint64_t seed);

}  // namespace leibniz
