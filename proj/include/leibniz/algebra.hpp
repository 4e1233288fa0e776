#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "leibniz/matrix.hpp"
#include "leibniz/subspace.hpp"

namespace leibniz {

// Finite-dimensional algebra given by structure constants:
// [b_i, b_j] = sum_m c(i, j, m) b_m.
class Algebra {
 public:
  Algebra() = default;
  explicit Algebra(std::size_t dim);  // labels b1..bn, all products zero
  explicit Algebra(std::vector<std::string> labels);

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  const Scalar& coeff(std::size_t i, std::size_t j, std::size_t m) const {
    return tensor_[(i * dim_ + j) * dim_ + m];
  }
  void set_coeff(std::size_t i, std::size_t j, std::size_t m, const Scalar& value);
  void add_coeff(std::size_t i, std::size_t j, std::size_t m, const Scalar& value);

  // [b_i, b_j] as a coordinate vector.
  Vector product(std::size_t i, std::size_t j) const;
  void set_product(std::size_t i, std::size_t j, const Vector& value);
  bool product_is_zero(std::size_t i, std::size_t j) const;

  // Tensors compare exactly; labels are ignored.
  bool operator==(const Algebra& other) const {
    return dim_ == other.dim_ && tensor_ == other.tensor_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<Scalar> tensor_;
};

Vector bracket(const Algebra& a, const Vector& x, const Vector& y);

// One basis triple (i, j, m) where
// [b_i,[b_j,b_m]] - [[b_i,b_j],b_m] + [[b_i,b_m],b_j] is nonzero.
struct LeibnizViolation {
  std::size_t i, j, m;
  Vector defect;
};

// Right Leibniz identity on all basis triples; empty result certifies it.
std::vector<LeibnizViolation> check_leibniz(const Algebra& a);
bool is_leibniz(const Algebra& a);

Subspace subspace_product(const Algebra& a, const Subspace& u, const Subspace& v);

enum class SeriesKind { kLowerCentral, kDerived };

struct SeriesReport {
  SeriesKind kind;
  std::vector<Subspace> terms;  // L^1, L^2, ... up to the first repeat (exclusive)
  bool stabilized = true;
  std::size_t terminal_dim = 0;
};

SeriesReport series(const Algebra& a, SeriesKind kind);

// Lower central series of the subalgebra u: u, [u,u], [[u,u],u], ...
SeriesReport subalgebra_lower_central(const Algebra& a, const Subspace& u);

struct AlgebraClass {
  enum class Kind { kNilpotent, kSolvableNotNilpotent, kNeither };
  Kind kind = Kind::kNeither;
  // Nilpotent: smallest n with L^n = 0. Solvable: number of nonzero terms of
  // the derived series.
  std::size_t index = 0;

  bool operator==(const AlgebraClass&) const = default;
};

AlgebraClass algebra_class(const Algebra& a);
std::string to_string(const AlgebraClass& c);

struct Annihilators {
  Subspace right;   // {x : [y, x] = 0 for all y}
  Subspace left;    // {x : [x, y] = 0 for all y}
  Subspace center;  // right intersect left
};

Annihilators annihilators_center(const Algebra& a);

bool is_subalgebra(const Algebra& a, const Subspace& u);
bool is_ideal(const Algebra& a, const Subspace& u);
bool is_abelian(const Algebra& a, const Subspace& u);

// Smallest two-sided ideal containing the given vectors.
Subspace ideal_closure(const Algebra& a, const Subspace& generators);

bool is_nilpotent_subalgebra(const Algebra& a, const Subspace& u);

struct NilradicalCertificate {
  bool is_nilpotent_ideal = false;
  bool one_dim_extension_maximal = false;
  // Set when a flag fails: the complement vector whose extension stays
  // nilpotent, or the generator of a failing ideal test.
  std::optional<Vector> failing_witness;
};

NilradicalCertificate nilradical_check(const Algebra& a, const Subspace& n);

// Induced algebra on the standard-basis complement of the ideal. Throws
// NotAnIdealError when i is not a two-sided ideal.
Algebra quotient_algebra(const Algebra& a, const Subspace& i);
// Same, on an explicitly chosen complement basis.
Algebra quotient_algebra(const Algebra& a, const Subspace& i, const std::vector<Vector>& complement);

// Structure constants in the basis b'_r = sum_c p(r, c) b_c.
Algebra change_basis(const Algebra& a, const Matrix& p);

// Subalgebra on the given subspace basis (coordinates w.r.t. u.basis()).
Algebra restrict_to(const Algebra& a, const Subspace& u);

}  // namespace leibniz
