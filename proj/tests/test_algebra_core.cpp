#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "leibniz/errors.hpp"

using namespace leibniz;

namespace {
Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}
}  // namespace

TEST_CASE("scalar parsing and lowest terms") {
  CHECK(parse_scalar("6/-4") == make_scalar(-3, 2));
  CHECK(to_string(parse_scalar("10/4")) == "5/2");
  CHECK(to_string(parse_scalar("-7")) == "-7");
  CHECK_THROWS_AS(parse_scalar("1/0"), Error);
  CHECK_THROWS_AS(parse_scalar("abc"), Error);
}

TEST_CASE("matrix rref, inverse and determinant") {
  Matrix m = Matrix::from_rows({vec({2, 1}), vec({4, 3})}, 2);
  CHECK(determinant(m) == Scalar(2));
  CHECK(m * inverse(m) == Matrix::identity(2));
  Matrix s = Matrix::from_rows({vec({1, 2}), vec({2, 4})}, 2);
  CHECK(rank(s) == 1);
  CHECK_THROWS_AS(inverse(s), SingularMatrixError);
  auto ns = nullspace(s);
  REQUIRE(ns.size() == 1);
  CHECK((s * ns[0]) == zero_vector(2));
}

TEST_CASE("subspace canonical form") {
  Subspace u = Subspace::span(3, {vec({2, 4, 0}), vec({0, 0, 3})});
  Subspace v = Subspace::span(3, {vec({1, 2, 3}), vec({1, 2, 0})});
  CHECK(u == v);
  CHECK(u.dim() == 2);
  CHECK(u.contains(vec({1, 2, 7})));
  CHECK_FALSE(u.contains(vec({0, 1, 0})));
  Subspace w = Subspace::span(3, {vec({0, 1, 0}), vec({0, 0, 1})});
  CHECK(u.intersect(w).dim() == 1);
  CHECK((u + w).dim() == 3);
}

TEST_CASE("bracket") {
  Algebra a = fixtures::l2();
  CHECK(bracket(a, vec({1, 0}), vec({0, 1})) == vec({1, 0}));
  CHECK(bracket(a, vec({0, 0}), vec({3, 5})) == vec({0, 0}));
  CHECK(bracket(a, vec({2, 7}), vec({1, 3})) == vec({6, 0}));
  CHECK_THROWS_AS(bracket(a, vec({1}), vec({1, 0})), DimensionError);
}

TEST_CASE("check_leibniz") {
  CHECK(check_leibniz(fixtures::abelian(4)).empty());
  CHECK(check_leibniz(fixtures::r2()).empty());
  CHECK(check_leibniz(fixtures::l2()).empty());
  CHECK(check_leibniz(fixtures::sl2()).empty());

  Algebra bad({"y", "x"});
  bad.set_coeff(1, 1, 1, Scalar(1));
  auto report = check_leibniz(bad);
  REQUIRE_FALSE(report.empty());
  bool found = false;
  for (const auto& v : report) found |= (v.i == 1 && v.j == 1 && v.m == 1);
  CHECK(found);
}

TEST_CASE("subspace_product") {
  Algebra a = fixtures::l2();
  Subspace whole = Subspace::whole(2);
  CHECK(subspace_product(a, whole, whole) == Subspace::span(2, {vec({1, 0})}));
  CHECK(subspace_product(a, whole, Subspace(2)).dim() == 0);
}

TEST_CASE("series and algebra_class") {
  auto ab = fixtures::abelian(3);
  auto lcs = series(ab, SeriesKind::kLowerCentral);
  REQUIRE(lcs.terms.size() == 2);
  CHECK(lcs.terms[0].dim() == 3);
  CHECK(lcs.terms[1].dim() == 0);
  CHECK(lcs.terminal_dim == 0);
  CHECK(lcs.stabilized);
  CHECK(algebra_class(ab) == AlgebraClass{AlgebraClass::Kind::kNilpotent, 2});

  auto l2 = fixtures::l2();
  auto ds = series(l2, SeriesKind::kDerived);
  REQUIRE(ds.terms.size() == 3);
  CHECK(ds.terms[1] == Subspace::span(2, {vec({1, 0})}));
  CHECK(ds.terms[2].dim() == 0);
  CHECK(algebra_class(l2) == AlgebraClass{AlgebraClass::Kind::kSolvableNotNilpotent, 2});

  CHECK(algebra_class(fixtures::sl2()).kind == AlgebraClass::Kind::kNeither);
}

TEST_CASE("annihilators") {
  auto ab = annihilators_center(fixtures::abelian(3));
  CHECK(ab.right.dim() == 3);
  CHECK(ab.left.dim() == 3);
  CHECK(ab.center.dim() == 3);

  // [e,x] = e is the only product: e is killed from the right side, x from the left.
  auto l2 = annihilators_center(fixtures::l2());
  CHECK(l2.right == Subspace::span(2, {vec({1, 0})}));
  CHECK(l2.left == Subspace::span(2, {vec({0, 1})}));
  CHECK(l2.center.dim() == 0);

  auto r2 = annihilators_center(fixtures::r2());
  CHECK(r2.right.dim() == 0);
  CHECK(r2.left.dim() == 0);
}

TEST_CASE("ideals") {
  Algebra a = fixtures::l2();
  CHECK(is_ideal(a, Subspace::whole(2)));
  CHECK(is_ideal(a, Subspace::span(2, {vec({1, 0})})));
  CHECK_FALSE(is_ideal(a, Subspace::span(2, {vec({0, 1})})));
  CHECK(ideal_closure(a, Subspace::span(2, {vec({1, 1})})) == Subspace::whole(2));
}

TEST_CASE("nilradical_check") {
  auto cert = nilradical_check(fixtures::l2(), Subspace::span(2, {vec({1, 0})}));
  CHECK(cert.is_nilpotent_ideal);
  CHECK(cert.one_dim_extension_maximal);
  CHECK_FALSE(cert.failing_witness.has_value());

  auto zero = nilradical_check(fixtures::abelian(3), Subspace(3));
  CHECK(zero.is_nilpotent_ideal);
  CHECK_FALSE(zero.one_dim_extension_maximal);
  CHECK(zero.failing_witness.has_value());
}

TEST_CASE("quotient_algebra") {
  Algebra a = fixtures::l2();
  Algebra q = quotient_algebra(a, Subspace::span(2, {vec({1, 0})}));
  CHECK(q.dim() == 1);
  CHECK(q.product_is_zero(0, 0));
  CHECK(quotient_algebra(a, Subspace(2)) == a);
  CHECK_THROWS_AS(quotient_algebra(a, Subspace::span(2, {vec({0, 1})})), NotAnIdealError);
  // Two complements give the same induced table here.
  Algebra q2 = quotient_algebra(a, Subspace::span(2, {vec({1, 0})}), {vec({3, 1})});
  CHECK(q2 == q);
}

TEST_CASE("change_basis") {
  Algebra a = fixtures::l2();
  CHECK(change_basis(a, Matrix::identity(2)) == a);
  // e' = 2e keeps [e', x] = e'.
  CHECK(change_basis(a, Matrix::diagonal(vec({2, 1}))) == a);
  Matrix p = Matrix::from_rows({vec({1, 1}), vec({0, 1})}, 2);
  Algebra b = change_basis(a, p);
  CHECK(check_leibniz(b).empty());
  CHECK(change_basis(b, inverse(p)) == a);
}
