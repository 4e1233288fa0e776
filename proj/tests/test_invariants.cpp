#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/invariants.hpp"
#include "leibniz/normalizer.hpp"
#include "leibniz/random.hpp"

using namespace leibniz;

namespace {

Vector vec(std::initializer_list<Scalar> xs) { return Vector(xs); }

Matrix random_invertible(std::size_t n, Rng& rng) {
  for (;;) {
    Matrix p(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) p(r, c) = rng.small_rational(2);
    if (invertible(p)) return p;
  }
}

}  // namespace

TEST_CASE("profile of the abelian algebra") {
  auto p = invariant_profile(fixtures::abelian(3));
  CHECK(p.dim == 3);
  CHECK(p.lcs_dims == std::vector<std::size_t>{3, 0});
  CHECK(p.ann_r_dim == 3);
  CHECK(p.ann_l_dim == 3);
  CHECK(p.center_dim == 3);
  CHECK(p.der_dim == 9);
  CHECK(p.squared_dim == 0);
}

TEST_CASE("profile of l2") {
  auto p = invariant_profile(fixtures::l2());
  CHECK(p.ann_r_dim == 1);
  CHECK(p.ann_l_dim == 1);
  CHECK(p.center_dim == 0);
  CHECK(p.der_dim == 1);
  CHECK(p.squared_dim == 1);
}

TEST_CASE("profiles survive random basis changes") {
  Rng rng(99);
  std::vector<Algebra> fixtures_list{fixtures::l2(), fixtures::r2(), fixtures::sl2(),
                                     instantiate_family(make_spec(Label::kL1, 3, std::nullopt, vec({2, 5}))),
                                     instantiate_family(make_spec(Label::kM3, 4, 2, vec({1, 1, -4}))),
                                     instantiate_family(make_spec(Label::kL10, 3, std::nullopt, vec({1, 2, 2, 0})))};
  for (const auto& a : fixtures_list) {
    auto base = invariant_profile(a);
    for (int trial = 0; trial < 100; ++trial) {
      Algebra b = change_basis(a, random_invertible(a.dim(), rng));
      CHECK(invariant_profile(b) == base);
    }
  }
}

TEST_CASE("distinguish") {
  Algebra l1 = instantiate_family(make_spec(Label::kL1, 3, std::nullopt, vec({2, 5})));
  CHECK_FALSE(distinguish(l1, l1).distinguished);

  Algebra l2 = instantiate_family(make_spec(Label::kL2, 3, std::nullopt, vec({2, 5})));
  CHECK(invariant_profile(l1).ann_r_dim != invariant_profile(l2).ann_r_dim);
  CHECK(distinguish(l1, l2).distinguished);

  Algebra zero = instantiate_family(make_spec(Label::kL1, 3, std::nullopt, vec({0, 0})));
  Algebra l5 = instantiate_family(make_spec(Label::kL5, 3, std::nullopt, vec({1, 0, 0, 0})));
  auto d = distinguish(zero, l5);
  CHECK(d.distinguished);

  Algebra swapped = instantiate_family(make_spec(Label::kL1, 3, std::nullopt, vec({5, 2})));
  CHECK_FALSE(distinguish(l1, swapped).distinguished);
}

TEST_CASE("isomorphism search") {
  Algebra l1 = instantiate_family(make_spec(Label::kL1, 3, std::nullopt, vec({2, 5})));
  Algebra swapped = instantiate_family(make_spec(Label::kL1, 3, std::nullopt, vec({5, 2})));
  SUBCASE("identity") {
    auto r = isomorphism_search(l1, l1, SearchBudget::kPermutationScaling);
    REQUIRE(r.isomorphic());
    CHECK(r.witness->matrix == Matrix::identity(5));
  }
  SUBCASE("relabeled pairs") {
    auto r = isomorphism_search(l1, swapped, SearchBudget::kPermutationScaling);
    REQUIRE(r.isomorphic());
    CHECK(verify_witness(l1, swapped, r.witness->matrix));
    CHECK(r.witness->matrix == pair_permutation(3, {2, 1}).matrix);
  }
  SUBCASE("rewrite targets verify through the witness path") {
    FamilySpec m2 = make_spec(Label::kM2, 4, 2, vec({1, 0, 2}));
    auto rw = rewrite_isomorphism(m2);
    REQUIRE(rw);
    CHECK(rw->target.family() == Family::kM1);
    CHECK(rw->target.t == 3);
    auto r = isomorphism_search(instantiate_family(m2), instantiate_family(rw->target),
                                SearchBudget::kPermutationScaling, {rw->change});
    REQUIRE(r.isomorphic());
    CHECK(verify_witness(instantiate_family(m2), instantiate_family(rw->target), r.witness->matrix));
  }
  SUBCASE("full_small finds a shear") {
    Matrix shear = Matrix::identity(5);
    shear(3, 0) = 1;
    Algebra sheared = change_basis(l1, shear);
    auto r = isomorphism_search(l1, sheared, SearchBudget::kFullSmall);
    REQUIRE(r.isomorphic());
    CHECK(verify_witness(l1, sheared, r.witness->matrix));
  }
  SUBCASE("budget") {
    Algebra big = instantiate_family(make_spec(Label::kL1, 4, std::nullopt, vec({1, 2, 3})));
    CHECK_THROWS_AS(isomorphism_search(big, big, SearchBudget::kFullSmall), BudgetError);
    CHECK_THROWS_AS(isomorphism_search(big, l1, SearchBudget::kPermutationScaling), DimensionError);
  }
}

TEST_CASE("collision report at k = 3") {
  auto a = collision_report(3, 3, 1);
  auto b = collision_report(3, 3, 1);
  CHECK(a.text() == b.text());
  CHECK(a.isomorphic.empty());
  CHECK(a.pairs == a.specs * (a.specs - 1) / 2);
  CHECK(a.distinguished + a.collisions.size() == a.pairs);
}
