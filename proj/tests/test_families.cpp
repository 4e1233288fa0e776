#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "leibniz/derivations.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/families.hpp"

using namespace leibniz;

namespace {

Vector vec(std::initializer_list<Scalar> xs) { return Vector(xs); }

std::vector<Vector> raw_samples(std::size_t len, std::uint64_t seed) {
  std::vector<Vector> out{Vector(len, Scalar(0)), Vector(len, Scalar(1))};
  Rng rng(seed);
  for (int d = 0; d < 10; ++d) {
    Vector v(len);
    for (auto& x : v) x = rng.small_rational(5);
    out.push_back(v);
  }
  return out;
}

bool conjugates(const Algebra& from, const BasisChange& c, const Algebra& to) {
  return change_basis(from, c.matrix) == to;
}

}  // namespace

TEST_CASE("label bookkeeping") {
  CHECK(label_name(Label::kL10) == "L10");
  CHECK(parse_label("M4") == Label::kM4);
  CHECK_FALSE(parse_label("M8").has_value());
  CHECK(family_of(Label::kL4) == Family::kM6);
  CHECK(family_of(Label::kL9) == Family::kM4);
  CHECK(label_for(Family::kM5, 4, 4) == Label::kL8);
  CHECK(label_for(Family::kM5, 4, 3) == Label::kM5);
  CHECK(label_for(Family::kM1, 4, 1) == Label::kL1);
  CHECK(make_spec(Label::kL6, 3, std::nullopt, vec({1, 2})).t == 3);
  CHECK_THROWS_AS(make_spec(Label::kM3, 4, 4, vec({1, 2, 3})), InvalidArgumentError);
  CHECK_THROWS_AS(make_spec(Label::kM1, 3, 1, vec({1})), DimensionError);
  CHECK_THROWS_AS(make_spec(Label::kL5, 3, std::nullopt, vec({1, 0})), DimensionError);
  CHECK(to_string(make_spec(Label::kM3, 4, 2, vec({3, 0, 4}))) == "M3,2(3, 0, 4)");
}

TEST_CASE("L1 table at k=3") {
  Algebra a = instantiate_family(make_spec(Label::kL1, 3, std::nullopt, vec({2, 5})));
  CHECK(a.dim() == 5);
  CHECK(a.product(0, 3) == unit_vector(5, 0));
  CHECK(a.product(1, 4) == unit_vector(5, 1));
  CHECK(a.product(2, 3) == Vector{0, 0, 2, 0, 0});
  CHECK(a.product(2, 4) == Vector{0, 0, 5, 0, 0});
  int nonzero = 0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) nonzero += a.product_is_zero(i, j) ? 0 : 1;
  CHECK(nonzero == 4);
  CHECK(bracket(a, unit_vector(5, 2), unit_vector(5, 4)) == Vector{0, 0, 5, 0, 0});
}

TEST_CASE("L5 with zero delta coincides with L1(0)") {
  CHECK(instantiate_family(make_spec(Label::kL5, 3, std::nullopt, Vector(4, Scalar(0)))) ==
        instantiate_family(make_spec(Label::kL1, 3, std::nullopt, vec({0, 0}))));
}

TEST_CASE("M6 table") {
  Algebra a = instantiate_family(make_spec(Label::kM6, 4, 2, vec({1, 0, 3})));
  const std::size_t e2 = 1, e4 = 3, x1 = 4, x2 = 5, x3 = 6;
  CHECK(a.product(e4, x2) == unit_vector(7, e4));
  Vector expected = unit_vector(7, e4);
  expected[e4] = -1;
  CHECK(a.coeff(x2, e4, e4) == -1);
  CHECK(a.coeff(x1, e4, e2) == 1);
  CHECK(a.coeff(x3, e4, e2) == 3);
  CHECK(a.coeff(x2, e4, e2) == 0);
}

TEST_CASE("every table satisfies the Leibniz identity") {
  for (int k = 2; k <= 6; ++k)
    for (Label label : all_labels()) {
      TRange r = label_t_range(label, k);
      for (int t = r.lo; t <= r.hi; ++t)
        for (const auto& p : raw_samples(param_count(family_of(label), k), 11 * k + t)) {
          auto spec = make_spec(label, k, t, p);
          auto report = check_leibniz(instantiate_family(spec));
          CHECK_MESSAGE(report.empty(), to_string(spec) << " k=" << k);
        }
    }
}

TEST_CASE("L2 and L4 structural entries") {
  auto l2 = instantiate_family(make_spec(Label::kL2, 4, std::nullopt, vec({2, -1, 3})));
  for (int i = 1; i < 4; ++i) CHECK(l2.coeff(x_index(4, i), 3, 3) == -l2.coeff(3, x_index(4, i), 3));
  auto l4 = instantiate_family(make_spec(Label::kL4, 4, std::nullopt, vec({0, 2, 7})));
  CHECK(l4.coeff(x_index(4, 1), 3, 3) == -1);
  CHECK(l4.coeff(x_index(4, 2), 3, 0) == 2);
  CHECK(l4.coeff(x_index(4, 3), 3, 0) == 7);
}

TEST_CASE("L9 and M4 symmetric pairs lie in the right annihilator") {
  for (auto spec : {make_spec(Label::kL9, 4, std::nullopt, vec({1, 2, 3})),
                    make_spec(Label::kM4, 4, 2, vec({0, 5, -1}))}) {
    Algebra a = instantiate_family(spec);
    auto ann = annihilators_center(a);
    for (int i = 1; i < 4; ++i) {
      Vector s = a.product(0, x_index(4, i));
      Vector r = a.product(x_index(4, i), 0);
      for (std::size_t m = 0; m < s.size(); ++m) s[m] += r[m];
      CHECK(ann.right.contains(s));
    }
  }
}

TEST_CASE("normalize_params") {
  auto m3 = normalize_params(make_spec(Label::kM3, 4, 2, vec({3, 0, 4})));
  CHECK(m3.canonical);
  CHECK(m3.spec.params == vec({1, 0, make_scalar(4, 3)}));

  auto m1 = normalize_params(make_spec(Label::kM1, 4, 2, vec({7, 0, -2})));
  CHECK(m1.canonical);
  CHECK(m1.spec.params == vec({7, 0, -2}));

  auto m7 = normalize_params(make_spec(Label::kM7, 3, 2, Vector(4, Scalar(0))));
  CHECK_FALSE(m7.canonical);
  CHECK_FALSE(m7.normalization_log.empty());

  CHECK_FALSE(normalize_params(make_spec(Label::kM2, 4, 2, vec({1, 0, 2}))).canonical);
  CHECK(normalize_params(make_spec(Label::kM2, 4, 3, vec({1, 2, 0}))).canonical);
  CHECK_FALSE(normalize_params(make_spec(Label::kM6, 4, 2, vec({1, 0, 2}))).canonical);

  auto m5 = normalize_params(make_spec(Label::kM5, 5, 3, vec({2, 0, 0, 3})));
  CHECK(m5.canonical);
  CHECK(m5.spec.params == vec({0, 0, 1, 0}));
}

TEST_CASE("normalization is witnessed and idempotent") {
  for (int k = 2; k <= 5; ++k)
    for (Label label : all_labels()) {
      TRange r = label_t_range(label, k);
      for (int t = r.lo; t <= r.hi; ++t)
        for (const auto& p : raw_samples(param_count(family_of(label), k), 5 * k + t)) {
          auto spec = make_spec(label, k, t, p);
          auto n = normalize_params(spec);
          CHECK_MESSAGE(conjugates(instantiate_family(spec), n.change, instantiate_family(n.spec)), to_string(spec));
          if (n.canonical) {
            auto again = normalize_params(n.spec);
            CHECK(again.spec == n.spec);
            CHECK(again.change.matrix == Matrix::identity(static_cast<std::size_t>(2 * k - 1)));
          }
        }
    }
}

TEST_CASE("rewrite_isomorphism") {
  auto m2 = rewrite_isomorphism(make_spec(Label::kM2, 4, 2, vec({1, 0, 2})));
  REQUIRE(m2.has_value());
  CHECK(m2->target == make_spec(Label::kM1, 4, 3, vec({make_scalar(-1, 2), make_scalar(1, 2), 0})));
  CHECK(conjugates(instantiate_family(make_spec(Label::kM2, 4, 2, vec({1, 0, 2}))), m2->change,
                   instantiate_family(m2->target)));

  auto m6 = rewrite_isomorphism(make_spec(Label::kM6, 4, 2, vec({1, 0, 3})));
  REQUIRE(m6.has_value());
  CHECK(m6->target.label == Label::kM5);
  CHECK(m6->target.t == 3);

  CHECK_FALSE(rewrite_isomorphism(make_spec(Label::kM1, 4, 2, vec({1, 0, 3}))).has_value());
  CHECK_FALSE(rewrite_isomorphism(make_spec(Label::kM2, 4, 3, vec({1, 2, 0}))).has_value());
}

TEST_CASE("rewrites conjugate exactly") {
  Rng rng(99);
  for (int k = 2; k <= 6; ++k)
    for (int draw = 0; draw < 20; ++draw)
      for (Label label : {Label::kM2, Label::kL2, Label::kL7, Label::kM6, Label::kL4}) {
        TRange r = label_t_range(label, k);
        for (int t = r.lo; t <= r.hi; ++t) {
          Vector p(static_cast<std::size_t>(k - 1));
          for (auto& x : p) x = rng.small_rational(4);
          auto spec = make_spec(label, k, t, p);
          auto rw = rewrite_isomorphism(spec);
          if (!rw) continue;
          CHECK(invertible(rw->change.matrix));
          CHECK_MESSAGE(conjugates(instantiate_family(spec), rw->change, instantiate_family(rw->target)),
                        to_string(spec) << " -> " << to_string(rw->target));
        }
      }
}

TEST_CASE("max class fixtures") {
  Algebra l2 = instantiate_max_class({Summand::kL2});
  CHECK(l2.product(0, 1) == Vector{1, 0});
  CHECK(l2.product_is_zero(1, 0));
  Algebra r2 = instantiate_max_class({Summand::kR2});
  CHECK(r2.product(1, 0) == Vector{-1, 0});
  Algebra mix = instantiate_max_class({Summand::kL2, Summand::kR2});
  CHECK(check_leibniz(mix).empty());
  auto cert = nilradical_check(mix, Subspace::coordinate(4, {0, 1}));
  CHECK(cert.is_nilpotent_ideal);
  CHECK(cert.one_dim_extension_maximal);
  auto ni = nil_independence_rank(mix, Subspace::coordinate(4, {0, 1}), {unit_vector(4, 2), unit_vector(4, 3)});
  CHECK(ni.rank == 2);
}

TEST_CASE("canonical branches") {
  auto b3 = canonical_branches(3);
  CHECK_FALSE(b3.empty());
  for (int k = 2; k <= 5; ++k)
    for (const auto& b : canonical_branches(k))
      for (const auto& p : branch_samples(b, k, 12, 3)) {
        auto spec = make_family_spec(b.family, k, b.t, p);
        auto n = normalize_params(spec);
        CHECK_MESSAGE(n.canonical, b.pattern << " " << to_string(spec));
        CHECK_MESSAGE(n.spec == spec, b.pattern << " " << to_string(spec));
      }
}
