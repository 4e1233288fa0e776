#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/normalizer.hpp"
#include "leibniz/random.hpp"

using namespace leibniz;

namespace {

Vector vec(std::initializer_list<Scalar> xs) { return Vector(xs); }

Vector random_params(std::size_t len, Rng& rng) {
  Vector v(len);
  for (auto& x : v) x = rng.coin() ? Scalar(0) : rng.small_rational(4);
  return v;
}

}  // namespace

TEST_CASE("abelian algebra is not in the class") {
  CHECK_THROWS_AS(classify_algebra(fixtures::abelian(5)), NotInClassError);
}

TEST_CASE("M1,2 at k = 3 extracts alpha = (-1, 0)") {
  FamilySpec s = make_spec(Label::kM1, 3, 2, vec({2, 3}));
  auto ext = extract_general_form(instantiate_family(s));
  CHECK(ext.form.t == 2);
  CHECK(ext.form.alpha == vec({-1, 0}));
  CHECK(change_basis(instantiate_family(s), ext.change.matrix) == instantiate_form(ext.form));
}

TEST_CASE("extraction of a table is the identity") {
  for (int k = 2; k <= 4; ++k)
    for (const auto& b : canonical_branches(k))
      for (const auto& p : branch_samples(b, k, 3, 11)) {
        FamilySpec s = make_family_spec(b.family, k, b.t, p);
        auto ext = extract_general_form(instantiate_family(s));
        CAPTURE(to_string(s));
        CHECK(ext.change.matrix == Matrix::identity(instantiate_family(s).dim()));
      }
}

TEST_CASE("canonical representatives are fixed points") {
  for (int k = 2; k <= 4; ++k)
    for (const auto& b : canonical_branches(k))
      for (const auto& p : branch_samples(b, k, 4, 5)) {
        FamilySpec s = make_family_spec(b.family, k, b.t, p);
        NormalizedSpec n = normalize_params(s);
        if (!n.canonical) continue;
        CAPTURE(to_string(n.spec));
        auto r = classify_algebra(instantiate_family(n.spec));
        CHECK(r.result.spec.canonical);
        CHECK(canonical_form(r.result.spec.spec) == r.result.spec.spec);
      }
}

TEST_CASE("scrambled round trip reaches the same canonical form") {
  Rng rng(2024);
  for (int k = 2; k <= 5; ++k)
    for (Label label : all_labels()) {
      TRange tr = label_t_range(label, k);
      for (int t = tr.lo; t <= tr.hi; ++t) {
        Family f = family_of(label);
        FamilySpec s = make_spec(label, k, is_l_label(label) ? std::nullopt : std::optional<int>(t),
                                 random_params(param_count(f, k), rng));
        CAPTURE(to_string(s));
        FamilySpec c = canonical_form(s);
        for (auto profile : {ScrambleProfile::kNilradicalPreserving, ScrambleProfile::kGeneral}) {
          Algebra scrambled = apply_basis_change(instantiate_family(s), random_basis_change(rng.next(), k, profile));
          auto r = classify_algebra(scrambled);
          CHECK(r.result.spec.spec == c);
          CHECK(change_basis(scrambled, r.change.matrix) == instantiate_family(c));
        }
        if (is_l_label(label)) break;
      }
    }
}

TEST_CASE("case traces") {
  SUBCASE("beta_k outside {0,1} gives Case 1") {
    auto r = classify_algebra(instantiate_family(make_spec(Label::kL1, 3, std::nullopt, vec({2, 5}))));
    CHECK(r.result.case_trace.at(1) == "Case 1");
    CHECK(r.result.constraints.checked);
    CHECK(r.result.constraints.violations == 0);
  }
  SUBCASE("all beta_k zero gives Case 3") {
    auto r = classify_algebra(instantiate_family(make_spec(Label::kL1, 3, std::nullopt, vec({0, 0}))));
    CHECK(r.result.case_trace.at(1) == "Case 3");
  }
  SUBCASE("nu vanishing matches e_k in the right annihilator") {
    auto r = classify_algebra(instantiate_family(make_spec(Label::kL2, 3, std::nullopt, vec({1, 1}))));
    CHECK(r.result.ek_in_right_annihilator == r.result.nu_vanishes);
  }
}

TEST_CASE("a form breaking the Leibniz identity is inconsistent") {
  GeneralForm f = empty_form(2);
  f.nu(0, 1) = 1;
  f.beta(1, 0) = 1;
  f.delta(0, 0) = 1;
  CHECK_THROWS_AS(classify(f), InconsistentFormError);
}
