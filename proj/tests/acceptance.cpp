// Acceptance run: one PASS/FAIL line per criterion; nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "leibniz/derivations.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/fuzz.hpp"
#include "leibniz/invariants.hpp"
#include "leibniz/normalizer.hpp"

using namespace leibniz;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<Vector> draws(Family f, int k, std::size_t count, std::uint64_t seed) {
  const std::size_t len = param_count(f, k);
  std::vector<Vector> out{Vector(len, Scalar(0)), Vector(len, Scalar(1))};
  for (std::size_t d = 2; d < count; ++d) out.push_back(random_family_params(f, k, seed * 1000 + d));
  return out;
}

std::vector<FamilySpec> table_specs() {
  std::vector<FamilySpec> out;
  for (int k = 2; k <= 6; ++k)
    for (Label label : all_labels()) {
      TRange r = label_t_range(label, k);
      for (int t = r.lo; t <= r.hi; ++t) {
        for (const auto& p : draws(family_of(label), k, 10, static_cast<std::uint64_t>(k * 100 + t)))
          out.push_back(make_spec(label, k, is_l_label(label) ? std::nullopt : std::optional<int>(t), p));
        if (is_l_label(label)) break;
      }
    }
  return out;
}

std::vector<FamilySpec> canonical_specs() {
  std::vector<FamilySpec> out;
  for (int k = 2; k <= 6; ++k)
    for (const auto& b : canonical_branches(k))
      for (const auto& p : branch_samples(b, k, 10, static_cast<std::uint64_t>(k)))
        out.push_back(make_family_spec(b.family, k, b.t, p));
  return out;
}

Subspace e_span(int k) {
  std::vector<std::size_t> idx;
  for (int i = 0; i < k; ++i) idx.push_back(static_cast<std::size_t>(i));
  return Subspace::coordinate(static_cast<std::size_t>(2 * k - 1), idx);
}

std::vector<Vector> x_basis(const Algebra& a, const Subspace& n) {
  std::vector<Vector> q;
  for (auto idx : n.complement_indices()) q.push_back(unit_vector(a.dim(), idx));
  return q;
}

Outcome table_fidelity(const std::vector<FamilySpec>& specs) {
  std::size_t bad = 0;
  std::string first;
  for (const auto& s : specs)
    if (!check_leibniz(instantiate_family(s)).empty() && bad++ == 0) first = to_string(s);
  return {bad == 0, std::to_string(specs.size()) + " tables, " + std::to_string(bad) + " with violations" +
                        (first.empty() ? "" : ", first " + first)};
}

Outcome nilradical_claim(const std::vector<FamilySpec>& specs) {
  std::size_t bad = 0;
  std::string first;
  for (const auto& s : specs) {
    Algebra a = instantiate_family(s);
    auto c = nilradical_check(a, e_span(s.k));
    bool ok = c.is_nilpotent_ideal && c.one_dim_extension_maximal &&
              algebra_class(a).kind == AlgebraClass::Kind::kSolvableNotNilpotent;
    if (!ok && bad++ == 0) first = to_string(s);
  }
  return {bad == 0, std::to_string(specs.size()) + " canonical samples, " + std::to_string(bad) + " failing" +
                        (first.empty() ? "" : ", first " + first)};
}

Outcome general_form_shape(const std::vector<FamilySpec>& specs) {
  std::size_t bad = 0;
  std::string first;
  for (const auto& s : specs) {
    Algebra a = instantiate_family(s);
    bool ok = false;
    try {
      auto ext = extract_general_form(a);
      bool diagonal = true;
      for (int i = 1; i < s.k; ++i)
        for (int j = 1; j < s.k; ++j)
          if (a.coeff(e_index(s.k, i), x_index(s.k, j), e_index(s.k, i)) != (i == j ? 1 : 0)) diagonal = false;
      ok = ext.change.matrix == Matrix::identity(a.dim()) && ext.form.t == s.t &&
           instantiate_form(ext.form) == a && diagonal;
    } catch (const Error&) {
    }
    if (!ok && bad++ == 0) first = to_string(s);
  }
  return {bad == 0, std::to_string(specs.size()) + " instantiations, " + std::to_string(bad) + " mismatched" +
                        (first.empty() ? "" : ", first " + first)};
}

struct FuzzTotals {
  std::size_t trials = 0, failed = 0, case1 = 0, case1_violations = 0;
  std::string first;
};

FuzzTotals fuzz_corpus() {
  std::vector<std::future<std::pair<Label, FuzzReport>>> jobs;
  for (Label label : all_labels())
    jobs.push_back(std::async(std::launch::async, [label] {
      FuzzOptions o;
      o.label = label;
      o.k = 4;
      o.trials = 100;
      o.seed = 20240 + static_cast<std::uint64_t>(label);
      return std::make_pair(label, fuzz_round_trip(o));
    }));
  FuzzTotals t;
  for (auto& j : jobs) {
    auto [label, r] = j.get();
    t.trials += r.trials;
    t.failed += r.failed;
    t.case1 += r.case1;
    t.case1_violations += r.case1_violations;
    if (r.first_failure && t.first.empty())
      t.first = label_name(label) + " trial " + std::to_string(r.first_failure->trial) + ": " +
                to_string(r.first_failure->spec) + " (" + r.first_failure->reason + ")";
  }
  return t;
}

Outcome explicit_isomorphisms() {
  std::size_t checked = 0, bad = 0;
  std::string first;
  for (int k = 3; k <= 6; ++k) {
    for (int t = 1; t <= k - 1; ++t)
      for (std::size_t d = 0; d < 20; ++d) {
        Vector p = random_family_params(Family::kM2, k, static_cast<std::uint64_t>(k * 1000 + t * 50 + d));
        if (sgn(p[static_cast<std::size_t>(t - 1)]) == 0) p[static_cast<std::size_t>(t - 1)] = Scalar(d + 1, 2);
        FamilySpec s = make_family_spec(Family::kM2, k, t, p);
        auto rw = rewrite_isomorphism(s);
        ++checked;
        if ((!rw || !verify_witness(instantiate_family(s), instantiate_family(rw->target), rw->change.matrix)) &&
            bad++ == 0)
          first = to_string(s);
      }
    TRange r6 = family_t_range(Family::kM6, k);
    for (int t = r6.lo; t <= r6.hi; ++t)
      for (std::size_t d = 0; d < 20; ++d) {
        FamilySpec s = make_family_spec(Family::kM6, k, t,
                                        random_family_params(Family::kM6, k, static_cast<std::uint64_t>(k * 7000 + t * 50 + d)));
        auto rw = rewrite_isomorphism(s);
        ++checked;
        if ((!rw || !verify_witness(instantiate_family(s), instantiate_family(rw->target), rw->change.matrix)) &&
            bad++ == 0)
          first = to_string(s);
      }
  }
  return {bad == 0, std::to_string(checked) + " rewrites of M2,t and M6,t, " + std::to_string(bad) + " failing" +
                        (first.empty() ? "" : ", first " + first)};
}

Outcome nil_independence(const std::vector<FamilySpec>& specs) {
  std::size_t bad = 0;
  std::string first;
  for (const auto& s : specs) {
    Algebra a = instantiate_family(s);
    Subspace n = e_span(s.k);
    auto r = nil_independence_rank(a, n, x_basis(a, n));
    if ((r.rank != static_cast<std::size_t>(s.k - 1) || !r.independent) && bad++ == 0) first = to_string(s);
  }
  std::size_t max_checked = 0;
  for (std::size_t k = 1; k <= 4; ++k)
    for (std::size_t mask = 0; mask < (1u << k); ++mask) {
      std::vector<Summand> sig;
      for (std::size_t i = 0; i < k; ++i) sig.push_back((mask >> i) & 1 ? Summand::kR2 : Summand::kL2);
      Algebra a = instantiate_max_class(sig);
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < k; ++i) idx.push_back(i);
      Subspace n = Subspace::coordinate(a.dim(), idx);
      auto r = nil_independence_rank(a, n, x_basis(a, n));
      ++max_checked;
      if (r.rank != k && bad++ == 0) first = "max class of size " + std::to_string(k);
    }
  return {bad == 0, std::to_string(specs.size()) + " canonical samples at rank k-1, " + std::to_string(max_checked) +
                        " max-class fixtures at rank k, " + std::to_string(bad) + " failing" +
                        (first.empty() ? "" : ", first " + first)};
}

Outcome non_isomorphism(const std::string& dir) {
  std::size_t pairs = 0, collisions = 0, iso = 0;
  bool stable = true;
  for (int k : {3, 4}) {
    auto a = collision_report(k, 3, 1);
    auto b = collision_report(k, 3, 1);
    stable = stable && a.text() == b.text();
    pairs += a.pairs;
    collisions += a.collisions.size();
    iso += a.isomorphic.size();
    std::ofstream(dir + "/collision_report_k" + std::to_string(k) + ".txt") << a.text();
  }
  return {iso == 0 && stable, std::to_string(pairs) + " pairs, " + std::to_string(iso) + " reported isomorphic, " +
                                  std::to_string(collisions) + " listed as collisions, report " +
                                  (stable ? "stable" : "UNSTABLE") + " (written to " + dir + ")"};
}

Outcome annihilator_laws(const std::vector<FamilySpec>& specs) {
  std::size_t memberships = 0, bad = 0;
  std::string first;
  for (const auto& s : specs) {
    Algebra a = instantiate_family(s);
    Subspace ann = annihilators_center(a).right;
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Vector v = a.product(i, j);
        if (i != j) {
          Vector w = a.product(j, i);
          for (std::size_t m = 0; m < n; ++m) v[m] += w[m];
        }
        ++memberships;
        if (!ann.contains(v) && bad++ == 0) first = to_string(s);
      }
  }
  return {bad == 0, std::to_string(memberships) + " memberships over " + std::to_string(specs.size()) +
                        " algebras, " + std::to_string(bad) + " outside Ann_r" +
                        (first.empty() ? "" : ", first " + first)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : ".";
  bool all = true;
  auto report = [&](int n, const char* name, const std::function<Outcome()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1fs", secs);
    std::cout << "criterion " << n << " [" << name << "]: " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << "; "
              << timing << ")" << std::endl;
  };

  const auto tables = table_specs();
  const auto canon = canonical_specs();
  FuzzTotals fuzz;

  report(1, "table fidelity", [&] { return table_fidelity(tables); });
  report(2, "nilradical claim", [&] { return nilradical_claim(canon); });
  report(3, "general form shape", [&] { return general_form_shape(canon); });
  report(4, "classifier round trip", [&] {
    fuzz = fuzz_corpus();
    return Outcome{fuzz.failed == 0 && fuzz.trials >= 1700,
                   std::to_string(fuzz.trials) + " trials at k=4, " + std::to_string(fuzz.failed) + " failed" +
                       (fuzz.first.empty() ? "" : ", first " + fuzz.first)};
  });
  report(5, "explicit isomorphisms", explicit_isomorphisms);
  report(6, "case constraints", [&] {
    return Outcome{fuzz.case1_violations == 0 && fuzz.trials > 0,
                   std::to_string(fuzz.case1) + " Case 1 classifications, " + std::to_string(fuzz.case1_violations) +
                       " constraint violations"};
  });
  report(7, "nil-independence rank", [&] { return nil_independence(canon); });
  report(8, "non-isomorphism evidence", [&] { return non_isomorphism(dir); });
  report(9, "annihilator laws", [&] { return annihilator_laws(tables); });

  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << std::endl;
  return all ? 0 : 1;
}
