#include "leibniz/leibniz.h"

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <string>

#include "leibniz/derivations.hpp"
#include "leibniz/errors.hpp"
#include "leibniz/fuzz.hpp"
#include "leibniz/invariants.hpp"
#include "leibniz/io.hpp"
#include "leibniz/normalizer.hpp"

struct lz_algebra {
  leibniz::Algebra algebra;
};

namespace {

using namespace leibniz;

thread_local std::string last_error;

lz_status fail(lz_status code, const std::string& message) {
  last_error = message;
  return code;
}

template <class F>
lz_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return LZ_OK;
  } catch (const Error& e) {
    return fail(static_cast<lz_status>(e.code()), e.what());
  } catch (const Json::exception& e) {
    return fail(LZ_ERR_SCHEMA, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LZ_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LZ_ERR_INTERNAL, e.what());
  }
}

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw InvalidArgumentError(std::string(what) + " is NULL");
}

Label label_arg(const char* name) {
  need(name, "label");
  auto l = parse_label(name);
  if (!l) throw SchemaError(std::string("unknown family label '") + name + "'");
  return *l;
}

std::optional<Subspace> nilradical_arg(const Algebra& a, const char* text) {
  if (!text) return std::nullopt;
  auto idx = parse_indices(text);
  for (auto i : idx)
    if (i >= a.dim()) throw SchemaError("nilradical index " + std::to_string(i) + " outside the basis");
  return Subspace::coordinate(a.dim(), idx);
}

Json class_json(const AlgebraClass& c) {
  const char* kind = c.kind == AlgebraClass::Kind::kNilpotent               ? "nilpotent"
                     : c.kind == AlgebraClass::Kind::kSolvableNotNilpotent ? "solvable_not_nilpotent"
                                                                           : "neither";
  return {{"kind", kind}, {"index", c.index}, {"text", to_string(c)}};
}

Json certificate_json(const Algebra& a, const FamilySpec& spec) {
  const int k = spec.k;
  std::vector<std::size_t> e(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = i;
  Subspace nil = Subspace::coordinate(a.dim(), e);
  auto nc = nilradical_check(a, nil);
  std::vector<Vector> q;
  for (auto idx : nil.complement_indices()) q.push_back(unit_vector(a.dim(), idx));
  auto ni = nil_independence_rank(a, nil, q);
  auto round = classify_algebra(a);
  Json j;
  j["spec"] = spec_json(spec);
  j["leibniz_violations"] = check_leibniz(a).size();
  j["class"] = class_json(algebra_class(a));
  j["nilradical"] = {{"indices", e},
                     {"is_nilpotent_ideal", nc.is_nilpotent_ideal},
                     {"one_dim_extension_maximal", nc.one_dim_extension_maximal}};
  j["nil_independence"] = {{"rank", ni.rank}, {"independent", ni.independent}};
  j["classified_as"] = spec_json(round.result.spec.spec);
  j["round_trip"] = round.result.spec.spec == spec;
  return j;
}

}  // namespace

extern "C" {

const char* lz_version(void) { return "0.1.0"; }

const char* lz_status_name(lz_status status) { return error_code_name(static_cast<ErrorCode>(status)); }

const char* lz_last_error(void) { return last_error.c_str(); }

void lz_string_free(char* s) { std::free(s); }

lz_status lz_algebra_from_json(const char* json, lz_algebra** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new lz_algebra{parse_algebra_file(json)};
  });
}

lz_status lz_algebra_to_json(const lz_algebra* a, char** out) {
  return guarded([&] {
    need(a, "algebra");
    need(out, "out");
    *out = copy_out(dump(algebra_to_json(a->algebra)));
  });
}

lz_status lz_algebra_generate(const char* label, int k, int t, const char* params, lz_algebra** out) {
  return guarded([&] {
    need(out, "out");
    Label l = label_arg(label);
    FamilySpec spec = make_spec(l, k, t > 0 ? std::optional<int>(t) : std::nullopt, parse_params(params ? params : ""));
    Algebra a = instantiate_family(spec);
    a.set_labels(family_basis_labels(k));
    *out = new lz_algebra{std::move(a)};
  });
}

lz_status lz_algebra_dim(const lz_algebra* a, size_t* out) {
  return guarded([&] {
    need(a, "algebra");
    need(out, "out");
    *out = a->algebra.dim();
  });
}

void lz_algebra_free(lz_algebra* a) { delete a; }

lz_status lz_verify(const lz_algebra* a, const char* nilradical, int* passed, char** out) {
  return guarded([&] {
    need(a, "algebra");
    need(out, "out");
    const Algebra& alg = a->algebra;
    auto nil = nilradical_arg(alg, nilradical);
    auto violations = check_leibniz(alg);
    Json j;
    Json leib = {{"holds", violations.empty()}, {"violations", violations.size()}};
    if (!violations.empty()) {
      const auto& v = violations.front();
      leib["first_violation"] = {{"triple", {v.i, v.j, v.m}}, {"defect", vector_json(v.defect)}};
    }
    j["leibniz"] = leib;
    j["class"] = class_json(algebra_class(alg));
    bool ok = violations.empty();
    if (nil) {
      auto c = nilradical_check(alg, *nil);
      Json nj = {{"dim", nil->dim()},
                 {"is_nilpotent_ideal", c.is_nilpotent_ideal},
                 {"one_dim_extension_maximal", c.one_dim_extension_maximal}};
      if (c.failing_witness) nj["failing_witness"] = vector_json(*c.failing_witness);
      j["nilradical"] = nj;
      ok = ok && c.is_nilpotent_ideal && c.one_dim_extension_maximal;
    }
    if (passed) *passed = ok ? 1 : 0;
    *out = copy_out(dump(j));
  });
}

lz_status lz_classify(const lz_algebra* a, const char* nilradical, char** out) {
  return guarded([&] {
    need(a, "algebra");
    need(out, "out");
    const Algebra& alg = a->algebra;
    auto r = classify_algebra(alg, nilradical_arg(alg, nilradical));
    Json j;
    j["spec"] = spec_json(r.result.spec.spec);
    j["canonical"] = r.result.spec.canonical;
    j["table"] = spec_json(r.result.table);
    j["case_trace"] = r.result.case_trace;
    j["constraints"] = {{"checked", r.result.constraints.checked},
                        {"index", r.result.constraints.index},
                        {"violations", r.result.constraints.violations}};
    j["ek_in_right_annihilator"] = r.result.ek_in_right_annihilator;
    j["nu_vanishes"] = r.result.nu_vanishes;
    j["general_form"] = form_json(r.extraction.form);
    j["normalization_log"] = r.result.spec.normalization_log;
    j["change"] = change_json(r.change);
    j["witness_verified"] = verify_witness(alg, instantiate_family(r.result.spec.spec), r.change.matrix);
    *out = copy_out(dump(j));
  });
}

lz_status lz_invariants(const lz_algebra* a, char** out) {
  return guarded([&] {
    need(a, "algebra");
    need(out, "out");
    *out = copy_out(dump(profile_json(invariant_profile(a->algebra))));
  });
}

lz_status lz_isomorphism_search(const lz_algebra* a, const lz_algebra* b, lz_budget budget, int* found, char** out) {
  return guarded([&] {
    need(a, "first algebra");
    need(b, "second algebra");
    need(out, "out");
    auto r = isomorphism_search(a->algebra, b->algebra,
                                budget == LZ_BUDGET_FULL_SMALL ? SearchBudget::kFullSmall
                                                               : SearchBudget::kPermutationScaling);
    Json j;
    j["result"] = r.isomorphic() ? "isomorphic" : "inconclusive";
    j["candidates"] = r.candidates;
    j["witness"] = r.isomorphic() ? change_json(*r.witness) : Json(nullptr);
    if (found) *found = r.isomorphic() ? 1 : 0;
    *out = copy_out(dump(j));
  });
}

lz_status lz_fuzz(const char* label, int k, int t, size_t trials, uint64_t seed, int* all_passed, char** out) {
  return guarded([&] {
    need(out, "out");
    FuzzOptions o;
    o.label = label_arg(label);
    o.k = k;
    if (t > 0) o.t = t;
    o.trials = trials;
    o.seed = seed;
    auto r = fuzz_round_trip(o);
    Json j;
    j["label"] = label_name(o.label);
    j["k"] = k;
    j["t"] = o.t ? Json(*o.t) : Json(nullptr);
    j["trials"] = r.trials;
    j["passed"] = r.passed;
    j["failed"] = r.failed;
    j["case1_trials"] = r.case1;
    j["case1_violations"] = r.case1_violations;
    if (r.first_failure)
      j["first_counterexample"] = {{"trial", r.first_failure->trial},
                                   {"spec", spec_json(r.first_failure->spec)},
                                   {"reason", r.first_failure->reason}};
    else
      j["first_counterexample"] = nullptr;
    if (all_passed) *all_passed = r.failed == 0 ? 1 : 0;
    *out = copy_out(dump(j));
  });
}

lz_status lz_list_families(int k, char** out) {
  return guarded([&] {
    need(out, "out");
    Json list = Json::array();
    for (const auto& b : canonical_branches(k))
      list.push_back({{"label", label_name(b.label(k))},
                      {"family", "M" + std::to_string(static_cast<int>(b.family))},
                      {"t", b.t},
                      {"branch", b.branch},
                      {"pattern", b.pattern}});
    Json j;
    j["k"] = k;
    j["branches"] = list;
    *out = copy_out(dump(j));
  });
}

lz_status lz_catalog(int k, const char* dir, char** out) {
  return guarded([&] {
    need(dir, "dir");
    need(out, "out");
    namespace fs = std::filesystem;
    fs::path root(dir);
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) throw InvalidArgumentError("cannot create " + root.string() + ": " + ec.message());
    Json entries = Json::array();
    std::size_t index = 0;
    for (const auto& spec : canonical_sample(k, 3, 1)) {
      Algebra a = instantiate_family(spec);
      a.set_labels(family_basis_labels(k));
      char stem[64];
      std::snprintf(stem, sizeof stem, "%03zu_%s_t%d", index++, label_name(spec.label).c_str(), spec.t);
      const std::string file = std::string(stem) + ".json", cert = std::string(stem) + ".cert.json";
      std::ofstream(root / file) << dump(algebra_to_json(a));
      std::ofstream(root / cert) << dump(certificate_json(a, spec));
      entries.push_back({{"file", file}, {"certificate", cert}, {"spec", spec_json(spec)}});
    }
    Json j;
    j["k"] = k;
    j["entries"] = entries;
    std::ofstream(root / "index.json") << dump(j);
    *out = copy_out(dump(j));
  });
}

lz_status lz_collision_report(int k, size_t draws, uint64_t seed, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = copy_out(collision_report(k, draws, seed).text());
  });
}

lz_status lz_sha256_hex(const void* data, size_t len, char** out) {
  return guarded([&] {
    need(out, "out");
    if (len > 0) need(data, "data");
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    if (EVP_Digest(data, len, digest, &digest_len, EVP_sha256(), nullptr) != 1)
      throw InternalError("SHA-256 failed");
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned int i = 0; i < digest_len; ++i) {
      s.push_back(hex[digest[i] >> 4]);
      s.push_back(hex[digest[i] & 15]);
    }
    *out = copy_out(s);
  });
}

}  // extern "C"
