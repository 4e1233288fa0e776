#include "leibniz/fuzz.hpp"

#include "leibniz/errors.hpp"
#include "leibniz/invariants.hpp"
#include "leibniz/io.hpp"
#include "leibniz/random.hpp"

namespace leibniz {

namespace {

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Vector random_family_params(Family family, int k, std::uint64_t seed) {
  Rng rng(seed);
  Vector p(param_count(family, k));
  for (auto& x : p) x = rng.uniform(0, 2) == 0 ? Scalar(0) : rng.small_rational(4);
  return p;
}

FuzzReport fuzz_round_trip(const FuzzOptions& o) {
  const Family family = family_of(o.label);
  const TRange range = label_t_range(o.label, o.k);
  if (o.t && (*o.t < range.lo || *o.t > range.hi))
    throw InvalidArgumentError("t=" + std::to_string(*o.t) + " outside [" + std::to_string(range.lo) + ", " +
                               std::to_string(range.hi) + "] for " + label_name(o.label));
  FuzzReport report;
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    Rng rng(trial_seed(o.seed, trial));
    const int t = o.t ? *o.t : static_cast<int>(rng.uniform(range.lo, range.hi));
    FamilySpec spec = make_spec(o.label, o.k, is_l_label(o.label) ? std::nullopt : std::optional<int>(t),
                                random_family_params(family, o.k, rng.next()));
    ++report.trials;
    std::string reason;
    try {
      Algebra table = instantiate_family(spec);
      FamilySpec expected = classify_algebra(table).result.spec.spec;
      Algebra scrambled = apply_basis_change(table, random_basis_change(rng.next(), o.k, o.profile));
      if (o.through_json) scrambled = algebra_from_json(algebra_to_json(scrambled));
      AlgebraClassification got = classify_algebra(scrambled);
      if (got.result.constraints.checked) {
        ++report.case1;
        report.case1_violations += got.result.constraints.violations;
      }
      if (!(got.result.spec.spec == expected))
        reason = "classified as " + to_string(got.result.spec.spec) + ", expected " + to_string(expected);
      else if (!verify_witness(scrambled, instantiate_family(expected), got.change.matrix))
        reason = "witness does not conjugate onto the canonical table";
    } catch (const InconsistentFormError& e) {
      ++report.case1_violations;
      reason = std::string("inconsistent form: ") + e.what();
    } catch (const Error& e) {
      reason = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    if (reason.empty()) {
      ++report.passed;
    } else {
      ++report.failed;
      if (!report.first_failure) report.first_failure = FuzzCounterexample{trial, spec, reason};
    }
  }
  return report;
}

}  // namespace leibniz
