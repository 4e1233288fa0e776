#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "leibniz/families.hpp"
#include "leibniz/normalizer.hpp"

namespace leibniz {

struct FuzzOptions {
  Label label = Label::kL1;
  int k = 3;
  std::optional<int> t;  // random within the label's range when unset
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  ScrambleProfile profile = ScrambleProfile::kNilradicalPreserving;
  bool through_json = true;  // serialize and parse the scrambled tensor
};

struct FuzzCounterexample {
  std::size_t trial = 0;
  FamilySpec spec;
  std::string reason;
};

// Trial i uses its own generator seeded from (seed, i), so the report does
// not depend on execution order.
struct FuzzReport {
  std::size_t trials = 0, passed = 0, failed = 0;
  std::size_t case1 = 0, case1_violations = 0;
  std::optional<FuzzCounterexample> first_failure;
};

FuzzReport fuzz_round_trip(const FuzzOptions& options);

// Parameters for one fuzz trial: about a third of the entries zero, the rest
// small rationals.
Vector random_family_params(Family family, int k, std::uint64_t seed);

}  // namespace leibniz
