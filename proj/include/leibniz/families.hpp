#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/basis_change.hpp"
#include "leibniz/random.hpp"

namespace leibniz {

// Public labels. L1..L5 have every alpha = 0, L6..L10 every alpha = -1, and
// M1..M7 split the x's at t.
enum class Label { kL1, kL2, kL3, kL4, kL5, kL6, kL7, kL8, kL9, kL10, kM1, kM2, kM3, kM4, kM5, kM6, kM7 };

// Table shape behind a label.
enum class Family { kM1 = 1, kM2, kM3, kM4, kM5, kM6, kM7 };

std::string label_name(Label label);
std::optional<Label> parse_label(std::string_view name);
std::vector<Label> all_labels();
bool is_l_label(Label label);
Family family_of(Label label);
std::string param_name(Family family);  // beta, gamma, nu or delta

// Admissible t for the unified constructor (L aliases included).
struct TRange {
  int lo, hi;
};
TRange family_t_range(Family family, int k);
// Admissible t for a public label; L labels have lo == hi.
TRange label_t_range(Label label, int k);
std::optional<Label> l_alias(Family family, int k, int t);
// The L alias when one exists, otherwise the M label.
Label label_for(Family family, int k, int t);

std::size_t param_count(Family family, int k);

struct FamilySpec {
  Label label = Label::kM1;
  int k = 2;
  int t = 1;      // for L labels, the implied split (1 or k)
  Vector params;  // beta, gamma or nu (length k-1); delta row-major ((k-1)^2)

  Family family() const { return family_of(label); }
  bool operator==(const FamilySpec&) const = default;
};

// Validates shape and t; t may be omitted for L labels.
FamilySpec make_spec(Label label, int k, std::optional<int> t, Vector params);
FamilySpec make_family_spec(Family family, int k, int t, Vector params);
void validate(const FamilySpec& spec);
std::string to_string(const FamilySpec& spec);

// Basis order e_1..e_k, x_1..x_{k-1}; indices are 1-based here.
inline std::size_t e_index(int /*k*/, int i) { return static_cast<std::size_t>(i - 1); }
inline std::size_t x_index(int k, int j) { return static_cast<std::size_t>(k + j - 1); }
std::vector<std::string> family_basis_labels(int k);

Algebra instantiate_family(const FamilySpec& spec);

struct NormalizedSpec {
  FamilySpec spec;
  bool canonical = false;
  std::vector<std::string> normalization_log;
  // Conjugates instantiate_family(input) onto instantiate_family(spec).
  BasisChange change;
};

NormalizedSpec normalize_params(const FamilySpec& spec);

struct Rewrite {
  FamilySpec target;
  BasisChange change;
};

// M2,t with some beta_j != 0 (j >= t) becomes M1,t+1; M6,t becomes M5,t+1.
std::optional<Rewrite> rewrite_isomorphism(const FamilySpec& spec);

// sigma[i-1] is the old index moved to position i (1 <= i <= k-1); e_k is
// fixed. The pair (e_i, x_i) moves together.
BasisChange pair_permutation(int k, const std::vector<int>& sigma);
FamilySpec permute_params(const FamilySpec& spec, const std::vector<int>& sigma);

enum class Summand { kL2, kR2 };

// Direct sum of l2 and r2 copies, basis e_1..e_k, x_1..x_k.
Algebra instantiate_max_class(const std::vector<Summand>& signature);

// One line of the normalized list for a given k.
struct CanonicalBranch {
  Family family;
  int t;
  int branch;  // 1-based within the family's list
  std::string pattern;

  Label label(int k) const { return label_for(family, k, t); }
};

std::vector<CanonicalBranch> canonical_branches(int k);

// Parameter draws satisfying the branch pattern: free entries all 0, all 1,
// then random small rationals.
std::vector<Vector> branch_samples(const CanonicalBranch& branch, int k, std::size_t count, std::uint64_t seed);

}  // namespace leibniz
