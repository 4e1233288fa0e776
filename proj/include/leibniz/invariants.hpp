#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/basis_change.hpp"
#include "leibniz/families.hpp"

namespace leibniz {

struct SpectrumEntry {
  Scalar value;
  std::size_t multiplicity = 0;
  bool operator==(const SpectrumEntry&) const = default;
};

// Every field is unchanged by a change of basis.
//
// right_spectrum_multiset: the joint weights of the right multiplications on
// the nilradical, as functionals on L/N. For every independent subset of
// weights of maximal size, the remaining weights are written in that subset;
// all coordinates are pooled with multiplicity. Empty with
// spectrum_available = false when the nilradical or a rational spectrum is
// not available.
struct InvariantProfile {
  std::size_t dim = 0;
  std::vector<std::size_t> lcs_dims;
  std::vector<std::size_t> ds_dims;
  std::size_t ann_r_dim = 0, ann_l_dim = 0, center_dim = 0;
  std::size_t der_dim = 0;
  std::size_t squared_dim = 0;
  std::vector<SpectrumEntry> right_spectrum_multiset;
  bool spectrum_available = false;

  bool operator==(const InvariantProfile&) const = default;
};

InvariantProfile invariant_profile(const Algebra& a);
std::string to_string(const InvariantProfile& p);

struct Distinction {
  bool distinguished = false;
  std::string field;  // first differing field
};

Distinction distinguish(const InvariantProfile& a, const InvariantProfile& b);
Distinction distinguish(const Algebra& a, const Algebra& b);

enum class SearchBudget { kPermutationScaling, kFullSmall };

// Semi-decision: a result without a witness says nothing about
// non-isomorphism.
struct SearchResult {
  std::optional<BasisChange> witness;
  std::size_t candidates = 0;
  bool isomorphic() const { return witness.has_value(); }
};

// change_basis(a, p) == b, exactly.
bool verify_witness(const Algebra& a, const Algebra& b, const Matrix& p);

// Tries `hints` first, then basis permutations matched on per-vector
// fingerprints with diagonal rescalings; kFullSmall (dim <= 5) also
// precomposes unipotent shears with at most two off-diagonal entries.
SearchResult isomorphism_search(const Algebra& a, const Algebra& b, SearchBudget budget,
                                const std::vector<BasisChange>& hints = {});

// Classifier representatives of samples from every canonical branch,
// deduplicated, in branch order.
std::vector<FamilySpec> canonical_sample(int k, std::size_t draws, std::uint64_t seed);

struct CollisionReport {
  int k = 0;
  std::size_t specs = 0, pairs = 0, distinguished = 0;
  std::vector<std::string> collisions;  // inconclusive pairs
  std::vector<std::string> isomorphic;  // pairs with a verified witness
  std::string text() const;
};

CollisionReport collision_report(int k, std::size_t draws, std::uint64_t seed);

}  // namespace leibniz
