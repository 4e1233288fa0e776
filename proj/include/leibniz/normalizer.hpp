#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leibniz/algebra.hpp"
#include "leibniz/basis_change.hpp"
#include "leibniz/families.hpp"

namespace leibniz {

// Coefficients of the general form, basis e_1..e_k, x_1..x_{k-1}:
//   [e_i,x_i] = e_i + beta(i,i) e_k        [e_i,x_j] = beta(i,j) e_k   (i <= k)
//   [x_i,e_i] = alpha_i e_i + gamma(i,i) e_k  [x_i,e_j] = gamma(i,j) e_k
//   [x_i,e_k] = sum_j nu(i,j) e_j           [x_i,x_j] = delta(i,j) e_k
// Matrices are 0-based: beta is k x (k-1), gamma and delta (k-1) x (k-1),
// nu (k-1) x k.
struct GeneralForm {
  int k = 2;
  int t = 1;
  Vector alpha;
  Matrix beta, gamma, nu, delta;

  bool operator==(const GeneralForm&) const = default;
};

GeneralForm empty_form(int k);
// Checks alpha in {0,-1}, the -1 entries first, t consistent, and shapes.
void validate(const GeneralForm& form);
Algebra instantiate_form(const GeneralForm& form);
// Reads the coefficients of an algebra already in general-form shape; throws
// NotInClassError when some product falls outside the template.
GeneralForm read_form(const Algebra& a, int k);

struct Extraction {
  GeneralForm form;
  BasisChange change;  // input basis -> instantiate_form(form)
  Subspace nilradical;
};

// Right centralizer of [L,L], accepted only when it is a k-dim abelian
// ideal passing nilradical_check.
Subspace discover_nilradical(const Algebra& a);

Extraction extract_general_form(const Algebra& a, const std::optional<Subspace>& nilradical_hint = std::nullopt);

struct CaseConstraints {
  bool checked = false;  // Case 1 only
  std::size_t index = 0;  // first i (1-based) with beta(k,i) outside {0,1}
  std::size_t violations = 0;
};

struct ClassificationResult {
  // Family-table presentation that keeps the form's e_k.
  FamilySpec table;
  BasisChange table_change;
  // Canonical representative and the witness taking the form's algebra onto it.
  NormalizedSpec spec;
  BasisChange change;
  std::vector<std::string> case_trace;
  CaseConstraints constraints;
  bool ek_in_right_annihilator = false;  // from annihilators_center
  bool nu_vanishes = false;              // [x_i, e_k] = 0 for all i
};

ClassificationResult classify(const GeneralForm& form);

struct AlgebraClassification {
  Extraction extraction;
  ClassificationResult result;
  BasisChange change;  // input basis -> instantiate_family(result.spec.spec)
};

AlgebraClassification classify_algebra(const Algebra& a, const std::optional<Subspace>& nilradical_hint = std::nullopt);

Algebra apply_basis_change(const Algebra& a, const BasisChange& p);

enum class ScrambleProfile { kNilradicalPreserving, kGeneral };

BasisChange random_basis_change(std::uint64_t seed, int k, ScrambleProfile profile);

// Canonical representative of the isomorphism class of a family instance.
FamilySpec canonical_form(const FamilySpec& spec);

std::string to_string(const GeneralForm& form);

}  // namespace leibniz
