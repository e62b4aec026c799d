#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "pir/model.hpp"
#include "pir/rational.hpp"
#include "pir/subset.hpp"

namespace pir {

// The equality system A alpha = b that lifts an optimal BetaProfile back to
// a concrete placement: one row per database budget, then one level-mass row
// per active level (two when m_s is strictly between integers, one when m_s
// is an integer). Columns are the subsets of the active sizes in canonical
// order; entries are 0/1.
struct EqualitySystem {
  std::vector<std::vector<Rational>> rows;  // (N + level rows) x columns
  std::vector<Rational> rhs;
  std::vector<SubsetId> columns;
  int database_count = 0;
  // True when the budget rows must hold with equality (non-integer m_s);
  // false at integer boundaries, where budgets are <= with slack.
  bool budgets_tight = true;
};

// y with A^T y >= 0 and b^T y < 0: a verifiable proof that A alpha = b has
// no nonnegative solution.
struct FarkasCertificate {
  std::vector<Rational> y;
};

// Builds the lifting system for a beta produced by solve_relaxed. Throws
// std::invalid_argument when beta violates the two-consecutive structure or
// m_s < 1.
EqualitySystem assemble_system(const StorageProfile& profile, const BetaProfile& beta);

// Phase-1 feasibility search on the equality system. A certificate return
// signals a bug or invalid input (the existence result guarantees a plan for
// every valid profile with 1 <= m_s <= N); it is independently checkable.
std::variant<PlacementPlan, FarkasCertificate> lift_beta(const StorageProfile& profile,
                                                         const BetaProfile& beta);

// Explicit N = 3 parametric assignment. Sorts budgets descending, picks the
// first table row whose conditions hold (ties resolved top-down), and maps
// indices back to the caller's order. nullopt when m_s < 1; std::domain_error
// when N != 3.
std::optional<PlacementPlan> place_n3_table(const StorageProfile& profile);

// True iff A^T y >= 0 componentwise and b^T y < 0, exactly. Throws
// std::invalid_argument on dimension mismatch.
bool verify_certificate(const EqualitySystem& system, const FarkasCertificate& cert);

}  // namespace pir
