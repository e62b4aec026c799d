#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pir/rational.hpp"
#include "pir/subset.hpp"

namespace pir {

// Per-database fractional storage budgets m = (m_1,...,m_N) plus the number
// of messages K. All values are immutable after construction.
struct StorageProfile {
  std::vector<Rational> budgets;  // each in [0, 1]
  int message_count = 1;          // K >= 1

  int database_count() const { return static_cast<int>(budgets.size()); }
  Rational sum_storage() const;           // m_s
  Rational average_storage() const;       // mu = m_s / N

  // N >= 1, K >= 1, 0 <= m_n <= 1 for all n.
  bool well_formed() const;
};

// Uncoded placement: alpha_S per nonempty subset S. Absent keys are zero;
// stored values are kept nonzero-sparse only by convention, zero entries are
// legal.
struct PlacementPlan {
  std::map<SubsetId, Rational, SubsetCanonicalLess> shares;
  StorageProfile profile;

  Rational share(const SubsetId& s) const;
  Rational total_mass() const;                    // sum of alpha_S
  Rational load(int database) const;              // sum over S containing n
};

// Aggregated per-level sizes beta_ell = sum over |S| = ell of alpha_S.
// levels[i] is beta_{i+1}.
struct BetaProfile {
  std::vector<Rational> levels;

  int level_count() const { return static_cast<int>(levels.size()); }
  Rational total() const;
  // At most two nonzero entries, consecutive when two (the structure the
  // relaxed solver guarantees).
  bool has_two_consecutive_structure() const;
};

struct CapacityPoint {
  Rational download_cost;  // D* = D/L
  Rational sum_storage;    // m_s
};

enum class PlacementConstraint { kNonnegativity, kUnitMass, kBudget };

struct PlacementViolation {
  PlacementConstraint constraint;
  // Database index for budget violations, 0 otherwise.
  int database = 0;
  // Offending subset for negativity violations.
  std::optional<SubsetId> subset;
  // Exact amount by which the constraint is missed.
  Rational residual;
  std::string describe() const;
};

struct ValidationReport {
  std::vector<PlacementViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks nonnegativity, unit total mass, and every per-database budget with
// exact arithmetic. Always returns a report, never throws.
ValidationReport validate_placement(const PlacementPlan& plan);

// beta_ell = sum over |S| = ell of alpha_S, for ell = 1..N.
BetaProfile beta_of(const PlacementPlan& plan);

// Text format:
//   N=<N> K=<K> m=<m1>,<m2>,...
//   <comma-separated indices> <numerator>/<denominator>
std::string serialize_plan(const PlacementPlan& plan);
std::optional<PlacementPlan> parse_plan(std::istream& in, std::string* error = nullptr);
std::optional<PlacementPlan> parse_plan(const std::string& text, std::string* error = nullptr);

}  // namespace pir
