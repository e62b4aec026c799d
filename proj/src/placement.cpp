#include "pir/placement.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

#include "pir/capacity.hpp"
#include "pir/simplex.hpp"

namespace pir {
namespace {

// Active levels of a relaxed-optimal beta: one level at integer m_s, two
// consecutive levels otherwise.
std::vector<int> active_levels(const BetaProfile& beta) {
  std::vector<int> out;
  for (int level = 1; level <= beta.level_count(); ++level) {
    if (beta.levels[level - 1] != 0) out.push_back(level);
  }
  return out;
}

}  // namespace

EqualitySystem assemble_system(const StorageProfile& profile, const BetaProfile& beta) {
  if (!beta.has_two_consecutive_structure() || beta.total() != 1)
    throw std::invalid_argument("beta does not have the relaxed-solution structure");
  const int n = profile.database_count();
  auto levels = active_levels(beta);
  if (levels.empty() || levels.size() > 2 ||
      (levels.size() == 2 && levels[1] != levels[0] + 1))
    throw std::invalid_argument("beta must have one or two consecutive active levels");

  EqualitySystem system;
  system.database_count = n;
  for (int level : levels) {
    auto cols = subsets_of_size(n, level);
    system.columns.insert(system.columns.end(), cols.begin(), cols.end());
  }
  const int width = static_cast<int>(system.columns.size());

  // Budget rows hold with equality only when the pooled constraint binds
  // strictly between integers; at integer m_s some budget can be slack.
  system.budgets_tight = levels.size() == 2;

  for (int db = 1; db <= n; ++db) {
    std::vector<Rational> row(width, Rational(0));
    for (int j = 0; j < width; ++j) {
      if (system.columns[j].contains(db)) row[j] = 1;
    }
    system.rows.push_back(std::move(row));
    system.rhs.push_back(profile.budgets[db - 1]);
  }
  for (int level : levels) {
    std::vector<Rational> row(width, Rational(0));
    for (int j = 0; j < width; ++j) {
      if (system.columns[j].size() == level) row[j] = 1;
    }
    system.rows.push_back(std::move(row));
    system.rhs.push_back(beta.levels[level - 1]);
  }
  return system;
}

std::variant<PlacementPlan, FarkasCertificate> lift_beta(const StorageProfile& profile,
                                                         const BetaProfile& beta) {
  EqualitySystem system = assemble_system(profile, beta);
  const int n = profile.database_count();
  const int width = static_cast<int>(system.columns.size());

  DenseLp lp;
  lp.objective.assign(width, Rational(0));
  if (system.budgets_tight) {
    lp.eq_rows = system.rows;
    lp.eq_rhs = system.rhs;
  } else {
    // Integer m_s: budgets become <= with slack, only the level-mass row is
    // an equality.
    for (int i = 0; i < n; ++i) {
      lp.ub_rows.push_back(system.rows[i]);
      lp.ub_rhs.push_back(system.rhs[i]);
    }
    for (std::size_t i = n; i < system.rows.size(); ++i) {
      lp.eq_rows.push_back(system.rows[i]);
      lp.eq_rhs.push_back(system.rhs[i]);
    }
  }

  auto sol = solve_dense_lp(lp);
  if (sol.status == LpStatus::kInfeasible) {
    FarkasCertificate cert;
    if (system.budgets_tight) {
      cert.y = sol.farkas;
    }
    return cert;
  }
  PlacementPlan plan;
  plan.profile = profile;
  for (int j = 0; j < width; ++j) {
    if (sol.values[j] != 0) plan.shares[system.columns[j]] = sol.values[j];
  }
  return plan;
}

std::optional<PlacementPlan> place_n3_table(const StorageProfile& profile) {
  if (profile.database_count() != 3) throw std::domain_error("place_n3_table requires N = 3");
  const Rational ms = profile.sum_storage();
  if (ms < 1) return std::nullopt;

  // Sort budgets descending; perm[i] is the original index of sorted slot i.
  std::array<int, 3> perm{0, 1, 2};
  std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
    return profile.budgets[a] > profile.budgets[b];
  });
  const Rational m1 = profile.budgets[perm[0]];
  const Rational m2 = profile.budgets[perm[1]];
  const Rational m3 = profile.budgets[perm[2]];

  // alpha values in sorted index space; singles[i] for {i+1}, pairs in the
  // order {1,2}, {1,3}, {2,3}, then the triple.
  std::array<Rational, 3> singles{Rational(0), Rational(0), Rational(0)};
  std::array<Rational, 3> pairs{Rational(0), Rational(0), Rational(0)};
  Rational triple = 0;

  if (ms <= 2) {
    if (m1 + m3 >= 1) {
      // Rows with m1+m2 >= 1 and m1+m3 >= 1 (first two table rows, shared
      // assignment; note m1+m2 >= m1+m3 always holds under the sort).
      singles[0] = 2 - ms;
      pairs[0] = m1 + m2 - 1;
      pairs[1] = m1 + m3 - 1;
      pairs[2] = 1 - m1;
    } else {
      // Rows with m1+m3 <= 1 (third and fourth rows, shared assignment).
      singles[0] = 1 - (m2 + m3);
      singles[1] = 1 - (m1 + m3);
      singles[2] = m3;
      pairs[0] = ms - 1;
    }
  } else {
    pairs[0] = 1 - m3;
    pairs[1] = 1 - m2;
    pairs[2] = 1 - m1;
    triple = ms - 2;
  }

  // Map sorted index space back to the caller's database order.
  auto original = [&](int sorted_index) { return perm[sorted_index] + 1; };
  PlacementPlan plan;
  plan.profile = profile;
  auto put = [&](std::vector<int> members, const Rational& value) {
    if (value == 0) return;
    plan.shares[SubsetId::from_members(members)] = value;
  };
  for (int i = 0; i < 3; ++i) put({original(i)}, singles[i]);
  put({original(0), original(1)}, pairs[0]);
  put({original(0), original(2)}, pairs[1]);
  put({original(1), original(2)}, pairs[2]);
  put({1, 2, 3}, triple);
  return plan;
}

bool verify_certificate(const EqualitySystem& system, const FarkasCertificate& cert) {
  if (cert.y.size() != system.rows.size())
    throw std::invalid_argument("certificate length does not match system rows");
  const int width = static_cast<int>(system.columns.size());
  for (int j = 0; j < width; ++j) {
    Rational dot = 0;
    for (std::size_t i = 0; i < system.rows.size(); ++i) dot += system.rows[i][j] * cert.y[i];
    if (dot < 0) return false;
  }
  Rational rhs_dot = 0;
  for (std::size_t i = 0; i < system.rows.size(); ++i) rhs_dot += system.rhs[i] * cert.y[i];
  return rhs_dot < 0;
}

}  // namespace pir
