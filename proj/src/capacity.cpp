#include "pir/capacity.hpp"

#include <stdexcept>

#include "pir/simplex.hpp"

namespace pir {

Rational level_cost(int level, int message_count) {
  if (level < 1 || message_count < 1)
    throw std::domain_error("level_cost requires level >= 1 and K >= 1");
  Rational cost = 0;
  Rational term = 1;
  for (int k = 0; k < message_count; ++k) {
    cost += term;
    term /= level;
  }
  return cost;
}

std::optional<BetaProfile> solve_relaxed_sum(const Rational& sum_storage, int database_count) {
  if (sum_storage > database_count)
    throw std::domain_error("sum storage exceeds database count");
  if (sum_storage < 1) return std::nullopt;
  BetaProfile beta;
  beta.levels.assign(database_count, Rational(0));
  Integer floor = numerator(sum_storage) / denominator(sum_storage);
  if (denominator(sum_storage) == 1) {
    // Integer m_s = j: the single level j carries everything.
    beta.levels[floor.convert_to<int>() - 1] = 1;
    return beta;
  }
  // j - 1 < m_s < j: split across the two consecutive levels.
  int j = floor.convert_to<int>() + 1;
  beta.levels[j - 2] = Rational(j) - sum_storage;
  beta.levels[j - 1] = sum_storage - Rational(j - 1);
  return beta;
}

std::optional<BetaProfile> solve_relaxed(const StorageProfile& profile) {
  return solve_relaxed_sum(profile.sum_storage(), profile.database_count());
}

Rational relaxed_cost(const BetaProfile& beta, int message_count) {
  Rational cost = 0;
  for (int level = 1; level <= beta.level_count(); ++level) {
    const Rational& b = beta.levels[level - 1];
    if (b != 0) cost += b * level_cost(level, message_count);
  }
  return cost;
}

std::optional<CapacityPoint> capacity_closed_form_n3(const StorageProfile& profile) {
  if (profile.database_count() != 3)
    throw std::domain_error("capacity_closed_form_n3 requires N = 3");
  const Rational ms = profile.sum_storage();
  if (ms < 1) return std::nullopt;
  if (profile.message_count == 3) {
    const Rational mu = ms / 3;
    if (ms <= 2) return CapacityPoint{(17 - 15 * mu) / 4, ms};
    return CapacityPoint{(85 - 33 * mu) / 36, ms};
  }
  auto beta = solve_relaxed(profile);
  return CapacityPoint{relaxed_cost(*beta, profile.message_count), ms};
}

std::optional<std::pair<PlacementPlan, CapacityPoint>> solve_lp(const StorageProfile& profile) {
  const int n = profile.database_count();
  if (n > 16) throw std::domain_error("solve_lp supports N <= 16");
  const auto subsets = all_subsets(n);

  DenseLp lp;
  lp.objective.reserve(subsets.size());
  for (const auto& s : subsets)
    lp.objective.push_back(level_cost(s.size(), profile.message_count));
  lp.eq_rows.emplace_back(subsets.size(), Rational(1));
  lp.eq_rhs.emplace_back(1);
  for (int db = 1; db <= n; ++db) {
    std::vector<Rational> row(subsets.size(), Rational(0));
    for (std::size_t j = 0; j < subsets.size(); ++j) {
      if (subsets[j].contains(db)) row[j] = 1;
    }
    lp.ub_rows.push_back(std::move(row));
    lp.ub_rhs.push_back(profile.budgets[db - 1]);
  }

  auto sol = solve_dense_lp(lp);
  if (sol.status == LpStatus::kInfeasible) return std::nullopt;

  PlacementPlan plan;
  plan.profile = profile;
  for (std::size_t j = 0; j < subsets.size(); ++j) {
    if (sol.values[j] != 0) plan.shares[subsets[j]] = sol.values[j];
  }
  CapacityPoint point{sol.objective, profile.sum_storage()};
  return std::make_pair(std::move(plan), point);
}

std::optional<CapacityPoint> oracle_vertex_enumeration(const StorageProfile& profile) {
  const int n = profile.database_count();
  if (n > 4) throw std::domain_error("oracle_vertex_enumeration supports N <= 4");
  const auto subsets = all_subsets(n);
  const int n_struct = static_cast<int>(subsets.size());
  const int n_vars = n_struct + n;  // alpha plus one slack per budget row
  const int m = n + 1;              // mass row plus budget rows

  // Standard-form system: mass row, then budget rows with +1 slacks.
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n_vars, Rational(0)));
  std::vector<Rational> b(m);
  for (int j = 0; j < n_struct; ++j) a[0][j] = 1;
  b[0] = 1;
  for (int db = 1; db <= n; ++db) {
    for (int j = 0; j < n_struct; ++j) {
      if (subsets[j].contains(db)) a[db][j] = 1;
    }
    a[db][n_struct + db - 1] = 1;
    b[db] = profile.budgets[db - 1];
  }

  std::optional<Rational> best;
  std::vector<int> pick(m);
  for (int i = 0; i < m; ++i) pick[i] = i;

  auto evaluate = [&](const std::vector<int>& cols) {
    // Solve the m x m basis system by Gaussian elimination.
    std::vector<std::vector<Rational>> mat(m, std::vector<Rational>(m + 1));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) mat[i][j] = a[i][cols[j]];
      mat[i][m] = b[i];
    }
    for (int col = 0; col < m; ++col) {
      int piv = -1;
      for (int r = col; r < m; ++r) {
        if (mat[r][col] != 0) {
          piv = r;
          break;
        }
      }
      if (piv < 0) return;  // singular basis
      std::swap(mat[col], mat[piv]);
      const Rational p = mat[col][col];
      for (int j = col; j <= m; ++j) mat[col][j] /= p;
      for (int r = 0; r < m; ++r) {
        if (r == col || mat[r][col] == 0) continue;
        const Rational f = mat[r][col];
        for (int j = col; j <= m; ++j) mat[r][j] -= f * mat[col][j];
      }
    }
    Rational objective = 0;
    for (int i = 0; i < m; ++i) {
      const Rational& x = mat[i][m];
      if (x < 0) return;  // basic solution not feasible
      if (cols[i] < n_struct) objective += x * level_cost(subsets[cols[i]].size(), profile.message_count);
    }
    if (!best || objective < *best) best = objective;
  };

  // Enumerate all m-subsets of columns.
  while (true) {
    evaluate(pick);
    int i = m - 1;
    while (i >= 0 && pick[i] == n_vars - m + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }

  if (!best) return std::nullopt;
  return CapacityPoint{*best, profile.sum_storage()};
}

std::optional<CapacityPoint> homogeneous_capacity(const Rational& mu, int database_count,
                                                  int message_count) {
  if (mu < 0 || mu > 1) throw std::domain_error("homogeneous_capacity requires mu in [0,1]");
  const Rational ms = mu * database_count;
  auto beta = solve_relaxed_sum(ms, database_count);
  if (!beta) return std::nullopt;
  return CapacityPoint{relaxed_cost(*beta, message_count), ms};
}

}  // namespace pir
