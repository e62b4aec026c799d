#pragma once

#include <optional>
#include <utility>

#include "pir/model.hpp"
#include "pir/rational.hpp"

namespace pir {

// D~_ell = 1 + 1/ell + ... + 1/ell^{K-1}: optimal normalized download cost
// with ell replicated databases and K messages. Throws std::domain_error for
// level < 1 or K < 1.
Rational level_cost(int level, int message_count);

// Closed-form solution of the relaxed (sum-storage) problem. nullopt when
// m_s < 1. Output has at most two nonzero entries, consecutive when two.
std::optional<BetaProfile> solve_relaxed(const StorageProfile& profile);
std::optional<BetaProfile> solve_relaxed_sum(const Rational& sum_storage, int database_count);

// sum over ell of beta_ell * D~_ell.
Rational relaxed_cost(const BetaProfile& beta, int message_count);

// N = 3 closed forms: (17 - 15 mu)/4 for m_s in [1,2] and (85 - 33 mu)/36
// for m_s in [2,3], K = 3 only; other K routes through the relaxed solver.
// nullopt when m_s < 1; std::domain_error when N != 3.
std::optional<CapacityPoint> capacity_closed_form_n3(const StorageProfile& profile);

// Full LP over all 2^N - 1 subsets, exact simplex. Supported for N <= 16.
// nullopt when m_s < 1.
std::optional<std::pair<PlacementPlan, CapacityPoint>> solve_lp(const StorageProfile& profile);

// Independent oracle: enumerates every basic solution of the standard-form
// constraint system, keeps the feasible ones, returns the exact minimum.
// std::domain_error for N > 4.
std::optional<CapacityPoint> oracle_vertex_enumeration(const StorageProfile& profile);

// Lower convex hull of the (t/N, D~_t) trade-off evaluated at storage mu.
// std::domain_error for mu outside [0,1]; nullopt when N*mu < 1.
std::optional<CapacityPoint> homogeneous_capacity(const Rational& mu, int database_count,
                                                  int message_count);

}  // namespace pir
