#include <doctest.h>

#include <random>

#include "pir/capacity.hpp"
#include "pir/model.hpp"
#include "pir/profile_gen.hpp"

using namespace pir;

namespace {

StorageProfile make_profile(std::vector<Rational> budgets, int k) {
  StorageProfile p;
  p.budgets = std::move(budgets);
  p.message_count = k;
  return p;
}

}  // namespace

TEST_CASE("level_cost K=3 values") {
  CHECK(level_cost(1, 3) == rat(3));
  CHECK(level_cost(2, 3) == rat(7, 4));
  CHECK(level_cost(3, 3) == rat(13, 9));
  CHECK(level_cost(1, 5) == rat(5));
  CHECK(level_cost(4, 1) == rat(1));
  CHECK_THROWS_AS(level_cost(0, 3), std::domain_error);
  CHECK_THROWS_AS(level_cost(2, 0), std::domain_error);
}

TEST_CASE("level_cost is decreasing and convex in the level") {
  for (int k = 1; k <= 12; ++k) {
    for (int ell = 1; ell + 2 <= 12; ++ell) {
      Rational d0 = level_cost(ell, k), d1 = level_cost(ell + 1, k), d2 = level_cost(ell + 2, k);
      if (k > 1) CHECK(d1 < d0);
      CHECK(d0 - d1 >= d1 - d2);
    }
  }
}

TEST_CASE("solve_relaxed worked examples") {
  auto beta = solve_relaxed(make_profile({rat(9, 10), rat(6, 10), rat(3, 10)}, 3));
  REQUIRE(beta);
  CHECK(beta->levels == std::vector<Rational>{rat(1, 5), rat(4, 5), rat(0)});

  beta = solve_relaxed(make_profile({rat(1), rat(1), rat(1)}, 3));
  REQUIRE(beta);
  CHECK(beta->levels == std::vector<Rational>{rat(0), rat(0), rat(1)});

  CHECK(!solve_relaxed_sum(rat(1, 2), 4));
  CHECK(!solve_relaxed_sum(rat(0), 2));
}

TEST_CASE("solve_relaxed structure and integer pinning") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    int n = 2 + static_cast<int>(rng() % 7);
    Rational ms = random_sum_storage(rng, n, rat(1));
    auto beta = solve_relaxed_sum(ms, n);
    REQUIRE(beta);
    CHECK(beta->has_two_consecutive_structure());
    CHECK(beta->total() == rat(1));
    // The relaxed budget binds: sum of ell * beta_ell = m_s.
    Rational used = 0;
    for (int ell = 1; ell <= n; ++ell) used += ell * beta->levels[ell - 1];
    CHECK(used == ms);
  }
  for (int j = 1; j <= 6; ++j) {
    auto beta = solve_relaxed_sum(rat(j), 6);
    REQUIRE(beta);
    for (int ell = 1; ell <= 6; ++ell)
      CHECK(beta->levels[ell - 1] == (ell == j ? rat(1) : rat(0)));
  }
}

TEST_CASE("relaxed_cost examples") {
  BetaProfile beta;
  beta.levels = {rat(1, 5), rat(4, 5), rat(0)};
  CHECK(relaxed_cost(beta, 3) == rat(2));
  beta.levels = {rat(0), rat(0), rat(1)};
  CHECK(relaxed_cost(beta, 3) == rat(13, 9));
  beta.levels = {rat(1)};
  for (int k = 1; k <= 6; ++k) CHECK(relaxed_cost(beta, k) == rat(k));
}

TEST_CASE("N=3 closed form") {
  auto point = capacity_closed_form_n3(make_profile({rat(9, 10), rat(6, 10), rat(3, 10)}, 3));
  REQUIRE(point);
  CHECK(point->download_cost == rat(2));

  // mu = 11/15 lands in the upper regime: (85 - 33*(11/15))/36 = 76/45.
  point = capacity_closed_form_n3(make_profile({rat(1), rat(7, 10), rat(1, 2)}, 3));
  REQUIRE(point);
  CHECK(point->download_cost == (rat(85) - rat(33) * rat(11, 15)) / 36);
  CHECK(point->download_cost == rat(76, 45));

  point = capacity_closed_form_n3(make_profile({rat(1), rat(1), rat(1)}, 3));
  REQUIRE(point);
  CHECK(point->download_cost == rat(13, 9));

  CHECK(!capacity_closed_form_n3(make_profile({rat(1, 4), rat(1, 4), rat(1, 4)}, 3)));
  CHECK_THROWS_AS(capacity_closed_form_n3(make_profile({rat(1), rat(1)}, 3)), std::domain_error);
}

TEST_CASE("solve_lp worked examples") {
  auto solved = solve_lp(make_profile({rat(1), rat(1), rat(1)}, 3));
  REQUIRE(solved);
  CHECK(solved->second.download_cost == rat(13, 9));
  CHECK(solved->first.share(SubsetId::from_members({1, 2, 3})) == rat(1));
  CHECK(validate_placement(solved->first).ok());

  solved = solve_lp(make_profile({rat(9, 10), rat(6, 10), rat(3, 10)}, 3));
  REQUIRE(solved);
  CHECK(solved->second.download_cost == rat(2));
  CHECK(validate_placement(solved->first).ok());

  solved = solve_lp(make_profile({rat(1), rat(7, 10), rat(1, 2)}, 3));
  REQUIRE(solved);
  CHECK(solved->second.download_cost == rat(76, 45));
  CHECK(validate_placement(solved->first).ok());

  CHECK(!solve_lp(make_profile({rat(1, 4), rat(1, 4)}, 2)));
}

TEST_CASE("oracle worked examples and cross-checks") {
  auto point = oracle_vertex_enumeration(make_profile({rat(1), rat(1)}, 2));
  REQUIRE(point);
  CHECK(point->download_cost == rat(3, 2));

  point = oracle_vertex_enumeration(make_profile({rat(1, 2), rat(1, 2)}, 2));
  REQUIRE(point);
  CHECK(point->download_cost == rat(2));

  point = oracle_vertex_enumeration(make_profile({rat(3, 4), rat(3, 4)}, 2));
  REQUIRE(point);
  CHECK(point->download_cost == rat(7, 4));

  // Independent confirmation of the 76/45 closed-form value.
  point = oracle_vertex_enumeration(make_profile({rat(1), rat(7, 10), rat(1, 2)}, 3));
  REQUIRE(point);
  CHECK(point->download_cost == rat(76, 45));

  CHECK(!oracle_vertex_enumeration(make_profile({rat(1, 8), rat(1, 8)}, 2)));
  CHECK_THROWS_AS(
      oracle_vertex_enumeration(make_profile({rat(1), rat(1), rat(1), rat(1), rat(1)}, 2)),
      std::domain_error);
}

TEST_CASE("oracle equivalence on random instances") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    int k = 1 + static_cast<int>(rng() % 4);
    Rational ms = random_sum_storage(rng, n, rat(1), 24);
    StorageProfile profile = random_profile_with_sum(rng, n, k, ms, 24);
    auto solved = solve_lp(profile);
    auto oracle = oracle_vertex_enumeration(profile);
    REQUIRE(solved);
    REQUIRE(oracle);
    CHECK(solved->second.download_cost == oracle->download_cost);
  }
}

TEST_CASE("homogeneous_capacity corner points") {
  for (int n = 1; n <= 10; ++n) {
    for (int k = 1; k <= 8; ++k) {
      for (int t = 1; t <= n; ++t) {
        auto point = homogeneous_capacity(rat(t, n), n, k);
        REQUIRE(point);
        CHECK(point->download_cost == level_cost(t, k));
      }
    }
  }
  auto point = homogeneous_capacity(rat(3, 5), 3, 3);
  REQUIRE(point);
  CHECK(point->download_cost == rat(2));
  CHECK(!homogeneous_capacity(rat(1, 8), 4, 3));
  CHECK_THROWS_AS(homogeneous_capacity(rat(3, 2), 3, 3), std::domain_error);
}

TEST_CASE("heterogeneity invariance: cost depends only on the sum storage") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    int k = 1 + static_cast<int>(rng() % 3);
    Rational ms = random_sum_storage(rng, n, rat(1), 36);
    StorageProfile a = random_profile_with_sum(rng, n, k, ms, 36);
    StorageProfile b = random_profile_with_sum(rng, n, k, ms, 36);
    auto sa = solve_lp(a), sb = solve_lp(b);
    REQUIRE(sa);
    REQUIRE(sb);
    CHECK(sa->second.download_cost == sb->second.download_cost);
    auto hom = homogeneous_capacity(ms / n, n, k);
    REQUIRE(hom);
    CHECK(sa->second.download_cost == hom->download_cost);
  }
}

TEST_CASE("N=3 closed form matches solve_lp on a grid") {
  for (int a = 0; a <= 6; ++a) {
    for (int b = 0; b <= a; ++b) {
      for (int c = 0; c <= b; ++c) {
        StorageProfile profile = make_profile({rat(a, 6), rat(b, 6), rat(c, 6)}, 3);
        auto closed = capacity_closed_form_n3(profile);
        auto solved = solve_lp(profile);
        REQUIRE(closed.has_value() == solved.has_value());
        if (closed) CHECK(closed->download_cost == solved->second.download_cost);
      }
    }
  }
}
