#pragma once

#include <random>
#include <stdexcept>

#include "pir/model.hpp"
#include "pir/rational.hpp"

namespace pir {

// Random valid profile with an exact prescribed sum storage: each budget is
// drawn as k/denominator inside the window that keeps the remaining sum
// reachable, the last one takes the exact remainder.
inline StorageProfile random_profile_with_sum(std::mt19937_64& rng, int database_count,
                                              int message_count, const Rational& sum_storage,
                                              long long denom = 360) {
  if (sum_storage < 0 || sum_storage > database_count)
    throw std::invalid_argument("sum storage outside [0, N]");
  StorageProfile profile;
  profile.message_count = message_count;
  Rational remaining = sum_storage;
  for (int i = 0; i < database_count; ++i) {
    int left = database_count - 1 - i;
    if (left == 0) {
      profile.budgets.push_back(remaining);
      break;
    }
    Rational lo = remaining - left;  // the rest can absorb at most `left`
    if (lo < 0) lo = 0;
    Rational hi = remaining > 1 ? Rational(1) : remaining;
    // Integer grid [ceil(lo*denom), floor(hi*denom)] on the 1/denom lattice.
    Rational lo_scaled = lo * denom, hi_scaled = hi * denom;
    Integer lo_num = numerator(lo_scaled), lo_den = denominator(lo_scaled);
    Integer hi_num = numerator(hi_scaled), hi_den = denominator(hi_scaled);
    long long lo_tick = ((lo_num + lo_den - 1) / lo_den).convert_to<long long>();
    long long hi_tick = (hi_num / hi_den).convert_to<long long>();
    Rational m;
    if (hi_tick < lo_tick) {
      // Off-lattice window narrower than 1/denom: take the exact bound.
      m = lo;
    } else {
      std::uniform_int_distribution<long long> dist(lo_tick, hi_tick);
      m = Rational(dist(rng), denom);
    }
    profile.budgets.push_back(m);
    remaining -= m;
  }
  return profile;
}

// Random m_s in [min_sum, N] on the 1/denom lattice.
inline Rational random_sum_storage(std::mt19937_64& rng, int database_count,
                                   const Rational& min_sum, long long denom = 360) {
  Rational scaled = min_sum * denom;
  Integer lo_int = numerator(scaled) / denominator(scaled);
  long long lo = lo_int.convert_to<long long>();
  std::uniform_int_distribution<long long> dist(lo, database_count * denom);
  return Rational(dist(rng), denom);
}

}  // namespace pir
