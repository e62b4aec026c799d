#include "pir/scheme.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "pir/capacity.hpp"

namespace pir {
namespace {

long long ipow(long long base, int exp) {
  long long v = 1;
  while (exp-- > 0) v *= base;
  return v;
}

// Message subsets (masks over bits 0..K-1) of a given size, ascending mask
// order: a fixed iteration order shared by query building and decoding.
std::vector<std::uint32_t> message_subsets(int message_count, int size, int exclude_message) {
  std::vector<std::uint32_t> out;
  const std::uint32_t excl = 1u << (exclude_message - 1);
  for (std::uint32_t mask = 1; mask < (1u << message_count); ++mask) {
    if (std::popcount(mask) != size) continue;
    if (mask & excl) continue;
    out.push_back(mask);
  }
  return out;
}

}  // namespace

long long PartitionLayout::offset(const SubsetId& s) const {
  long long off = 0;
  for (const auto& [subset, len] : lengths) {
    if (subset == s) return off;
    off += len;
  }
  throw ProtocolError("partition not in layout: {" + s.to_string() + "}");
}

PartitionLayout make_layout(const PlacementPlan& plan, long long base_length,
                            long long max_length) {
  const int k = plan.profile.message_count;
  Integer q = 1;
  Integer block_lcm = 1;
  for (const auto& [s, a] : plan.shares) {
    if (a == 0) continue;
    q = lcm(q, denominator(a));
    if (s.size() >= 2) block_lcm = lcm(block_lcm, Integer(ipow(s.size(), k)));
  }
  Integer length = Integer(base_length) * q * block_lcm;
  Integer minimal = q * block_lcm;
  if (length > max_length) {
    throw LayoutSizeError("layout length " + length.str() + " exceeds maximum " +
                              std::to_string(max_length) + "; minimal admissible L is " +
                              minimal.str(),
                          minimal.convert_to<long long>());
  }
  PartitionLayout layout;
  layout.total_length = length.convert_to<long long>();
  for (const auto& [s, a] : plan.shares) {
    Rational len = a * layout.total_length;
    layout.lengths[s] = numerator(len).convert_to<long long>();
  }
  return layout;
}

QueryPlan build_query_block(const SubsetId& set, int theta, int message_count,
                            const std::vector<std::vector<long long>>& perms,
                            const SchemeOptions& options) {
  const int ell = set.size();
  const int k = message_count;
  if (ell < 2) throw ProtocolError("layered scheme requires |set| >= 2");
  if (theta < 1 || theta > k) throw ProtocolError("theta out of range");
  const long long block = ipow(ell, k);
  for (const auto& p : perms) {
    if (static_cast<long long>(p.size()) != block)
      throw ProtocolError("permutation length must equal ell^K");
  }

  QueryPlan plan;
  plan.replication_set = set;
  plan.theta = theta;
  plan.message_count = k;
  plan.partition_length = block;
  plan.queries.resize(ell);
  plan.hints.resize(ell);

  std::vector<std::size_t> fresh(k, 0);
  auto next_fresh = [&](int message) -> long long {
    return perms[message - 1][fresh[message - 1]++];
  };

  // Side information delivered in the previous round: per database, per
  // non-desired message mask, the positions of those sums in that database's
  // query list.
  std::vector<std::map<std::uint32_t, std::vector<std::size_t>>> side(ell);

  auto push = [&](int db, SumQuery sum, DecodeHint hint) -> std::size_t {
    std::sort(sum.terms.begin(), sum.terms.end());
    plan.queries[db].push_back(std::move(sum));
    plan.hints[db].push_back(hint);
    return plan.queries[db].size() - 1;
  };

  // Round 1: one fresh singleton of every message from every database.
  for (int db = 0; db < ell; ++db) {
    for (int msg = 1; msg <= k; ++msg) {
      if (msg != theta && options.skip_nondesired_singletons) continue;
      long long idx = next_fresh(msg);
      DecodeHint hint;
      if (msg == theta) {
        hint.kind = SumKind::kDesiredDirect;
        hint.desired_index = idx;
      } else {
        hint.kind = SumKind::kSymmetry;
      }
      std::size_t pos = push(db, SumQuery{{{msg, idx}}}, hint);
      if (msg != theta) side[db][1u << (msg - 1)].push_back(pos);
    }
  }

  for (int round = 2; round <= k; ++round) {
    std::vector<std::map<std::uint32_t, std::vector<std::size_t>>> next_side(ell);
    for (int db = 0; db < ell; ++db) {
      // Desired sums: a fresh theta symbol on top of each side-information
      // sum the other databases delivered last round.
      for (std::uint32_t mask : message_subsets(k, round - 1, theta)) {
        for (int step = 1; step < ell; ++step) {
          int other = (db + step) % ell;
          auto it = side[other].find(mask);
          if (it == side[other].end()) continue;
          for (std::size_t src_pos : it->second) {
            SumQuery sum = plan.queries[other][src_pos];
            long long idx = next_fresh(theta);
            sum.terms.push_back({theta, idx});
            DecodeHint hint;
            hint.kind = SumKind::kDesired;
            hint.source_db = other;
            hint.source_pos = src_pos;
            hint.desired_index = idx;
            push(db, std::move(sum), hint);
          }
        }
      }
      // Symmetry sums: fresh non-desired k-sums, side information for the
      // next round.
      const long long count = ipow(ell - 1, round - 1);
      for (std::uint32_t mask : message_subsets(k, round, theta)) {
        for (long long t = 0; t < count; ++t) {
          SumQuery sum;
          for (int msg = 1; msg <= k; ++msg) {
            if (mask & (1u << (msg - 1))) sum.terms.push_back({msg, next_fresh(msg)});
          }
          std::size_t pos = push(db, std::move(sum), DecodeHint{SumKind::kSymmetry});
          next_side[db][mask].push_back(pos);
        }
      }
    }
    side = std::move(next_side);
  }
  return plan;
}

QueryPlan build_query(const SubsetId& set, int theta, int message_count, long long len,
                      std::uint64_t seed, const SchemeOptions& options) {
  const int ell = set.size();
  const long long block = ipow(ell, message_count);
  if (len <= 0 || len % block != 0)
    throw ProtocolError("partition length must be a positive multiple of ell^K");

  std::mt19937_64 rng(seed);
  QueryPlan plan;
  plan.replication_set = set;
  plan.theta = theta;
  plan.message_count = message_count;
  plan.partition_length = len;
  plan.queries.resize(ell);
  plan.hints.resize(ell);

  // Independent consecutive blocks with fresh permutations per block.
  for (long long offset = 0; offset < len; offset += block) {
    std::vector<std::vector<long long>> perms(message_count);
    for (auto& p : perms) {
      p.resize(block);
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
    }
    QueryPlan one = build_query_block(set, theta, message_count, perms, options);
    for (int db = 0; db < ell; ++db) {
      const std::size_t base = plan.queries[db].size();
      for (std::size_t i = 0; i < one.queries[db].size(); ++i) {
        SumQuery sum = one.queries[db][i];
        for (auto& term : sum.terms) term.index += offset;
        DecodeHint hint = one.hints[db][i];
        if (hint.kind == SumKind::kDesired) hint.source_pos += base;
        if (hint.desired_index >= 0) hint.desired_index += offset;
        plan.queries[db].push_back(std::move(sum));
        plan.hints[db].push_back(hint);
      }
    }
  }
  return plan;
}

QueryPlan build_trivial_query(const SubsetId& set, int theta, int message_count, long long len) {
  if (set.size() != 1) throw ProtocolError("trivial scheme requires |set| = 1");
  QueryPlan plan;
  plan.replication_set = set;
  plan.theta = theta;
  plan.message_count = message_count;
  plan.partition_length = len;
  plan.queries.resize(1);
  plan.hints.resize(1);
  for (int msg = 1; msg <= message_count; ++msg) {
    for (long long i = 0; i < len; ++i) {
      plan.queries[0].push_back(SumQuery{{{msg, i}}});
      DecodeHint hint;
      hint.kind = SumKind::kTrivial;
      if (msg == theta) hint.desired_index = i;
      plan.hints[0].push_back(hint);
    }
  }
  return plan;
}

std::vector<Symbol> answer_query(const std::vector<std::vector<Symbol>>& partition_symbols,
                                 const std::vector<SumQuery>& queries) {
  std::vector<Symbol> answers;
  answers.reserve(queries.size());
  for (const auto& sum : queries) {
    Symbol value = 0;
    for (const auto& term : sum.terms) {
      if (term.message < 1 || term.message > static_cast<int>(partition_symbols.size()))
        throw ProtocolError("sum references unknown message " + std::to_string(term.message));
      const auto& symbols = partition_symbols[term.message - 1];
      if (term.index < 0 || term.index >= static_cast<long long>(symbols.size()))
        throw ProtocolError("sum references symbol index out of range");
      value ^= symbols[term.index];
    }
    answers.push_back(value);
  }
  return answers;
}

std::vector<Symbol> decode(const std::vector<std::vector<Symbol>>& answers,
                           const QueryPlan& plan) {
  const int ell = plan.replication_set.size();
  if (static_cast<int>(answers.size()) != ell)
    throw DecodeError("answer set count does not match replication set");
  for (int db = 0; db < ell; ++db) {
    if (answers[db].size() != plan.queries[db].size())
      throw DecodeError("answer count mismatch at database position " + std::to_string(db));
  }
  std::vector<Symbol> decoded(plan.partition_length, 0);
  std::vector<bool> have(plan.partition_length, false);
  auto record = [&](long long index, Symbol value, int db, std::size_t pos) {
    if (have[index] && decoded[index] != value) {
      throw DecodeError("inconsistent sum at database position " + std::to_string(db) +
                        ", query " + std::to_string(pos));
    }
    decoded[index] = value;
    have[index] = true;
  };
  for (int db = 0; db < ell; ++db) {
    for (std::size_t pos = 0; pos < plan.hints[db].size(); ++pos) {
      const DecodeHint& hint = plan.hints[db][pos];
      switch (hint.kind) {
        case SumKind::kDesiredDirect:
          record(hint.desired_index, answers[db][pos], db, pos);
          break;
        case SumKind::kDesired:
          record(hint.desired_index,
                 static_cast<Symbol>(answers[db][pos] ^ answers[hint.source_db][hint.source_pos]),
                 db, pos);
          break;
        case SumKind::kTrivial:
          if (hint.desired_index >= 0) record(hint.desired_index, answers[db][pos], db, pos);
          break;
        case SumKind::kSymmetry:
          break;
      }
    }
  }
  for (long long i = 0; i < plan.partition_length; ++i) {
    if (!have[i]) throw DecodeError("desired symbol " + std::to_string(i) + " not recovered");
  }
  return decoded;
}

RetrievalResult retrieve(const PlacementPlan& plan, const PartitionLayout& layout, int theta,
                         const std::vector<std::vector<Symbol>>& messages, std::uint64_t seed) {
  const int k = plan.profile.message_count;
  if (theta < 1 || theta > k) throw ProtocolError("theta out of range");
  RetrievalResult result;
  result.message.assign(layout.total_length, 0);

  std::mt19937_64 seeder(seed);
  long long offset = 0;
  for (const auto& [subset, len] : layout.lengths) {
    if (len == 0) continue;
    QueryPlan query = subset.size() == 1
                          ? build_trivial_query(subset, theta, k, len)
                          : build_query(subset, theta, k, len, seeder());
    // Slice out this partition's stored symbols per message.
    std::vector<std::vector<Symbol>> stored(k);
    for (int msg = 0; msg < k; ++msg) {
      stored[msg].assign(messages[msg].begin() + offset, messages[msg].begin() + offset + len);
    }
    std::vector<std::vector<Symbol>> answers;
    for (const auto& db_queries : query.queries) {
      answers.push_back(answer_query(stored, db_queries));
      result.download_count += static_cast<long long>(db_queries.size());
    }
    std::vector<Symbol> piece = decode(answers, query);
    std::copy(piece.begin(), piece.end(), result.message.begin() + offset);
    offset += len;
  }
  return result;
}

}  // namespace pir
