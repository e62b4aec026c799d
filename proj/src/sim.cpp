#include "pir/sim.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace pir::sim {
namespace {

long long ipow(long long base, int exp) {
  long long v = 1;
  while (exp-- > 0) v *= base;
  return v;
}

long long factorial(long long n) {
  long long v = 1;
  for (long long i = 2; i <= n; ++i) v *= i;
  return v;
}

// A database's structural view of one retrieval: the multiset of sums it was
// asked, with term order and sum order normalized away.
using Structure = std::vector<SumQuery>;

Structure structure_of(const std::vector<SumQuery>& queries) {
  Structure s = queries;
  std::sort(s.begin(), s.end());
  return s;
}

std::string describe_sum(const SumQuery& sum) {
  std::ostringstream out;
  bool first = true;
  for (const auto& term : sum.terms) {
    if (!first) out << '+';
    first = false;
    out << 'W' << term.message << '[' << term.index << ']';
  }
  return out.str();
}

std::string describe_structure(const Structure& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out << ' ';
    out << describe_sum(s[i]);
  }
  return out.str();
}

// Relabels each message's symbol indices by order of first use, walking the
// sums in message-pattern order rather than emission order (emission order
// depends on theta, the pattern multiset does not). Equal canonical forms
// across theta imply equal query-structure distributions under uniform
// permutations.
Structure canonicalize_slots(const std::vector<SumQuery>& queries, int message_count) {
  std::vector<std::size_t> order(queries.size());
  std::iota(order.begin(), order.end(), 0);
  auto pattern = [](const SumQuery& sum) {
    std::vector<int> messages;
    messages.reserve(sum.terms.size());
    for (const auto& term : sum.terms) messages.push_back(term.message);
    return messages;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pattern(queries[a]) < pattern(queries[b]);
  });
  std::vector<std::map<long long, long long>> relabel(message_count);
  std::vector<SumQuery> out;
  out.reserve(queries.size());
  for (std::size_t i : order) {
    SumQuery mapped;
    for (const auto& term : queries[i].terms) {
      auto& table = relabel[term.message - 1];
      auto [it, inserted] = table.emplace(term.index, static_cast<long long>(table.size()));
      mapped.terms.push_back({term.message, it->second});
    }
    std::sort(mapped.terms.begin(), mapped.terms.end());
    out.push_back(std::move(mapped));
  }
  std::sort(out.begin(), out.end());
  return out;
}

using StructureCounts = std::map<Structure, long long>;

// First structure whose multiplicity differs between the two counters.
std::string first_count_mismatch(const StructureCounts& a, const StructureCounts& b) {
  for (const auto& [structure, count] : a) {
    auto it = b.find(structure);
    if (it == b.end() || it->second != count) return describe_structure(structure);
  }
  for (const auto& [structure, count] : b) {
    if (!a.count(structure)) return describe_structure(structure);
  }
  return "";
}

}  // namespace

long long Database::stored_symbols() const {
  long long total = 0;
  for (const auto& [key, symbols] : contents) total += static_cast<long long>(symbols.size());
  return total;
}

std::vector<Symbol> Database::answer(const SubsetId& partition, int message_count,
                                     const std::vector<SumQuery>& queries) const {
  std::vector<std::vector<Symbol>> slices(message_count);
  for (int msg = 1; msg <= message_count; ++msg) {
    auto it = contents.find({msg, partition});
    if (it == contents.end())
      throw ProtocolError("database " + std::to_string(id) + " does not hold partition {" +
                          partition.to_string() + "}");
    slices[msg - 1] = it->second;
  }
  return answer_query(slices, queries);
}

std::vector<Database> provision(const PlacementPlan& plan, const PartitionLayout& layout,
                                const std::vector<std::vector<Symbol>>& messages) {
  const int n = plan.profile.database_count();
  const int k = plan.profile.message_count;
  if (static_cast<int>(messages.size()) != k)
    throw ProvisionError("expected K = " + std::to_string(k) + " messages");
  for (const auto& msg : messages) {
    if (static_cast<long long>(msg.size()) != layout.total_length)
      throw ProvisionError("message length does not match layout L");
  }

  std::vector<Database> databases(n);
  for (int db = 1; db <= n; ++db) {
    databases[db - 1].id = db;
    databases[db - 1].capacity_symbols =
        plan.profile.budgets[db - 1] * k * layout.total_length;
  }
  long long offset = 0;
  for (const auto& [subset, len] : layout.lengths) {
    for (int msg = 0; msg < k; ++msg) {
      std::vector<Symbol> slice(messages[msg].begin() + offset,
                                messages[msg].begin() + offset + len);
      for (int db : subset.members()) {
        databases[db - 1].contents[{msg + 1, subset}] = slice;
      }
    }
    offset += len;
  }
  for (const auto& db : databases) {
    Rational stored(db.stored_symbols());
    if (stored > db.capacity_symbols) {
      throw ProvisionError("database " + std::to_string(db.id) + " over capacity by " +
                           format_rational(stored - db.capacity_symbols) + " symbols");
    }
  }
  return databases;
}

long long Transcript::download_total() const {
  long long total = 0;
  for (const auto& record : records) total += record.bytes();
  return total;
}

std::string Transcript::to_text() const {
  std::ostringstream out;
  out << "theta=" << theta << " seed=" << seed << '\n';
  for (const auto& record : records) {
    out << "db=" << record.database_id << " set=" << record.partition.to_string()
        << " sums=" << record.queries.size() << " bytes=" << record.bytes() << " q=";
    for (std::size_t i = 0; i < record.queries.size(); ++i) {
      if (i) out << ';';
      out << describe_sum(record.queries[i]);
    }
    out << " a=";
    static const char* hex = "0123456789abcdef";
    for (Symbol s : record.answers) {
      out << hex[s >> 4] << hex[s & 0xf];
    }
    out << '\n';
  }
  return out.str();
}

RetrievalOutcome run_retrieval(const std::vector<Database>& databases, const PlacementPlan& plan,
                               const PartitionLayout& layout, int theta, std::uint64_t seed) {
  const int k = plan.profile.message_count;
  RetrievalOutcome outcome;
  outcome.transcript.theta = theta;
  outcome.transcript.seed = seed;
  outcome.message.assign(layout.total_length, 0);

  // All query plans are fixed before any database content is touched: the
  // builder sees only (layout, theta, seed).
  std::mt19937_64 seeder(seed);
  std::vector<QueryPlan> plans;
  for (const auto& [subset, len] : layout.lengths) {
    if (len == 0) continue;
    plans.push_back(subset.size() == 1 ? build_trivial_query(subset, theta, k, len)
                                       : build_query(subset, theta, k, len, seeder()));
  }

  long long offset = 0;
  std::size_t plan_index = 0;
  for (const auto& [subset, len] : layout.lengths) {
    if (len == 0) continue;
    const QueryPlan& query = plans[plan_index++];
    const auto members = subset.members();

    // Databases answer concurrently; the user joins on all answers.
    std::vector<std::future<std::vector<Symbol>>> pending;
    for (std::size_t pos = 0; pos < members.size(); ++pos) {
      const Database& db = databases.at(members[pos] - 1);
      pending.push_back(std::async(std::launch::async, [&db, &subset, k, &query, pos] {
        return db.answer(subset, k, query.queries[pos]);
      }));
    }
    std::vector<std::vector<Symbol>> answers;
    for (auto& f : pending) answers.push_back(f.get());

    for (std::size_t pos = 0; pos < members.size(); ++pos) {
      outcome.transcript.records.push_back(
          {members[pos], subset, query.queries[pos], answers[pos]});
    }
    std::vector<Symbol> piece = decode(answers, query);
    std::copy(piece.begin(), piece.end(), outcome.message.begin() + offset);
    offset += len;
  }
  return outcome;
}

std::string AuditReport::summary() const {
  std::ostringstream out;
  out << (passed ? "PASS" : "FAIL") << ": " << configurations_checked
      << (used_quotient ? " slot-bijection tuples checked (exact quotient)"
                        : " configurations checked");
  if (!witness.empty()) out << "; witness: " << witness;
  return out.str();
}

AuditReport audit_privacy(const PartitionLayout& layout, const SubsetId& set, int message_count,
                          AuditMode mode, int trials, std::uint64_t seed,
                          const SchemeOptions& options, long long max_space) {
  AuditReport report;
  const int ell = set.size();
  const int k = message_count;
  if (!layout.lengths.count(set) || layout.lengths.at(set) == 0) {
    report.passed = false;
    report.witness = "partition has no symbols";
    return report;
  }
  if (ell == 1) {
    // Trivial scheme: the query is "send everything", independent of theta.
    report.passed = true;
    report.configurations_checked = k;
    return report;
  }
  const long long block = ipow(ell, k);

  auto structures_for = [&](int theta,
                            const std::vector<std::vector<long long>>& perms) {
    QueryPlan plan = build_query_block(set, theta, k, perms, options);
    std::vector<Structure> out;
    for (int db = 0; db < ell; ++db) out.push_back(structure_of(plan.queries[db]));
    return out;
  };

  if (mode == AuditMode::kSampled) {
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<std::vector<long long>> perms(k);
      for (auto& p : perms) {
        p.resize(block);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
      }
      std::vector<std::vector<Structure>> canon(k + 1);
      for (int theta = 1; theta <= k; ++theta) {
        QueryPlan plan = build_query_block(set, theta, k, perms, options);
        for (int db = 0; db < ell; ++db) {
          canon[theta].push_back(canonicalize_slots(plan.queries[db], k));
        }
      }
      for (int theta = 2; theta <= k; ++theta) {
        for (int db = 0; db < ell; ++db) {
          if (canon[theta][db] != canon[1][db]) {
            report.passed = false;
            report.configurations_checked = trial + 1;
            report.witness = "database position " + std::to_string(db) + ", theta " +
                             std::to_string(theta) + " vs 1: " +
                             describe_structure(canon[theta][db]);
            return report;
          }
        }
      }
    }
    report.passed = true;
    report.configurations_checked = trials;
    return report;
  }

  // Exhaustive mode. Full permutation-tuple enumeration when it fits.
  double block_factorial = 1;
  for (long long i = 2; i <= block; ++i) block_factorial *= static_cast<double>(i);
  double full_space = 1;
  for (int i = 0; i < k; ++i) full_space *= block_factorial;
  if (full_space <= static_cast<double>(max_space)) {
    std::vector<std::vector<StructureCounts>> per_db(k + 1,
                                                     std::vector<StructureCounts>(ell));
    std::vector<std::vector<long long>> perms(k);
    for (auto& p : perms) {
      p.resize(block);
      std::iota(p.begin(), p.end(), 0);
    }
    long long tuples = 0;
    // Odometer over K permutations.
    std::vector<bool> done(k, false);
    while (true) {
      ++tuples;
      for (int theta = 1; theta <= k; ++theta) {
        auto structures = structures_for(theta, perms);
        for (int db = 0; db < ell; ++db) ++per_db[theta][db][structures[db]];
      }
      int wheel = 0;
      while (wheel < k && !std::next_permutation(perms[wheel].begin(), perms[wheel].end()))
        ++wheel;
      if (wheel == k) break;
    }
    report.configurations_checked = tuples;
    for (int theta = 2; theta <= k; ++theta) {
      for (int db = 0; db < ell; ++db) {
        if (per_db[theta][db] != per_db[1][db]) {
          report.passed = false;
          report.witness = "database position " + std::to_string(db) + ", theta " +
                           std::to_string(theta) + " vs 1: " +
                           first_count_mismatch(per_db[1][db], per_db[theta][db]);
          return report;
        }
      }
    }
    report.passed = true;
    return report;
  }

  // Exact quotient: a uniform permutation restricted to one database's used
  // slots factors into a theta-independent value-subset choice and a uniform
  // slot bijection; enumerating all bijection tuples is therefore equivalent
  // to the full enumeration, provided per-message use counts match.
  report.used_quotient = true;
  std::vector<std::vector<long long>> identity(k, std::vector<long long>(block));
  for (auto& p : identity) std::iota(p.begin(), p.end(), 0);

  std::vector<QueryPlan> pattern(k + 1);
  for (int theta = 1; theta <= k; ++theta)
    pattern[theta] = build_query_block(set, theta, k, identity, options);

  for (int db = 0; db < ell; ++db) {
    // Used slots per message at this database, per theta.
    std::vector<std::vector<std::vector<long long>>> used(k + 1);
    for (int theta = 1; theta <= k; ++theta) {
      std::vector<std::set<long long>> slots(k);
      for (const auto& sum : pattern[theta].queries[db]) {
        for (const auto& term : sum.terms) slots[term.message - 1].insert(term.index);
      }
      for (auto& s : slots) used[theta].emplace_back(s.begin(), s.end());
    }
    for (int theta = 2; theta <= k; ++theta) {
      for (int msg = 0; msg < k; ++msg) {
        if (used[theta][msg].size() != used[1][msg].size()) {
          report.passed = false;
          report.witness = "database position " + std::to_string(db) + ": message " +
                           std::to_string(msg + 1) + " queried " +
                           std::to_string(used[theta][msg].size()) + " times for theta " +
                           std::to_string(theta) + " vs " +
                           std::to_string(used[1][msg].size()) + " for theta 1";
          return report;
        }
      }
    }

    long long space = 1;
    for (int msg = 0; msg < k; ++msg) space *= factorial(used[1][msg].size());
    if (space > max_space)
      throw std::runtime_error("quotient space exceeds the exhaustive audit cap");

    std::vector<StructureCounts> counts(k + 1);
    for (int theta = 1; theta <= k; ++theta) {
      // Enumerate all tuples of bijections used-slots -> {0..c-1}.
      std::vector<std::vector<long long>> value(k);
      for (int msg = 0; msg < k; ++msg) {
        value[msg].resize(used[theta][msg].size());
        std::iota(value[msg].begin(), value[msg].end(), 0);
      }
      while (true) {
        std::vector<std::map<long long, long long>> relabel(k);
        for (int msg = 0; msg < k; ++msg) {
          for (std::size_t i = 0; i < used[theta][msg].size(); ++i)
            relabel[msg][used[theta][msg][i]] = value[msg][i];
        }
        Structure s;
        for (const auto& sum : pattern[theta].queries[db]) {
          SumQuery mapped;
          for (const auto& term : sum.terms)
            mapped.terms.push_back({term.message, relabel[term.message - 1][term.index]});
          std::sort(mapped.terms.begin(), mapped.terms.end());
          s.push_back(std::move(mapped));
        }
        std::sort(s.begin(), s.end());
        ++counts[theta][s];
        if (theta == 1) ++report.configurations_checked;

        int wheel = 0;
        while (wheel < k &&
               !std::next_permutation(value[wheel].begin(), value[wheel].end()))
          ++wheel;
        if (wheel == k) break;
      }
    }
    for (int theta = 2; theta <= k; ++theta) {
      if (counts[theta] != counts[1]) {
        report.passed = false;
        report.witness = "database position " + std::to_string(db) + ", theta " +
                         std::to_string(theta) + " vs 1: " +
                         first_count_mismatch(counts[1], counts[theta]);
        return report;
      }
    }
  }
  report.passed = true;
  return report;
}

}  // namespace pir::sim
