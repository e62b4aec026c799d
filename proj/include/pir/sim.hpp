#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pir/model.hpp"
#include "pir/scheme.hpp"

namespace pir::sim {

struct ProvisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One database process: owns exactly the partitions S with id in S.
struct Database {
  int id = 0;                  // 1-based
  Rational capacity_symbols;   // m_n * K * L
  std::map<std::pair<int, SubsetId>, std::vector<Symbol>> contents;

  long long stored_symbols() const;
  // Answers one partition's sum queries; ProtocolError if the partition is
  // not held here (the simulator's tamper-detection hook).
  std::vector<Symbol> answer(const SubsetId& partition, int message_count,
                             const std::vector<SumQuery>& queries) const;
};

// Places each message's partitions onto the databases, enforcing the exact
// capacity bound. Throws ProvisionError naming the database and overflow.
std::vector<Database> provision(const PlacementPlan& plan, const PartitionLayout& layout,
                                const std::vector<std::vector<Symbol>>& messages);

struct TranscriptRecord {
  int database_id = 0;
  SubsetId partition;
  std::vector<SumQuery> queries;
  std::vector<Symbol> answers;
  long long bytes() const { return static_cast<long long>(answers.size()); }
};

struct Transcript {
  int theta = 0;
  std::uint64_t seed = 0;
  std::vector<TranscriptRecord> records;

  long long download_total() const;
  // Line-oriented text, stable field order.
  std::string to_text() const;
};

struct RetrievalOutcome {
  Transcript transcript;
  std::vector<Symbol> message;
};

// Full retrieval through the in-memory transport: queries are generated from
// (layout, theta, seed) alone, databases answer concurrently, the user joins
// and decodes. Deterministic given the seed.
RetrievalOutcome run_retrieval(const std::vector<Database>& databases, const PlacementPlan& plan,
                               const PartitionLayout& layout, int theta, std::uint64_t seed);

enum class AuditMode { kExhaustive, kSampled };

struct AuditReport {
  bool passed = false;
  // Permutation tuples (exhaustive/quotient) or seeds (sampled) checked.
  long long configurations_checked = 0;
  bool used_quotient = false;  // exhaustive mode reduced to slot bijections
  std::string witness;         // first distinguishing structure, if any
  std::string summary() const;
};

// Audits Eq.-(8) style privacy for one replication set: per database, the
// multiset of structural queries must be identical across all theta.
// Exhaustive mode enumerates all block-permutation tuples when that space is
// within max_space, otherwise the exact per-database slot-bijection quotient.
// Sampled mode compares slot-canonicalized structures across theta on paired
// seeds.
AuditReport audit_privacy(const PartitionLayout& layout, const SubsetId& set, int message_count,
                          AuditMode mode, int trials = 0, std::uint64_t seed = 0,
                          const SchemeOptions& options = {}, long long max_space = 10'000'000);

}  // namespace pir::sim
