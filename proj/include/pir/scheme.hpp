#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pir/model.hpp"
#include "pir/subset.hpp"

namespace pir {

// Additive alphabet: bytes under bitwise XOR. Characteristic 2 is enough
// because decoding only ever cancels fully known side information.
using Symbol = std::uint8_t;

struct ProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LayoutSizeError : std::runtime_error {
  LayoutSizeError(const std::string& what, long long minimal)
      : std::runtime_error(what), minimal_length(minimal) {}
  long long minimal_length;
};

// Integer symbol counts per partition: len_S = alpha_S * L, with len_S a
// multiple of ell^K for every replication level ell >= 2.
struct PartitionLayout {
  std::map<SubsetId, long long, SubsetCanonicalLess> lengths;
  long long total_length = 0;  // L

  // Start of partition s within each message (partitions concatenated in
  // canonical subset order).
  long long offset(const SubsetId& s) const;
};

// Smallest layout of the form base_length * q * lcm{ell^K}; throws
// LayoutSizeError (carrying the minimal admissible L) past max_length.
PartitionLayout make_layout(const PlacementPlan& plan, long long base_length,
                            long long max_length = 1'000'000'000);

// One requested symbol inside a sum: message index in [1,K], symbol index
// relative to the partition (in [0, len_S)).
struct SumTerm {
  int message;
  long long index;
  friend auto operator<=>(const SumTerm&, const SumTerm&) = default;
};

// A sum query: the database XORs the referenced stored symbols and returns
// one Symbol. Terms are kept sorted by message.
struct SumQuery {
  std::vector<SumTerm> terms;
  friend auto operator<=>(const SumQuery&, const SumQuery&) = default;
};

enum class SumKind {
  kDesiredDirect,  // round-1 singleton of the desired message
  kDesired,        // fresh desired symbol + known side information
  kSymmetry,       // non-desired sum, side information for the next round
  kTrivial,        // ell = 1 download-everything singleton
};

// User-side decode metadata; never sent to a database.
struct DecodeHint {
  SumKind kind = SumKind::kSymmetry;
  int source_db = -1;          // member position of the side-information db
  std::size_t source_pos = 0;  // index into that db's query list
  long long desired_index = -1;
};

struct QueryPlan {
  SubsetId replication_set;
  int theta = 1;
  int message_count = 1;
  long long partition_length = 0;
  // Indexed by member position within the replication set.
  std::vector<std::vector<SumQuery>> queries;
  std::vector<std::vector<DecodeHint>> hints;
};

struct SchemeOptions {
  // Deliberately broken variant for the privacy auditor's negative control:
  // round 1 requests only the desired message's singletons.
  bool skip_nondesired_singletons = false;
};

// Layered scheme for |set| = ell >= 2 replicated databases: round k requests
// k-sums; fresh desired symbols are paired with side-information sums
// delivered by the other ell-1 databases, and message symmetry is restored
// with fresh non-desired sums. len must be a multiple of ell^K; longer
// partitions run as independent blocks with fresh permutations.
QueryPlan build_query(const SubsetId& set, int theta, int message_count, long long len,
                      std::uint64_t seed, const SchemeOptions& options = {});

// Single block with caller-supplied permutations (perms[k] permutes
// 0..ell^K-1); the exhaustive privacy auditor drives this directly.
QueryPlan build_query_block(const SubsetId& set, int theta, int message_count,
                            const std::vector<std::vector<long long>>& perms,
                            const SchemeOptions& options = {});

// Trivial ell = 1 scheme: download all K * len symbols.
QueryPlan build_trivial_query(const SubsetId& set, int theta, int message_count, long long len);

// partition_symbols[k] holds message k+1's len_S stored symbols for this
// partition. Deterministic; throws ProtocolError on out-of-range references.
std::vector<Symbol> answer_query(const std::vector<std::vector<Symbol>>& partition_symbols,
                                 const std::vector<SumQuery>& queries);

// Reconstructs the len_S desired-message symbols from the per-database
// answers. Throws DecodeError identifying the first inconsistent sum.
std::vector<Symbol> decode(const std::vector<std::vector<Symbol>>& answers,
                           const QueryPlan& plan);

struct RetrievalResult {
  std::vector<Symbol> message;  // L symbols of W_theta
  long long download_count = 0;
};

// Runs the scheme over every partition with len_S > 0 and concatenates the
// decoded pieces. messages[k] is message k+1, L symbols each.
RetrievalResult retrieve(const PlacementPlan& plan, const PartitionLayout& layout, int theta,
                         const std::vector<std::vector<Symbol>>& messages, std::uint64_t seed);

}  // namespace pir
