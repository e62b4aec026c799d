#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pir {

// Nonempty subset of database indices {1,...,N}, N <= 16, stored as a bit
// mask (bit i-1 <=> database i is a member). The canonical ordering used
// everywhere (LP columns, file format, Bland tie-breaking) is by size, then
// lexicographically by sorted member list.
class SubsetId {
 public:
  SubsetId() = default;
  explicit SubsetId(std::uint32_t mask) : mask_(mask) {}
  static SubsetId from_members(const std::vector<int>& members);

  std::uint32_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  bool contains(int database) const {
    return database >= 1 && (mask_ >> (database - 1)) & 1u;
  }
  std::vector<int> members() const;

  // "1,3,4"
  std::string to_string() const;
  static std::optional<SubsetId> parse(std::string_view text);

  // Mask order; container keys that need the canonical (size, lexicographic)
  // order use SubsetCanonicalLess instead.
  friend auto operator<=>(const SubsetId&, const SubsetId&) = default;

 private:
  std::uint32_t mask_ = 0;
};

// Canonical (size, lexicographic-members) order.
bool canonical_less(const SubsetId& a, const SubsetId& b);

struct SubsetCanonicalLess {
  bool operator()(const SubsetId& a, const SubsetId& b) const {
    return canonical_less(a, b);
  }
};

// All nonempty subsets of {1,...,n} in canonical order.
std::vector<SubsetId> all_subsets(int n);

// All size-k subsets of {1,...,n} in canonical order.
std::vector<SubsetId> subsets_of_size(int n, int k);

}  // namespace pir
