#include "pir/subset.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace pir {

SubsetId SubsetId::from_members(const std::vector<int>& members) {
  std::uint32_t mask = 0;
  for (int m : members) {
    if (m < 1 || m > 16) throw std::out_of_range("database index out of [1,16]");
    mask |= 1u << (m - 1);
  }
  return SubsetId(mask);
}

std::vector<int> SubsetId::members() const {
  std::vector<int> out;
  for (int i = 1; i <= 16; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

std::string SubsetId::to_string() const {
  std::string out;
  for (int m : members()) {
    if (!out.empty()) out += ',';
    out += std::to_string(m);
  }
  return out;
}

std::optional<SubsetId> SubsetId::parse(std::string_view text) {
  std::vector<int> members;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    std::string_view token = text.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || value < 1 || value > 16)
      return std::nullopt;
    members.push_back(value);
    pos = comma == std::string_view::npos ? text.size() : comma + 1;
  }
  if (members.empty()) return std::nullopt;
  return from_members(members);
}

bool canonical_less(const SubsetId& a, const SubsetId& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  // Same popcount: lexicographic member order coincides with ascending mask
  // order read from the low bit, which is plain integer order on the
  // reversed-bit value. Compare member lists directly; sets are tiny.
  if (a.mask() == b.mask()) return false;
  auto ma = a.members();
  auto mb = b.members();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

std::vector<SubsetId> all_subsets(int n) {
  std::vector<SubsetId> out;
  out.reserve((1u << n) - 1);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) out.emplace_back(mask);
  std::sort(out.begin(), out.end(), SubsetCanonicalLess{});
  return out;
}

std::vector<SubsetId> subsets_of_size(int n, int k) {
  std::vector<SubsetId> out;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) == k) out.emplace_back(mask);
  }
  std::sort(out.begin(), out.end(), SubsetCanonicalLess{});
  return out;
}

}  // namespace pir
