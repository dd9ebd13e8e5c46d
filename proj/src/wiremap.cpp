#include "gdes/wiremap.hpp"

#include <numeric>

#include "gdes/error.hpp"

namespace gdes {

WireMap::WireMap(std::size_t in_length, std::vector<std::uint32_t> table)
    : in_length_(in_length), table_(std::move(table)) {
  for (std::size_t p = 0; p < table_.size(); ++p)
    if (table_[p] < 1 || table_[p] > in_length_)
      throw DimensionError("wire map entry " + std::to_string(p + 1) + " = " +
                           std::to_string(table_[p]) + " is outside [1, " +
                           std::to_string(in_length_) + "]");
}

WireMap WireMap::identity(std::size_t n) {
  std::vector<std::uint32_t> table(n);
  std::iota(table.begin(), table.end(), 1u);
  return WireMap(n, std::move(table));
}

bool WireMap::is_permutation() const {
  if (in_length_ != table_.size()) return false;
  std::vector<bool> seen(in_length_, false);
  for (auto src : table_) {
    if (seen[src - 1]) return false;
    seen[src - 1] = true;
  }
  return true;
}

Word wiremap_apply(const WireMap& map, const Word& w) {
  if (w.length() != map.in_length())
    throw DimensionError("wire map expects " + std::to_string(map.in_length()) + " nits, got " +
                         std::to_string(w.length()));
  std::vector<std::uint32_t> out(map.out_length());
  const auto table = map.table();
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = w[table[p] - 1];
  return Word(w.group(), std::move(out));
}

WireMap wiremap_invert(const WireMap& map) {
  if (!map.is_permutation())
    throw NotInvertible("wire map " + std::to_string(map.in_length()) + "->" +
                        std::to_string(map.out_length()) + " is not a bijection");
  std::vector<std::uint32_t> inv(map.out_length());
  const auto table = map.table();
  for (std::size_t p = 0; p < table.size(); ++p) inv[table[p] - 1] = static_cast<std::uint32_t>(p + 1);
  return WireMap(map.in_length(), std::move(inv));
}

}  // namespace gdes
