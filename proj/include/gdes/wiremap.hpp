#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gdes/word.hpp"

namespace gdes {

/**
 * A wire-level rearrangement of nits: P, P^-1, the expansion E and the key
 * compressions. Gather semantics: output position p (1-based) takes the input
 * nit at position table[p-1]. Repeats are allowed (expansions) and inputs may
 * be dropped (compressions); only bijective maps can be inverted.
 */
class WireMap {
 public:
  WireMap() = default;
  /// Throws DimensionError if an entry is outside [1, in_length].
  WireMap(std::size_t in_length, std::vector<std::uint32_t> table);

  static WireMap identity(std::size_t n);

  std::size_t in_length() const { return in_length_; }
  std::size_t out_length() const { return table_.size(); }
  std::span<const std::uint32_t> table() const { return table_; }
  bool is_permutation() const;

  bool operator==(const WireMap&) const = default;

 private:
  std::size_t in_length_ = 0;
  std::vector<std::uint32_t> table_;
};

Word wiremap_apply(const WireMap& map, const Word& w);

/// Throws NotInvertible unless the map is a bijection.
WireMap wiremap_invert(const WireMap& map);

}  // namespace gdes
