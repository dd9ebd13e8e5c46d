#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gdes/bigint.hpp"
#include "gdes/group.hpp"

namespace gdes {

/**
 * A fixed-length string of nits (group elements). Position 0 is the leftmost
 * nit, which the text format and the integer codec treat as most significant.
 * Nits are stored as dense element indices of the owning group.
 */
class Word {
 public:
  Word() : group_(GroupSpec::cyclic(2)) {}
  /// Throws InvalidElement if any nit index is >= group.order().
  Word(GroupSpec group, std::vector<std::uint32_t> nits);

  static Word zeros(const GroupSpec& group, std::size_t length);
  static Word from_elems(const GroupSpec& group, std::span<const GroupElem> elems);

  const GroupSpec& group() const { return group_; }
  std::size_t length() const { return nits_.size(); }
  std::span<const std::uint32_t> nits() const { return nits_; }
  std::uint32_t operator[](std::size_t i) const { return nits_[i]; }
  GroupElem nit(std::size_t i) const { return group_.element_at(nits_.at(i)); }

  /// Digit string for cyclic groups of modulus <= 10, comma-separated otherwise.
  std::string to_string() const;

  bool operator==(const Word& other) const {
    return nits_ == other.nits_ && group_ == other.group_;
  }

 private:
  GroupSpec group_;
  std::vector<std::uint32_t> nits_;
};

Word word_add(const Word& a, const Word& b);
Word word_sub(const Word& a, const Word& b);
Word word_neg(const Word& a);

/**
 * Text format: for a cyclic group with modulus <= 10, exactly `length` digits.
 * Otherwise nits are comma-separated; each nit is a decimal residue, or for
 * product groups its residues joined with ':' (e.g. "1:2,0:1").
 * Errors carry the 1-based position of the offending character or nit.
 */
Word parse_word(std::string_view text, const GroupSpec& group, std::size_t length);

/// Big-endian base-|G| value, leftmost nit most significant.
BigInt word_to_int(const Word& w);
Word int_to_word(const BigInt& value, const GroupSpec& group, std::size_t length);

/// 64-bit variants; throw RangeError if |G|^length does not fit.
std::uint64_t word_to_u64(const Word& w);
Word u64_to_word(std::uint64_t value, const GroupSpec& group, std::size_t length);

/// |G|^length as a 64-bit value; throws RangeError on overflow.
std::uint64_t space_size_u64(const GroupSpec& group, std::size_t length);

std::pair<Word, Word> split_halves(const Word& w);
Word concat(const Word& a, const Word& b);

}  // namespace gdes
