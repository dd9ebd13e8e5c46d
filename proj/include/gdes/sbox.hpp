#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gdes/group.hpp"
#include "gdes/wiremap.hpp"
#include "gdes/word.hpp"

namespace gdes {

/**
 * Substitution table with |G|^i rows and |G|^j columns. Entries are integers
 * in [0, |G|^j), read as j-nit words in big-endian base |G|.
 *
 * An (i+j)-nit input block selects its row from the first ceil(i/2) nits
 * followed by the last floor(i/2) nits, and its column from the j nits in
 * between. For i=2, j=3 this is row (n1,n5), column (n2,n3,n4).
 */
class SBox {
 public:
  /// `entries` is row-major. Throws DimensionError / RangeError on bad shape or values.
  SBox(GroupSpec group, std::size_t row_width, std::size_t col_width,
       std::vector<std::uint32_t> entries);

  const GroupSpec& group() const { return group_; }
  std::size_t row_width() const { return row_width_; }
  std::size_t col_width() const { return col_width_; }
  std::size_t block_width() const { return row_width_ + col_width_; }
  std::uint64_t rows() const { return rows_; }
  std::uint64_t columns() const { return columns_; }

  std::uint32_t entry(std::uint64_t row, std::uint64_t col) const {
    return entries_[row * columns_ + col];
  }
  std::span<const std::uint32_t> row(std::uint64_t r) const {
    return {entries_.data() + r * columns_, static_cast<std::size_t>(columns_)};
  }
  std::span<const std::uint32_t> entries() const { return entries_; }

  bool operator==(const SBox& o) const {
    return row_width_ == o.row_width_ && col_width_ == o.col_width_ && entries_ == o.entries_ &&
           group_ == o.group_;
  }

 private:
  GroupSpec group_;
  std::size_t row_width_ = 0;
  std::size_t col_width_ = 0;
  std::uint64_t rows_ = 0;
  std::uint64_t columns_ = 0;
  std::vector<std::uint32_t> entries_;
};

/// Every intermediate of one table lookup.
struct SBoxSelection {
  std::uint64_t row = 0;
  std::uint64_t column = 0;
  std::uint32_t entry = 0;
  Word output;
};

SBoxSelection sbox_select(const SBox& box, const Word& block);
Word sbox_lookup(const SBox& box, const Word& block);

/**
 * The S-box round function f(R, K): expand R, add the subkey nit-wise, split
 * into one (i+j)-nit block per box and concatenate the j-nit outputs.
 * Requires uniform box shapes and t = j * n_boxes.
 */
class SBoxRoundSpec {
 public:
  SBoxRoundSpec(std::vector<SBox> boxes, WireMap expansion);

  const std::vector<SBox>& boxes() const { return boxes_; }
  const WireMap& expansion() const { return expansion_; }
  const GroupSpec& group() const { return boxes_.front().group(); }
  std::size_t half_width() const { return expansion_.in_length(); }
  std::size_t subkey_length() const { return expansion_.out_length(); }

 private:
  std::vector<SBox> boxes_;
  WireMap expansion_;
};

Word round_function_f(const SBoxRoundSpec& spec, const Word& right, const Word& subkey);

/// Per-box lookups of one evaluation, for traces.
struct RoundFunctionTrace {
  Word expanded;
  Word mixed;
  std::vector<Word> blocks;
  std::vector<SBoxSelection> selections;
  Word output;
};

RoundFunctionTrace round_function_trace(const SBoxRoundSpec& spec, const Word& right,
                                        const Word& subkey);

/// Deterministic in `seed`. Row-surjective boxes have each row a random permutation.
SBox sbox_generate(const GroupSpec& group, std::size_t row_width, std::size_t col_width,
                   std::uint64_t seed, bool enforce_row_surjective);

struct RowAudit {
  std::uint64_t row = 0;
  bool surjective = true;
  std::vector<std::uint32_t> missing;
  std::vector<std::uint32_t> duplicated;
};

struct SBoxAudit {
  /// F(x) - F(0) is a group homomorphism G^{i+j} -> G^j.
  bool affine = false;
  /// When not affine: an input x and a generator g with L(x+g) != L(x)+L(g).
  std::optional<std::pair<std::uint64_t, std::uint64_t>> affine_witness;
  std::vector<RowAudit> rows;

  bool rows_surjective() const;
};

/// Throws CapacityError when |G|^(i+j) > 10^6.
SBoxAudit sbox_audit(const SBox& box);

/// Injective homomorphism G -> H given on element indices.
class GroupEmbedding {
 public:
  /// Throws Error if `image` is not an injective homomorphism.
  GroupEmbedding(GroupSpec from, GroupSpec to, std::vector<std::uint32_t> image);

  /// x -> multiplier * x between cyclic groups, e.g. Z3 -> Z9 with multiplier 3.
  static GroupEmbedding scaling(std::uint32_t from_order, std::uint32_t to_order,
                                std::uint32_t multiplier);

  const GroupSpec& from() const { return from_; }
  const GroupSpec& to() const { return to_; }
  std::uint32_t map(std::uint32_t g) const { return image_.at(g); }
  /// Preimage of an H element, if it lies in the image.
  std::optional<std::uint32_t> preimage(std::uint32_t h) const;

  Word map(const Word& w) const;
  bool in_image(const Word& w) const;

 private:
  GroupSpec from_;
  GroupSpec to_;
  std::vector<std::uint32_t> image_;
  std::vector<std::int64_t> inverse_;
};

/**
 * Grows a G-box into an H-box: cells whose row and column nits all lie in the
 * embedded G keep the embedded original entry; every other cell holds the
 * smallest j-nit H-word (codec order) that has a nit outside the image.
 */
SBox sbox_expand(const SBox& box, const GroupEmbedding& embedding);

}  // namespace gdes
