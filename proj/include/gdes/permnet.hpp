#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "gdes/bigint.hpp"
#include "gdes/group.hpp"
#include "gdes/sbox.hpp"
#include "gdes/wiremap.hpp"
#include "gdes/word.hpp"

namespace gdes {

/// An explicit f: G^t -> G^t, indexed by the integer codec of its input.
class FunctionTable {
 public:
  /// Throws DimensionError / RangeError on a wrong size or out-of-range image.
  FunctionTable(GroupSpec group, std::size_t width, std::vector<std::uint64_t> image);

  static FunctionTable constant_zero(const GroupSpec& group, std::size_t width);

  const GroupSpec& group() const { return group_; }
  std::size_t width() const { return width_; }
  std::uint64_t size() const { return image_.size(); }
  std::uint64_t at(std::uint64_t y) const { return image_[y]; }
  std::span<const std::uint64_t> image() const { return image_; }

  Word operator()(const Word& y) const;

  bool is_injective() const;
  /// True for the identity of (F_t(G), odot): every input maps to the zero word.
  bool is_odot_identity() const;

  bool operator==(const FunctionTable& o) const {
    return width_ == o.width_ && image_ == o.image_ && group_ == o.group_;
  }

 private:
  GroupSpec group_;
  std::size_t width_;
  std::vector<std::uint64_t> image_;
};

/// Pointwise sum (f odot g)(y) = f(y) + g(y).
FunctionTable fn_odot(const FunctionTable& f, const FunctionTable& g);
/// Pointwise negation, the odot-inverse.
FunctionTable fn_negate(const FunctionTable& f);

/**
 * A keyed round function f(R, K) with output width t. Either the S-box
 * construction, or an explicit table T evaluated as T(R + K) (or T(R) when the
 * subkey is empty). Copies share the immutable underlying data.
 */
class RoundFunction {
 public:
  explicit RoundFunction(SBoxRoundSpec spec);
  explicit RoundFunction(FunctionTable table, bool keyed = false);

  Word evaluate(const Word& right, const Word& subkey) const;

  const GroupSpec& group() const;
  std::size_t half_width() const;
  std::size_t subkey_length() const;

  const SBoxRoundSpec* sbox() const { return sbox_.get(); }
  const FunctionTable* table() const { return table_.get(); }

 private:
  std::shared_ptr<const SBoxRoundSpec> sbox_;
  std::shared_ptr<const FunctionTable> table_;
  bool keyed_ = false;
};

/// Feistel state (x, y) with x the left half.
struct Halves {
  Word left;
  Word right;
  bool operator==(const Halves&) const = default;
};

/// sigma_f(x, y) = (y, x + f(y, K)).
Halves sigma(const RoundFunction& f, const Word& subkey, const Halves& state);
/// Exact inverse of sigma: (u, v) -> (v - f(u, K), u).
Halves sigma_inv(const RoundFunction& f, const Word& subkey, const Halves& state);

struct KeyedRound {
  RoundFunction f;
  Word subkey;
};

/// Applies rounds[0] first, then rounds[1], and so on.
Halves psi(std::span<const KeyedRound> rounds, Halves state);

/**
 * A full GDES^n_{2t} instance:
 * T_k = P^-1 . theta? . sigma_{f_n} . ... . sigma_{f_1} . P,
 * where round r uses round_fns[r] with subkey key_schedule[r](k).
 */
class CipherSpec {
 public:
  struct Params {
    GroupSpec group = GroupSpec::cyclic(2);
    std::size_t half_width = 0;
    std::size_t rounds = 0;
    WireMap initial_perm;
    std::size_t key_length = 0;
    std::vector<WireMap> key_schedule;
    /// One function shared by all rounds, or exactly one per round.
    std::vector<RoundFunction> round_fns;
    bool final_swap = true;
  };

  /// Throws SpecError with a JSON-pointer-like path on any structural violation.
  explicit CipherSpec(Params params);

  const GroupSpec& group() const { return p_.group; }
  std::size_t half_width() const { return p_.half_width; }
  std::size_t block_length() const { return 2 * p_.half_width; }
  std::size_t rounds() const { return p_.rounds; }
  std::size_t key_length() const { return p_.key_length; }
  bool final_swap() const { return p_.final_swap; }
  const WireMap& initial_perm() const { return p_.initial_perm; }
  const WireMap& final_perm() const { return final_perm_; }
  const std::vector<WireMap>& key_schedule() const { return p_.key_schedule; }
  const RoundFunction& round_fn(std::size_t r) const {
    return p_.round_fns.size() == 1 ? p_.round_fns.front() : p_.round_fns[r];
  }
  const std::vector<RoundFunction>& round_fns() const { return p_.round_fns; }

  /// |G|^key_length.
  BigInt key_space_size() const { return big_pow(p_.group.order(), p_.key_length); }
  /// |G|^(2t).
  BigInt message_space_size() const { return big_pow(p_.group.order(), block_length()); }

  std::vector<Word> subkeys(const Word& key) const;
  std::vector<KeyedRound> keyed_rounds(const Word& key) const;

  void check_key(const Word& key) const;
  void check_block(const Word& block) const;

 private:
  Params p_;
  WireMap final_perm_;
};

Word gdes_encrypt(const CipherSpec& spec, const Word& key, const Word& m);
Word gdes_decrypt(const CipherSpec& spec, const Word& key, const Word& c);

/// Same wiring over H, with every S-box grown by sbox_expand. S-box specs only.
CipherSpec expand_cipher(const CipherSpec& spec, const GroupEmbedding& embedding);

}  // namespace gdes
