#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gdes/permnet.hpp"

namespace gdes {

/**
 * Table-driven evaluation of the inner map g = theta? . sigma_n ... sigma_1 of
 * a cipher, so that T_k = P^-1 g P. Each half is packed as chunks of c nits in
 * B bits; a state is (L << 32) | R. Orbits, cycle structure and sign of T_k
 * equal those of g, so long experiments never leave this representation.
 */
class FastCipher {
 public:
  /// Layout is only available when a packed half needs at most 24 bits.
  static bool supports(const CipherSpec& spec);
  /// Throws CapacityError when !supports(spec).
  explicit FastCipher(const CipherSpec& spec);

  /// Per-round f tables for one key, indexed by packed half.
  struct Key {
    std::vector<std::vector<std::uint32_t>> f;
  };
  Key compile(const Word& key) const;

  std::uint64_t forward(const Key& k, std::uint64_t s) const {
    std::uint32_t l = static_cast<std::uint32_t>(s >> 32), r = static_cast<std::uint32_t>(s);
    for (const auto& f : k.f) {
      const std::uint32_t nr = add(l, f[r]);
      l = r;
      r = nr;
    }
    if (swap_) std::swap(l, r);
    return (std::uint64_t{l} << 32) | r;
  }

  std::uint64_t backward(const Key& k, std::uint64_t s) const {
    std::uint32_t l = static_cast<std::uint32_t>(s >> 32), r = static_cast<std::uint32_t>(s);
    if (swap_) std::swap(l, r);
    for (std::size_t i = k.f.size(); i-- > 0;) {
      const std::uint32_t nl = sub(r, k.f[i][l]);
      r = l;
      l = nl;
    }
    return (std::uint64_t{l} << 32) | r;
  }

  /// Message word <-> inner state (applies P / P^-1).
  std::uint64_t enter(const Word& m) const;
  Word leave(std::uint64_t s) const;

  /// Dense index in [0, |G|^2t) of an inner state, and back.
  std::uint64_t dense(std::uint64_t s) const {
    return std::uint64_t{half_to_dense_[s >> 32]} * half_count_ +
           half_to_dense_[static_cast<std::uint32_t>(s)];
  }
  std::uint64_t from_dense(std::uint64_t d) const {
    return (std::uint64_t{dense_to_half_[d / half_count_]} << 32) | dense_to_half_[d % half_count_];
  }
  std::uint64_t state_count() const { return half_count_ * half_count_; }

  unsigned chunk_nits() const { return c_; }
  unsigned chunk_bits() const { return b_; }

 private:
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return chunkwise(add_, a, b); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return chunkwise(sub_, a, b); }
  std::uint32_t chunkwise(const std::vector<std::uint16_t>& table, std::uint32_t a,
                          std::uint32_t b) const {
    std::uint32_t out = 0;
    for (unsigned ch = 0, sh = 0; ch < chunks_; ++ch, sh += b_)
      out |= std::uint32_t{table[(((a >> sh) & mask_) << b_) | ((b >> sh) & mask_)]} << sh;
    return out;
  }
  std::uint32_t pack(std::span<const std::uint32_t> nits) const;
  void unpack(std::uint32_t h, std::uint32_t* nits) const;

  const CipherSpec* spec_;
  std::uint32_t q_;
  std::size_t t_;
  unsigned c_ = 0, b_ = 0, chunks_ = 0;
  std::uint32_t mask_ = 0;
  bool swap_;
  std::uint64_t half_count_;
  std::vector<std::uint16_t> add_, sub_;
  std::vector<std::uint32_t> half_to_dense_, dense_to_half_;
};

}  // namespace gdes
