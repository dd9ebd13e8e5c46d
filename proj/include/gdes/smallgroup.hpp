#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "gdes/permnet.hpp"

namespace gdes {

/// A bijection of {0..N-1}; image[s] is where s goes.
class ExplicitPerm {
 public:
  ExplicitPerm() = default;
  /// Throws NotInvertible unless `image` is a bijection.
  explicit ExplicitPerm(std::vector<std::uint32_t> image);
  static ExplicitPerm identity(std::size_t n);

  std::size_t size() const { return image_.size(); }
  std::uint32_t operator[](std::size_t s) const { return image_[s]; }
  const std::vector<std::uint32_t>& image() const { return image_; }
  bool is_identity() const;
  std::size_t hash() const;

  bool operator==(const ExplicitPerm&) const = default;

 private:
  std::vector<std::uint32_t> image_;
};

inline constexpr std::uint64_t kMaterializeLimit = std::uint64_t{1} << 24;

/// image[s] = codec(encrypt(k, decode(s))); CapacityError above 2^24 states.
ExplicitPerm materialize(const CipherSpec& spec, const Word& k);
ExplicitPerm materialize_decrypt(const CipherSpec& spec, const Word& k);

/// (p . q)[s] = p[q[s]], i.e. q first.
ExplicitPerm perm_compose(const ExplicitPerm& p, const ExplicitPerm& q);
ExplicitPerm perm_inverse(const ExplicitPerm& p);
int perm_sign(const ExplicitPerm& p);
/// Lengths of all cycles, in order of their smallest element.
std::vector<std::uint64_t> cycle_lengths(const ExplicitPerm& p);
/// Length of the cycle through s.
std::uint64_t cycle_length_of(const ExplicitPerm& p, std::uint32_t s);
/// Cycle type as {length: count}.
std::map<std::uint64_t, std::uint64_t> cycle_type(const ExplicitPerm& p);

struct StreamingSign {
  int sign = 1;
  std::uint64_t states = 0;
  std::uint64_t cycles = 0;
  double wall_time = 0;
};

/// Parity of T_k by walking every cycle once with an N-bit visited bitmap.
StreamingSign streaming_sign(const CipherSpec& spec, const Word& k);

/// Insertion-ordered set of permutations with hashed membership.
class PermSet {
 public:
  bool insert(ExplicitPerm p);
  bool contains(const ExplicitPerm& p) const { return index_of(p).has_value(); }
  std::optional<std::size_t> index_of(const ExplicitPerm& p) const;
  std::size_t size() const { return items_.size(); }
  const ExplicitPerm& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<ExplicitPerm>& items() const { return items_; }

 private:
  std::vector<ExplicitPerm> items_;
  std::unordered_multimap<std::size_t, std::size_t> index_;
};

inline constexpr std::uint64_t kEnumerationLimit = 10'000'000;

/// Every bijective table G^t -> G^t; CapacityError when |G|^t > 8.
std::vector<FunctionTable> injective_tables(const GroupSpec& group, std::size_t t);

/**
 * All sigma_{f_n} ... sigma_{f_1} with each f_r in X, optionally followed by
 * the swap theta; states are indexed x * |G|^t + y. With tie_ends the last
 * round reuses the first round's function.
 */
PermSet enumerate_feistel_set(const GroupSpec& group, std::size_t t,
                              const std::vector<FunctionTable>& X, std::size_t n,
                              bool include_swap, bool tie_ends = false);

struct ClosureResult {
  bool closed = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // S[a] . S[b] not in S
};
ClosureResult closure_check(const PermSet& S);

struct PurityResult {
  bool pure = true;
  std::optional<std::array<std::size_t, 3>> witness;  // S[a] S[b]^-1 S[c] not in S
  bool lemma_agrees = true;  // T^-1 S closed for T = S[0] matches `pure`
};
/// CapacityError when |S| > 300.
PurityResult purity_check(const PermSet& S);

bool contains_identity(const PermSet& S);

/// Order of <S>, or nullopt when it exceeds `cap`.
std::optional<std::uint64_t> generated_order(const PermSet& S, std::uint64_t cap = 1'000'000);

}  // namespace gdes
