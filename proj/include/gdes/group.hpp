#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gdes {

/// An element of a direct product of cyclic groups, one residue per factor.
struct GroupElem {
  std::vector<std::uint32_t> residues;

  bool operator==(const GroupElem&) const = default;
};

/**
 * A finite abelian group Z_{n1} x ... x Z_{nm}.
 *
 * Elements are also addressed by a dense index in [0, order()) using mixed
 * radix with the first factor most significant. Nits inside a Word are stored
 * as such indices, so the fast index arithmetic below is what the cipher
 * layers use; the residue-vector operations are the reference semantics.
 */
class GroupSpec {
 public:
  /// Throws InvalidElement when a modulus is < 2 or the order exceeds 2^16.
  explicit GroupSpec(std::vector<std::uint32_t> moduli);

  static GroupSpec cyclic(std::uint32_t n) { return GroupSpec({n}); }

  /// Accepts "3", "Z3", "2x3" or "Z2xZ3".
  static GroupSpec parse(const std::string& text);

  std::span<const std::uint32_t> moduli() const { return moduli_; }
  std::uint32_t order() const { return order_; }
  std::uint32_t exponent() const { return exponent_; }
  bool is_cyclic() const { return moduli_.size() == 1; }

  bool contains(const GroupElem& e) const;
  void check(const GroupElem& e) const;

  GroupElem identity() const;
  GroupElem element_at(std::uint32_t index) const;
  std::uint32_t index_of(const GroupElem& e) const;

  std::uint32_t add_index(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg_index(std::uint32_t a) const;
  std::uint32_t sub_index(std::uint32_t a, std::uint32_t b) const {
    return add_index(a, neg_index(b));
  }

  std::string to_string() const;

  bool operator==(const GroupSpec& other) const { return moduli_ == other.moduli_; }

 private:
  std::vector<std::uint32_t> moduli_;
  std::uint32_t order_ = 1;
  std::uint32_t exponent_ = 1;
};

GroupElem gadd(const GroupSpec& spec, const GroupElem& a, const GroupElem& b);
GroupElem gsub(const GroupSpec& spec, const GroupElem& a, const GroupElem& b);
GroupElem gneg(const GroupSpec& spec, const GroupElem& a);

/// Least n > 0 with n*x = e for every x: the lcm of the moduli.
std::uint32_t characteristic(const GroupSpec& spec);

}  // namespace gdes
