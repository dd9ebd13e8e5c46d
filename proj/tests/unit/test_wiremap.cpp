#include <doctest.h>

#include "gdes/edes.hpp"
#include "gdes/error.hpp"
#include "gdes/rng.hpp"
#include "gdes/wiremap.hpp"

using namespace gdes;

namespace {
Word z3(const std::string& s) { return parse_word(s, GroupSpec::cyclic(3), s.size()); }
}

TEST_CASE("gather semantics on the E-DES wires") {
  const auto& spec = edes_spec();
  CHECK(wiremap_apply(spec.initial_perm(), z3("012012012012012012")) == z3("121020110102200221"));
  CHECK(wiremap_apply(spec.round_fn(0).sbox()->expansion(), z3("102200221")) == z3("110220022002211"));
  CHECK(wiremap_apply(spec.key_schedule()[0], z3("11012012122012012110")) == z3("120002201111211"));
  CHECK(wiremap_apply(spec.key_schedule()[1], z3("11012012122012012110")) == z3("011010121202202"));
  const std::vector<std::uint32_t> pinv = {6, 3, 16, 11, 7, 17, 14, 8, 5, 15, 1, 2, 4, 18, 13, 9, 10, 12};
  CHECK(std::vector<std::uint32_t>(spec.final_perm().table().begin(), spec.final_perm().table().end()) == pinv);
}

TEST_CASE("inversion") {
  CHECK(wiremap_invert(WireMap::identity(5)) == WireMap::identity(5));
  CHECK_THROWS_AS(wiremap_invert(edes_spec().round_fn(0).sbox()->expansion()), NotInvertible);
  CHECK_THROWS_AS(wiremap_invert(WireMap(3, {1, 1, 2})), NotInvertible);
  CHECK_THROWS_AS(WireMap(3, {1, 4}), DimensionError);
  CHECK_THROWS_AS(WireMap(3, {0, 1}), DimensionError);

  Rng rng(3);
  for (int it = 0; it < 1000; ++it) {
    std::vector<std::uint32_t> t(10);
    for (std::uint32_t i = 0; i < 10; ++i) t[i] = i + 1;
    rng.shuffle(t);
    const WireMap m(10, t);
    std::vector<std::uint32_t> nits(10);
    for (auto& x : nits) x = static_cast<std::uint32_t>(rng.below(5));
    const Word w(GroupSpec::cyclic(5), nits);
    REQUIRE(wiremap_apply(wiremap_invert(m), wiremap_apply(m, w)) == w);
  }
}

TEST_CASE("length mismatch") {
  CHECK_THROWS_AS(wiremap_apply(WireMap::identity(4), z3("012")), DimensionError);
}
