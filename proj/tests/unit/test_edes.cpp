#include <doctest.h>

#include "gdes/edes.hpp"
#include "gdes/reference.hpp"
#include "gdes/spec_io.hpp"
#include "helpers.hpp"

using namespace gdes;
using testing::z3;

TEST_CASE("preset shape") {
  const auto& s = edes_spec();
  CHECK(s.group() == GroupSpec::cyclic(3));
  CHECK(s.half_width() == 9);
  CHECK(s.rounds() == 2);
  CHECK(s.key_length() == 20);
  CHECK(s.final_swap());
  CHECK(s.round_fn(0).subkey_length() == 15);
  CHECK(s.round_fn(0).sbox()->boxes().size() == 3);
  CHECK(s.message_space_size() == 387420489);
}

TEST_CASE("golden trace") {
  const auto t = edes_trace(z3("11012012122012012110"), z3("012012012012012012"));
  CHECK(t.m1 == z3("121020110102200221"));
  CHECK(t.m2 == z3("102200221"));
  CHECK(t.m3 == z3("110220022002211"));
  CHECK(t.k1 == z3("120002201111211"));
  CHECK(t.m4 == z3("200222220110122"));
  CHECK(t.round1[0].output == z3("202"));
  CHECK(t.round1[1].output == z3("012"));
  CHECK(t.round1[2].output == z3("211"));
  CHECK(t.m5 == z3("202012211"));
  CHECK(t.m6 == z3("121020110"));
  CHECK(t.m7 == z3("020002021"));
  CHECK(t.e1 == z3("102200221020002021"));
  CHECK(t.e2 == z3("020002021"));
  CHECK(t.e3 == z3("102000200020210"));
  CHECK(t.k2 == z3("011010121202202"));
  CHECK(t.e4 == z3("110010021222112"));
  CHECK(t.round2[0].output == z3("002"));
  CHECK(t.round2[1].output == z3("022"));
  CHECK(t.round2[2].output == z3("212"));
  CHECK(t.e5 == z3("002022212"));
  CHECK(t.e6 == z3("102200221"));
  CHECK(t.e7 == z3("101222100"));
  CHECK(t.e8 == z3("101222100020002021"));
  CHECK(t.c == z3("210212002210210000"));
  const auto j = trace_to_json(t);
  CHECK(j["c"] == "210212002210210000");
  CHECK(j["sboxes1"][1]["row"] == 7);
}

namespace {
// Rebuilds every field from the primitives alone.
void replay(const EdesTrace& t) {
  const auto& s = edes_spec();
  const auto& rf = *s.round_fn(0).sbox();
  REQUIRE(t.m1 == wiremap_apply(s.initial_perm(), t.m));
  REQUIRE(concat(t.m6, t.m2) == t.m1);
  REQUIRE(t.m3 == wiremap_apply(rf.expansion(), t.m2));
  REQUIRE(t.k1 == wiremap_apply(s.key_schedule()[0], t.key));
  REQUIRE(t.m4 == word_add(t.m3, t.k1));
  std::vector<std::uint32_t> outs;
  for (std::size_t b = 0; b < 3; ++b) {
    const Word block(s.group(), {t.m4.nits().begin() + 5 * b, t.m4.nits().begin() + 5 * b + 5});
    REQUIRE(t.round1[b].output == sbox_lookup(rf.boxes()[b], block));
    for (auto n : t.round1[b].output.nits()) outs.push_back(n);
  }
  REQUIRE(t.m5 == Word(s.group(), outs));
  REQUIRE(t.m7 == word_add(t.m6, t.m5));
  REQUIRE(t.e1 == concat(t.m2, t.m7));
  REQUIRE(t.e3 == wiremap_apply(rf.expansion(), t.e2));
  REQUIRE(t.e4 == word_add(t.e3, t.k2));
  REQUIRE(t.e5 == round_function_f(rf, t.e2, t.k2));
  REQUIRE(t.e7 == word_add(t.e6, t.e5));
  REQUIRE(t.e8 == concat(t.e7, t.e2));
  REQUIRE(t.c == wiremap_apply(s.final_perm(), t.e8));
  REQUIRE(t.c == edes_encrypt(t.key, t.m));
}
}  // namespace

TEST_CASE("trace replays through the primitives") {
  replay(edes_trace(Word::zeros(GroupSpec::cyclic(3), 20), Word::zeros(GroupSpec::cyclic(3), 18)));
  Rng rng(4);
  for (int it = 0; it < 200; ++it)
    replay(edes_trace(random_word(GroupSpec::cyclic(3), 20, rng), random_word(GroupSpec::cyclic(3), 18, rng)));
}

TEST_CASE("preset goes through the generic path") {
  Rng rng(5);
  for (int it = 0; it < 1000; ++it) {
    const Word k = random_word(GroupSpec::cyclic(3), 20, rng), m = random_word(GroupSpec::cyclic(3), 18, rng);
    REQUIRE(edes_encrypt(k, m) == gdes_encrypt(edes_spec(), k, m));
  }
  for (int it = 0; it < 10000; ++it) {
    const Word k = random_word(GroupSpec::cyclic(3), 20, rng), m = random_word(GroupSpec::cyclic(3), 18, rng);
    REQUIRE(edes_decrypt(k, edes_encrypt(k, m)) == m);
  }
}

TEST_CASE("shipped data file equals the preset") {
  const CipherSpec fromfile = load_spec(GDES_DATA_DIR "/edes.json");
  CHECK(spec_to_json(fromfile) == spec_to_json(edes_spec()));
}

TEST_CASE("reference catalog passes") {
  for (const auto& c : edes_reference_checks()) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
  for (const auto& c : orbit_pair_checks()) {
    CAPTURE(c.name);
    CHECK(c.passed);
  }
}
