#include <doctest.h>

#include "gdes/edes.hpp"
#include "gdes/error.hpp"
#include "helpers.hpp"

using namespace gdes;
using testing::z3;

namespace {
const SBoxRoundSpec& edes_boxes() { return *edes_spec().round_fn(0).sbox(); }
}

TEST_CASE("lookup convention") {
  struct Case {
    int box;
    const char* in;
    std::uint64_t row, col;
    std::uint32_t entry;
    const char* out;
  };
  // Row and column are the raw base-3 values of (n1,n5) and (n2,n3,n4).
  const Case cases[] = {{2, "22010", 6, 19, 11, "102"}, {1, "20022", 8, 2, 20, "202"},
                        {3, "10122", 5, 5, 22, "211"},  {2, "00212", 2, 7, 8, "022"},
                        {2, "22201", 7, 24, 5, "012"},  {1, "11001", 4, 9, 2, "002"},
                        {3, "22112", 8, 22, 23, "212"}};
  for (const auto& c : cases) {
    const auto sel = sbox_select(edes_boxes().boxes()[c.box - 1], z3(c.in));
    CAPTURE(c.in);
    CHECK(sel.row == c.row);
    CHECK(sel.column == c.col);
    CHECK(sel.entry == c.entry);
    CHECK(sel.output == z3(c.out));
  }
  CHECK_THROWS_AS(sbox_lookup(edes_boxes().boxes()[0], z3("0120")), DimensionError);
}

TEST_CASE("selection generalizes to other widths") {
  // i=3: row from nits 1,2 and the last nit; column from the middle j.
  const auto g = GroupSpec::cyclic(2);
  std::vector<std::uint32_t> entries(8 * 4);
  for (std::uint32_t r = 0; r < 8; ++r)
    for (std::uint32_t c = 0; c < 4; ++c) entries[r * 4 + c] = (r + c) % 4;
  const SBox box(g, 3, 2, entries);
  const auto sel = sbox_select(box, parse_word("10011", g, 5));
  CHECK(sel.row == 0b101);
  CHECK(sel.column == 0b01);
  const auto sel2 = sbox_select(box, parse_word("01100", g, 5));
  CHECK(sel2.row == 0b010);
  CHECK(sel2.column == 0b10);
}

TEST_CASE("round function") {
  const auto sk = edes_spec().subkeys(z3("11012012122012012110"));
  CHECK(round_function_f(edes_boxes(), z3("102200221"), sk[0]) == z3("202012211"));
  CHECK(round_function_f(edes_boxes(), z3("020002021"), sk[1]) == z3("002022212"));
  const auto tr = round_function_trace(edes_boxes(), z3("102200221"), sk[0]);
  CHECK(tr.output == z3("202012211"));
  CHECK(tr.mixed == z3("200222220110122"));
  CHECK(tr.blocks.size() == 3);

  const auto g = GroupSpec::cyclic(3);
  const SBox zero(g, 2, 3, std::vector<std::uint32_t>(243, 0));
  const SBoxRoundSpec zs({zero, zero, zero}, edes_boxes().expansion());
  Rng rng(1);
  for (int it = 0; it < 50; ++it)
    CHECK(round_function_f(zs, random_word(g, 9, rng), Word::zeros(g, 15)) == Word::zeros(g, 9));
}

TEST_CASE("round spec shape checks") {
  const auto g = GroupSpec::cyclic(3);
  const SBox b(g, 2, 3, std::vector<std::uint32_t>(243, 0));
  CHECK_THROWS_AS(SBoxRoundSpec({b, b}, edes_boxes().expansion()), DimensionError);
  CHECK_THROWS_AS(SBox(g, 2, 3, std::vector<std::uint32_t>(10, 0)), DimensionError);
  CHECK_THROWS_AS(SBox(g, 2, 3, std::vector<std::uint32_t>(243, 27)), RangeError);
}

TEST_CASE("generation") {
  const auto g = GroupSpec::cyclic(2);
  const SBox a = sbox_generate(g, 2, 2, 9, true), b = sbox_generate(g, 2, 2, 9, true);
  CHECK(a == b);
  CHECK(a.rows() == 4);
  CHECK(a.columns() == 4);
  CHECK(sbox_audit(a).rows_surjective());
  const SBox big = sbox_generate(GroupSpec::cyclic(5), 2, 2, 4, true);
  CHECK(sbox_audit(big).rows_surjective());
  CHECK_FALSE(sbox_generate(g, 2, 2, 10, true) == a);
}

namespace {
// Brute-force over all pairs, independent of the library's generator shortcut.
bool affine_by_pairs(const SBox& box) {
  const auto& g = box.group();
  const std::size_t w = box.block_width();
  const std::uint64_t n = space_size_u64(g, w);
  std::vector<Word> in, out;
  for (std::uint64_t x = 0; x < n; ++x) {
    in.push_back(u64_to_word(x, g, w));
    out.push_back(sbox_lookup(box, in.back()));
  }
  const Word f0 = out[0];
  for (std::uint64_t x = 0; x < n; ++x)
    for (std::uint64_t y = 0; y < n; ++y) {
      const auto s = word_to_u64(word_add(in[x], in[y]));
      if (word_sub(out[s], f0) != word_add(word_sub(out[x], f0), word_sub(out[y], f0))) return false;
    }
  return true;
}
}  // namespace

TEST_CASE("audit") {
  const auto g = GroupSpec::cyclic(3);
  // F(x) = first j nits of the (row, column) read-out: the column word itself.
  std::vector<std::uint32_t> lin(243);
  for (std::uint32_t r = 0; r < 9; ++r)
    for (std::uint32_t c = 0; c < 27; ++c) lin[r * 27 + c] = c;
  const SBox linear(g, 2, 3, lin);
  CHECK(sbox_audit(linear).affine);
  CHECK(affine_by_pairs(linear));

  for (std::size_t b = 0; b < 3; ++b) {
    const auto a = sbox_audit(edes_boxes().boxes()[b]);
    CHECK_FALSE(a.affine);
    CHECK(a.affine_witness.has_value());
  }
  CHECK_FALSE(affine_by_pairs(edes_boxes().boxes()[0]));

  const auto a1 = sbox_audit(edes_boxes().boxes()[0]);
  CHECK_FALSE(a1.rows[4].surjective);
  CHECK(a1.rows[4].missing == std::vector<std::uint32_t>{13});
  CHECK(a1.rows[4].duplicated == std::vector<std::uint32_t>{23});
  CHECK_FALSE(a1.rows_surjective());

  CHECK_THROWS_AS(sbox_audit(SBox(GroupSpec::cyclic(11), 3, 3, std::vector<std::uint32_t>(1331 * 1331, 0))),
                  CapacityError);
}

TEST_CASE("affine test agrees with the all-pairs oracle on random boxes") {
  const auto g = GroupSpec::cyclic(2);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SBox b = sbox_generate(g, 1, 1, seed, seed % 2 == 0);
    CHECK(sbox_audit(b).affine == affine_by_pairs(b));
  }
}

TEST_CASE("embedding") {
  const auto e = GroupEmbedding::scaling(3, 9, 3);
  CHECK(e.map(2u) == 6);
  CHECK(e.preimage(6) == 2u);
  CHECK_FALSE(e.preimage(4).has_value());
  CHECK_THROWS(GroupEmbedding::scaling(3, 9, 2));  // not a homomorphism into Z9
  CHECK_THROWS(GroupEmbedding::scaling(3, 9, 0));  // not injective
  CHECK_THROWS(GroupEmbedding(GroupSpec::cyclic(3), GroupSpec::cyclic(3), {0, 1, 2}));
}

TEST_CASE("expansion keeps the embedded sub-array") {
  const auto e = GroupEmbedding::scaling(3, 9, 3);
  const SBox& s1 = edes_boxes().boxes()[0];
  const SBox big = sbox_expand(s1, e);
  CHECK(big.rows() == 81);
  CHECK(big.columns() == 729);
  const auto g = GroupSpec::cyclic(3);
  for (std::uint64_t x = 0; x < 243; ++x) {
    const Word w = u64_to_word(x, g, 5);
    REQUIRE(sbox_lookup(big, e.map(w)) == e.map(sbox_lookup(s1, w)));
  }
  // every other cell holds a word with a nit outside {0,3,6}
  std::uint64_t fresh = 0;
  for (std::uint64_t r = 0; r < 81; ++r)
    for (std::uint64_t c = 0; c < 729; c += 7) {
      const Word out = u64_to_word(big.entry(r, c), GroupSpec::cyclic(9), 3);
      const bool old_row = r % 3 == 0 && (r / 9) % 3 == 0;
      const bool old_col = c % 3 == 0 && (c / 9) % 3 == 0 && (c / 81) % 3 == 0;
      if (old_row && old_col) continue;
      ++fresh;
      REQUIRE_FALSE(e.in_image(out));
    }
  CHECK(fresh > 0);
}
