#include <doctest.h>

#include "gdes/error.hpp"
#include "gdes/smallgroup.hpp"
#include "helpers.hpp"

using namespace gdes;

TEST_CASE("explicit permutations") {
  const auto id = ExplicitPerm::identity(5);
  CHECK(perm_sign(id) == 1);
  const ExplicitPerm tr({1, 0, 2, 3, 4}), cyc({1, 2, 0, 3, 4});
  CHECK(perm_sign(tr) == -1);
  CHECK(perm_sign(cyc) == 1);
  CHECK(perm_compose(tr, tr) == id);
  CHECK(perm_compose(cyc, id) == cyc);
  CHECK(cycle_type(cyc) == std::map<std::uint64_t, std::uint64_t>{{1, 2}, {3, 1}});
  CHECK_THROWS_AS(ExplicitPerm({0, 0, 1}), NotInvertible);
  CHECK_THROWS_AS(perm_compose(id, ExplicitPerm::identity(4)), DimensionError);
  Rng rng(1);
  std::vector<std::uint32_t> v(100);
  for (std::uint32_t i = 0; i < 100; ++i) v[i] = i;
  rng.shuffle(v);
  const ExplicitPerm p(v);
  CHECK(perm_compose(p, perm_inverse(p)).is_identity());
  CHECK(perm_compose(perm_inverse(p), p).is_identity());
}

TEST_CASE("materialize") {
  const auto g = GroupSpec::cyclic(3);
  CHECK(materialize(testing::table_spec(g, 1, {}, false), Word::zeros(g, 0)).is_identity());
  const auto toy = testing::table_spec(g, 1, {FunctionTable(g, 1, {1, 2, 0}), FunctionTable(g, 1, {2, 2, 1})}, true);
  const auto p = materialize(toy, Word::zeros(g, 0));
  CHECK(p.size() == 9);
  const CipherSpec spec = random_sbox_cipher(GroupSpec::cyclic(2), 3);
  Rng rng(2);
  const Word k = random_word(spec.group(), 10, rng);
  CHECK(perm_compose(materialize_decrypt(spec, k), materialize(spec, k)).is_identity());
}

TEST_CASE("materialize refuses large domains") {
  const CipherSpec big = random_sbox_cipher(GroupSpec::cyclic(11), 1);  // 11^8 states
  CHECK_THROWS_AS(materialize(big, Word::zeros(big.group(), 10)), CapacityError);
}

TEST_CASE("streaming sign agrees with the explicit sign") {
  std::vector<CipherSpec> specs;
  specs.push_back(random_sbox_cipher(GroupSpec::cyclic(2), 11));
  specs.push_back(random_sbox_cipher(GroupSpec::cyclic(3), 12));
  specs.push_back(testing::keyed_table_spec(GroupSpec::cyclic(5), 2, 13));
  specs.push_back(testing::keyed_table_spec(GroupSpec::cyclic(7), 2, 14));
  Rng rng(3);
  for (const auto& spec : specs)
    for (int i = 0; i < 20; ++i) {
      const Word k = random_word(spec.group(), spec.key_length(), rng);
      const auto s = streaming_sign(spec, k);
      const auto p = materialize(spec, k);
      REQUIRE(s.sign == perm_sign(p));
      REQUIRE(s.cycles == cycle_lengths(p).size());
    }
  const auto g = GroupSpec::cyclic(3);
  CHECK(streaming_sign(testing::table_spec(g, 2, {}, false), Word::zeros(g, 0)).sign == 1);
}

TEST_CASE("injective tables") {
  CHECK(injective_tables(GroupSpec::cyclic(2), 1).size() == 2);
  CHECK(injective_tables(GroupSpec::cyclic(3), 1).size() == 6);
  for (const auto& f : injective_tables(GroupSpec::cyclic(3), 1)) CHECK_FALSE(f.is_odot_identity());
  CHECK_THROWS_AS(injective_tables(GroupSpec::cyclic(3), 2), CapacityError);
}

TEST_CASE("enumeration basics") {
  const auto z2 = GroupSpec::cyclic(2), z3 = GroupSpec::cyclic(3);
  const auto X2 = injective_tables(z2, 1), X3 = injective_tables(z3, 1);
  const auto s0 = enumerate_feistel_set(z2, 1, X2, 0, false);
  CHECK(s0.size() == 1);
  CHECK(s0[0].is_identity());
  CHECK(enumerate_feistel_set(z2, 1, X2, 2, false).size() <= 4);
  CHECK(enumerate_feistel_set(z3, 1, X3, 2, false).size() <= 36);
  const PermSet g2 = enumerate_feistel_set(z3, 1, X3, 2, true);
  for (const auto& p : g2.items()) CHECK(p.size() == 9);
}

namespace {
struct Row {
  unsigned n;
  std::size_t size;
  bool identity, closed;
  std::uint64_t order;
};

// Frozen from an independent exhaustive enumeration (Python, itertools).
void check_rows(std::uint32_t q, bool swap, bool tie, const std::vector<Row>& rows) {
  const auto g = GroupSpec::cyclic(q);
  const auto X = injective_tables(g, 1);
  for (const auto& r : rows) {
    CAPTURE(q);
    CAPTURE(swap);
    CAPTURE(r.n);
    const PermSet S = enumerate_feistel_set(g, 1, X, r.n, swap, tie);
    CHECK(S.size() == r.size);
    CHECK(contains_identity(S) == r.identity);
    CHECK(closure_check(S).closed == r.closed);
    CHECK(generated_order(S) == r.order);
  }
}
}  // namespace

TEST_CASE("Feistel sets without the swap") {
  check_rows(2, false, false,
             {{1, 2, false, false, 12}, {2, 4, false, false, 12}, {3, 4, true, true, 4},
              {4, 4, false, false, 12}, {5, 4, false, false, 12}, {6, 4, true, true, 4}});
  check_rows(3, false, false,
             {{1, 6, false, false, 432}, {2, 36, false, false, 216}, {3, 72, false, false, 432},
              {4, 117, false, false, 216}, {5, 171, false, false, 432}, {6, 216, true, true, 216}});
}

TEST_CASE("Feistel sets with the swap") {
  check_rows(2, true, false,
             {{1, 2, false, false, 4}, {2, 4, false, false, 8}, {3, 4, false, false, 8},
              {4, 4, false, false, 8}, {5, 4, false, false, 8}, {6, 4, false, false, 8}});
  check_rows(3, true, false,
             {{1, 6, false, false, 9}, {2, 36, false, false, 432}, {3, 72, false, false, 216},
              {4, 117, false, false, 432}, {5, 171, false, false, 216}, {6, 216, false, false, 432}});
}

TEST_CASE("tied ends over Z2: identity absence carries from n-2 to n") {
  const auto g = GroupSpec::cyclic(2);
  const auto X = injective_tables(g, 1);
  for (unsigned n = 3; n <= 6; ++n) {
    const bool before = contains_identity(enumerate_feistel_set(g, 1, X, n - 2, true, true));
    const bool after = contains_identity(enumerate_feistel_set(g, 1, X, n, true, true));
    CHECK((before || !after));
    CHECK_FALSE(after);
  }
  check_rows(2, false, true, {{3, 2, true, true, 2}, {4, 4, false, false, 12}});
}

TEST_CASE("closure and purity predicates") {
  PermSet sym3;
  std::vector<std::uint32_t> v = {0, 1, 2};
  do sym3.insert(ExplicitPerm(v));
  while (std::next_permutation(v.begin(), v.end()));
  CHECK(closure_check(sym3).closed);
  CHECK(purity_check(sym3).pure);

  PermSet one;
  one.insert(ExplicitPerm({1, 0, 2}));
  CHECK_FALSE(closure_check(one).closed);
  CHECK(closure_check(one).witness == std::pair<std::size_t, std::size_t>{0, 0});

  // coset g.H with H = <(0 1 2)> and g = (3 4) on six points
  const ExplicitPerm c({1, 2, 0, 3, 4, 5}), gsw({0, 1, 2, 4, 3, 5});
  PermSet coset;
  ExplicitPerm h = ExplicitPerm::identity(6);
  for (int i = 0; i < 3; ++i, h = perm_compose(c, h)) coset.insert(perm_compose(gsw, h));
  CHECK(coset.size() == 3);
  CHECK_FALSE(closure_check(coset).closed);
  const auto pc = purity_check(coset);
  CHECK(pc.pure);
  CHECK(pc.lemma_agrees);

  PermSet idc;
  idc.insert(ExplicitPerm::identity(3));
  idc.insert(ExplicitPerm({1, 2, 0}));
  const auto pn = purity_check(idc);
  CHECK_FALSE(pn.pure);
  CHECK(pn.witness.has_value());
  CHECK(pn.lemma_agrees);
}

TEST_CASE("closed implies pure on enumerated sets") {
  for (std::uint32_t q : {2u, 3u})
    for (bool swap : {false, true})
      for (unsigned n = 1; n <= 5; ++n) {
        const auto g = GroupSpec::cyclic(q);
        const PermSet S = enumerate_feistel_set(g, 1, injective_tables(g, 1), n, swap);
        if (S.size() > 300) continue;
        const auto p = purity_check(S);
        CHECK(p.lemma_agrees);
        if (closure_check(S).closed) CHECK(p.pure);
      }
}

TEST_CASE("generated order") {
  PermSet t;
  t.insert(ExplicitPerm({1, 0, 2}));
  CHECK(generated_order(t) == 2u);
  PermSet big;
  std::vector<std::uint32_t> a(10), b(10);
  for (std::uint32_t i = 0; i < 10; ++i) {
    a[i] = (i + 1) % 10;
    b[i] = i;
  }
  std::swap(b[0], b[1]);
  big.insert(ExplicitPerm(a));
  big.insert(ExplicitPerm(b));
  CHECK_FALSE(generated_order(big, 1000).has_value());
  const auto z2 = GroupSpec::cyclic(2);
  const PermSet gd = enumerate_feistel_set(z2, 1, injective_tables(z2, 1), 2, true);
  CHECK(*generated_order(gd) > gd.size());
}
