#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "gdes/cycling.hpp"
#include "gdes/edes.hpp"
#include "gdes/error.hpp"
#include "gdes/reference.hpp"
#include "gdes/smallgroup.hpp"
#include "helpers.hpp"

using namespace gdes;
using testing::z3;

TEST_CASE("identity and swap ciphers") {
  const auto g = GroupSpec::cyclic(3);
  const auto id = testing::table_spec(g, 2, {}, false);
  const auto sw = testing::table_spec(g, 2, {}, true);
  const Word k = Word::zeros(g, 0);
  for (std::uint64_t s = 0; s < 81; ++s) {
    const Word m = u64_to_word(s, g, 4);
    CHECK(orbit_length(id, k, m).length == 1);
    const auto [x, y] = split_halves(m);
    CHECK(orbit_length(sw, k, m).length == (x == y ? 1u : 2u));
  }
}

TEST_CASE("engine matches the generic path") {
  for (std::uint32_t n : {2u, 3u, 5u}) {
    const CipherSpec spec = random_sbox_cipher(GroupSpec::cyclic(n), 77);
    Rng rng(n);
    for (int it = 0; it < 5; ++it) {
      const Word k = random_word(spec.group(), spec.key_length(), rng);
      const Word k2 = random_word(spec.group(), spec.key_length(), rng);
      const Permutation fast(spec, {{k, false}, {k2, true}});
      const Permutation slow(spec, {{k, false}, {k2, true}}, false);
      REQUIRE(fast.fast());
      REQUIRE_FALSE(slow.fast());
      for (int j = 0; j < 200; ++j) {
        const Word m = random_word(spec.group(), spec.block_length(), rng);
        REQUIRE(fast.leave(fast.step(fast.enter(m))) == slow.leave(slow.step(slow.enter(m))));
        REQUIRE(fast.leave(fast.enter(m)) == m);
      }
    }
  }
  const auto& e = edes_spec();
  const Permutation p(e, {{z3("11012012122012012110"), false}});
  CHECK(p.leave(p.step(p.enter(z3("012012012012012012")))) == z3("210212002210210000"));
  FastCipher fc(e);
  CHECK(fc.chunk_nits() == 3);
  CHECK(fc.chunk_bits() == 5);
}

TEST_CASE("orbit lengths agree with explicit cycle decomposition") {
  // |G|^2t <= 10^4: Z2 t=4 (256), Z3 t=4 (6561), Z3 t=2 keyed tables (81), Z5 t=2 (625)
  std::vector<CipherSpec> specs;
  specs.push_back(random_sbox_cipher(GroupSpec::cyclic(2), 1));
  specs.push_back(random_sbox_cipher(GroupSpec::cyclic(3), 2));
  specs.push_back(testing::keyed_table_spec(GroupSpec::cyclic(3), 2, 3));
  specs.push_back(testing::keyed_table_spec(GroupSpec::cyclic(5), 2, 4));
  Rng rng(9);
  int probes = 0;
  for (const auto& spec : specs) {
    for (int it = 0; it < 13; ++it, ++probes) {
      const Word k = random_word(spec.group(), spec.key_length(), rng);
      const Word m = random_word(spec.group(), spec.block_length(), rng);
      const ExplicitPerm p = materialize(spec, k);
      const auto want = cycle_length_of(p, static_cast<std::uint32_t>(word_to_u64(m)));
      REQUIRE(orbit_length(spec, k, m).length == want);
      REQUIRE(orbit_of(Permutation(spec, {{k, false}}, false), m, kDefaultMaxSteps).length == want);
    }
  }
  CHECK(probes >= 50);
}

TEST_CASE("truncation") {
  const CipherSpec spec = random_sbox_cipher(GroupSpec::cyclic(3), 2);
  Rng rng(1);
  const Word k = random_word(spec.group(), spec.key_length(), rng);
  const Word m = random_word(spec.group(), spec.block_length(), rng);
  const auto full = orbit_length(spec, k, m);
  REQUIRE(full.length > 1);
  const auto cut = orbit_length(spec, k, m, full.length - 1);
  CHECK(cut.truncated);
  CHECK(cut.steps_taken == full.length - 1);
  CHECK_THROWS_AS(orbit_length(spec, k, m, 0), RangeError);
}

TEST_CASE("checkpoint and resume") {
  const CipherSpec spec = random_sbox_cipher(GroupSpec::cyclic(5), 3);
  Rng rng(2);
  Word k, m;
  OrbitResult full;
  do {
    k = random_word(spec.group(), spec.key_length(), rng);
    m = random_word(spec.group(), spec.block_length(), rng);
    full = orbit_length(spec, k, m);
  } while (full.length < 5000);
  const auto path = (std::filesystem::temp_directory_path() / "gdes_ckpt_test.json").string();
  std::remove(path.c_str());
  OrbitOptions opts;
  opts.checkpoint_path = path;
  opts.checkpoint_interval = 1000;
  const auto part = orbit_length(spec, k, m, 2500, opts);
  CHECK(part.truncated);
  CHECK(std::filesystem::exists(path));
  opts.resume = true;
  const auto rest = orbit_length(spec, k, m, kDefaultMaxSteps, opts);
  CHECK_FALSE(rest.truncated);
  CHECK(rest.length == full.length);
  CHECK_FALSE(std::filesystem::exists(path));
}

TEST_CASE("verdict rule") {
  auto lengths = [](std::initializer_list<std::uint64_t> v) {
    std::vector<OrbitResult> out;
    for (auto x : v) {
      OrbitResult r;
      r.length = x;
      out.push_back(r);
    }
    return out;
  };
  auto r1 = closure_verdict(lengths({31, 37}), 256);
  CHECK(r1.lcm == 1147);
  CHECK(r1.refuted);
  auto r2 = closure_verdict(lengths({2526, 1739}), 6561);
  CHECK(r2.lcm == 4392714);
  CHECK(r2.refuted);
  CHECK_FALSE(closure_verdict(lengths({1}), 256).refuted);
  auto probes = lengths({31, 37});
  probes.push_back(OrbitResult{});
  probes.back().truncated = true;
  auto r3 = closure_verdict(probes, 256);
  CHECK(r3.lcm == 1147);
  CHECK_FALSE(r3.refuted);
  CHECK_FALSE(closure_verdict({}, 1).refuted);

  // adding probes never lowers the lcm
  Rng rng(3);
  std::vector<OrbitResult> acc;
  BigInt last = 1;
  for (int i = 0; i < 40; ++i) {
    OrbitResult r;
    r.length = 1 + rng.below(1000);
    acc.push_back(r);
    const auto rep = closure_verdict(acc, 1);
    CHECK(rep.lcm >= last);
    last = rep.lcm;
  }
}

TEST_CASE("refutation on a small cipher never claims closure") {
  const CipherSpec spec = random_sbox_cipher(GroupSpec::cyclic(2), 4);
  Rng rng(4);
  std::vector<Probe> probes;
  for (int i = 0; i < 6; ++i)
    probes.push_back({random_word(spec.group(), 10, rng), random_word(spec.group(), 8, rng)});
  const auto rep = closure_refute(spec, probes, kDefaultMaxSteps, big_pow(2, 8), 2);
  CHECK(rep.probes.size() == 6);
  CHECK((rep.verdict() == "refuted" || rep.verdict() == "inconclusive"));
  CHECK(rep.key_space == 1024);
}

TEST_CASE("purity probe") {
  const CipherSpec spec = random_sbox_cipher(GroupSpec::cyclic(3), 5);
  Rng rng(5);
  const Word k = random_word(spec.group(), spec.key_length(), rng);
  const Word k2 = random_word(spec.group(), spec.key_length(), rng);
  for (int i = 0; i < 20; ++i) {
    const Word m = random_word(spec.group(), spec.block_length(), rng);
    CHECK(purity_probe(spec, k, k, m).length == 1);
    const ExplicitPerm comp = perm_compose(perm_inverse(materialize(spec, k)), materialize(spec, k2));
    CHECK(purity_probe(spec, k, k2, m).length == cycle_length_of(comp, static_cast<std::uint32_t>(word_to_u64(m))));
  }
}

TEST_CASE("subgroup bound") {
  const auto g = GroupSpec::cyclic(3);
  const auto id = testing::table_spec(g, 1, {}, false);
  const auto rep = subgroup_lower_bound(id, {Word::zeros(g, 0)}, {{{{0, false}}, Word::zeros(g, 2)}});
  CHECK(rep.lcm == 1);

  // Commuting 2- and 3-cycles on 5 points: orbit lcm equals the group order.
  const ExplicitPerm a({1, 0, 2, 3, 4}), b({0, 1, 3, 4, 2});
  PermSet gens;
  gens.insert(a);
  gens.insert(b);
  const ExplicitPerm ab = perm_compose(a, b);
  BigInt bound = 1;
  for (std::uint32_t s = 0; s < 5; ++s) bound = big_lcm(bound, cycle_length_of(ab, s));
  CHECK(bound == 6);
  CHECK(generated_order(gens) == 6u);

  // On a cipher, the bound divides the explicitly generated order.
  const CipherSpec spec = testing::keyed_table_spec(GroupSpec::cyclic(2), 1, 8);
  const std::vector<Word> keys = {parse_word("01", GroupSpec::cyclic(2), 2), parse_word("10", GroupSpec::cyclic(2), 2)};
  std::vector<SubgroupProbe> probes;
  for (std::uint64_t m = 0; m < 4; ++m)
    probes.push_back({{{0, false}, {1, true}}, u64_to_word(m, GroupSpec::cyclic(2), 2)});
  const auto r = subgroup_lower_bound(spec, keys, probes);
  PermSet S;
  for (const auto& k : keys) S.insert(materialize(spec, k));
  const auto order = generated_order(S);
  REQUIRE(order.has_value());
  CHECK(BigInt(*order) % r.lcm == 0);
}

TEST_CASE("published subgroup lengths against 49!") {
  const BigInt l = lcm_of(published_subgroup_orbits());
  CHECK(to_string(l) == "3799312039462736762894710432934157021187368510");
  CHECK(l < factorial(49));
  CHECK(to_string(factorial(49)) ==
        "608281864034267560872252163321295376887552831379210240000000000");
}

TEST_CASE("walk") {
  const auto g = GroupSpec::cyclic(3);
  const auto id = testing::table_spec(g, 2, {}, false);
  const auto w0 = random_walk_closure(id, 1);
  CHECK(w0.cycle == 1);
  CHECK(w0.tail == 0);
  CHECK(w0.steps == 1);

  const CipherSpec spec = random_sbox_cipher(GroupSpec::cyclic(3), 6);
  const auto a = random_walk_closure(spec, 42), b = random_walk_closure(spec, 42);
  CHECK(a.start == b.start);
  CHECK(a.tail == b.tail);
  CHECK(a.cycle == b.cycle);
  REQUIRE_FALSE(a.truncated);
  // direct replay: x_tail == x_{tail+cycle}, and no earlier return into the cycle
  auto f = [&](const Word& x) { return gdes_encrypt(spec, walk_key(spec, 42, x), x); };
  Word x = int_to_word(a.start, spec.group(), spec.block_length());
  for (std::uint64_t i = 0; i < a.tail; ++i) x = f(x);
  Word y = x;
  for (std::uint64_t i = 0; i < a.cycle; ++i) {
    y = f(y);
    if (i + 1 < a.cycle) REQUIRE_FALSE(y == x);
  }
  CHECK(y == x);
  CHECK(a.estimate == BigInt(a.tail + a.cycle) * (a.tail + a.cycle));
  CHECK(random_walk_closure(spec, 42, 3).truncated);
}

TEST_CASE("random cipher shape") {
  const CipherSpec s = random_sbox_cipher(GroupSpec::cyclic(7), 1);
  CHECK(s.half_width() == 4);
  CHECK(s.rounds() == 2);
  CHECK(s.key_length() == 10);
  CHECK(s.round_fn(0).subkey_length() == 8);
  std::vector<bool> seen(5, false);
  for (auto v : s.round_fn(0).sbox()->expansion().table()) seen[v] = true;
  CHECK((seen[1] && seen[2] && seen[3] && seen[4]));
}

TEST_CASE("parallel runner") {
  std::vector<int> hits(100, 0);
  run_parallel(100, 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS(run_parallel(10, 3, [](std::size_t i) {
    if (i == 5) throw Error("boom");
  }));
}
