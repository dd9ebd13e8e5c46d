#include "gdes/reference.hpp"

#include "gdes/cycling.hpp"
#include "gdes/edes.hpp"

namespace gdes {

namespace {

const char* const kKey = "11012012122012012110";
const char* const kMsg = "012012012012012012";

Word z3(const std::string& s) { return parse_word(s, GroupSpec::cyclic(3), s.size()); }

Check expect(std::string name, const std::string& expected, const std::string& actual) {
  Check c{std::move(name), expected == actual, ""};
  if (!c.passed) c.detail = "expected " + expected + ", got " + actual;
  return c;
}

}  // namespace

std::vector<Check> edes_reference_checks() {
  std::vector<Check> out;
  auto run = [&](const std::string& name, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      out.push_back({name, false, std::string("threw: ") + e.what()});
    }
  };
  const CipherSpec& spec = edes_spec();
  const SBoxRoundSpec& rf = *spec.round_fn(0).sbox();

  run("key parses", [&] { out.push_back(expect("key parses", kKey, z3(kKey).to_string())); });
  run("m4 = m3 + k1", [&] {
    out.push_back(expect("m4 = m3 + k1", "200222220110122",
                         word_add(z3("110220022002211"), z3("120002201111211")).to_string()));
  });
  run("e4 = e3 + k2", [&] {
    out.push_back(expect("e4 = e3 + k2", "110010021222112",
                         word_add(z3("102000200020210"), z3("011010121202202")).to_string()));
  });
  run("split m1", [&] {
    auto [l, r] = split_halves(z3("121020110102200221"));
    out.push_back(expect("split m1", "121020110|102200221", l.to_string() + "|" + r.to_string()));
  });
  run("concat e8", [&] {
    out.push_back(expect("concat e8", "101222100020002021",
                         concat(z3("101222100"), z3("020002021")).to_string()));
  });
  run("P(m)", [&] {
    out.push_back(expect("P(m)", "121020110102200221",
                         wiremap_apply(spec.initial_perm(), z3(kMsg)).to_string()));
  });
  run("E(m2)", [&] {
    out.push_back(expect("E(m2)", "110220022002211",
                         wiremap_apply(rf.expansion(), z3("102200221")).to_string()));
  });
  run("CP1(k)", [&] {
    out.push_back(expect("CP1(k)", "120002201111211",
                         wiremap_apply(spec.key_schedule()[0], z3(kKey)).to_string()));
  });
  run("CP2(k)", [&] {
    out.push_back(expect("CP2(k)", "011010121202202",
                         wiremap_apply(spec.key_schedule()[1], z3(kKey)).to_string()));
  });
  run("inverse of P", [&] {
    std::string got;
    for (auto v : spec.final_perm().table()) got += (got.empty() ? "" : " ") + std::to_string(v);
    out.push_back(expect("inverse of P", "6 3 16 11 7 17 14 8 5 15 1 2 4 18 13 9 10 12", got));
  });
  run("subkey length", [&] {
    out.push_back(expect("subkey length", "15", std::to_string(spec.round_fn(0).subkey_length())));
  });

  struct Lookup {
    std::size_t box;
    const char* in;
    std::uint64_t row, col;
    std::uint32_t entry;
    const char* output;
  };
  const Lookup lookups[] = {{2, "22010", 6, 19, 11, "102"}, {1, "20022", 8, 2, 20, "202"},
                            {3, "10122", 5, 5, 22, "211"},  {2, "00212", 2, 7, 8, "022"}};
  for (const auto& l : lookups) {
    const std::string name = "S" + std::to_string(l.box) + "(" + l.in + ")";
    run(name, [&] {
      const auto sel = sbox_select(rf.boxes()[l.box - 1], z3(l.in));
      const std::string want = std::to_string(l.row) + "/" + std::to_string(l.col) + "/" +
                               std::to_string(l.entry) + "/" + l.output;
      const std::string got = std::to_string(sel.row) + "/" + std::to_string(sel.column) +
                              "/" + std::to_string(sel.entry) + "/" + sel.output.to_string();
      out.push_back(expect(name + " row/col/entry/output", want, got));
    });
  }

  const auto sk = spec.subkeys(z3(kKey));
  run("f round 1", [&] {
    out.push_back(expect("f round 1", "202012211",
                         round_function_f(rf, z3("102200221"), sk[0]).to_string()));
  });
  run("f round 2", [&] {
    out.push_back(expect("f round 2", "002022212",
                         round_function_f(rf, z3("020002021"), sk[1]).to_string()));
  });
  run("sigma round 1", [&] {
    auto s = sigma(spec.round_fn(0), sk[0], {z3("121020110"), z3("102200221")});
    out.push_back(expect("sigma round 1", "102200221|020002021",
                         s.left.to_string() + "|" + s.right.to_string()));
  });
  run("sigma round 2", [&] {
    auto s = sigma(spec.round_fn(1), sk[1], {z3("102200221"), z3("020002021")});
    out.push_back(expect("sigma round 2", "020002021|101222100",
                         s.left.to_string() + "|" + s.right.to_string()));
  });
  run("psi two rounds", [&] {
    const auto rounds = spec.keyed_rounds(z3(kKey));
    auto s = psi(rounds, {z3("121020110"), z3("102200221")});
    out.push_back(expect("psi two rounds", "020002021|101222100",
                         s.left.to_string() + "|" + s.right.to_string()));
  });
  run("encrypt", [&] {
    out.push_back(expect("encrypt", "210212002210210000", edes_encrypt(z3(kKey), z3(kMsg)).to_string()));
  });
  run("decrypt", [&] {
    out.push_back(expect("decrypt", kMsg, edes_decrypt(z3(kKey), z3("210212002210210000")).to_string()));
  });

  run("trace", [&] {
    const auto t = edes_trace(z3(kKey), z3(kMsg));
    const std::pair<const char*, std::string> fields[] = {
        {"m1", "121020110102200221"}, {"m2", "102200221"},       {"m3", "110220022002211"},
        {"k1", "120002201111211"},    {"m4", "200222220110122"}, {"m5", "202012211"},
        {"m7", "020002021"},          {"e1", "102200221020002021"}, {"e3", "102000200020210"},
        {"k2", "011010121202202"},    {"e4", "110010021222112"}, {"e5", "002022212"},
        {"e7", "101222100"},          {"e8", "101222100020002021"}, {"c", "210212002210210000"}};
    const auto j = trace_to_json(t);
    for (const auto& [name, want] : fields)
      out.push_back(expect(std::string("trace ") + name, want, j.at(name).get<std::string>()));
    const char* outs1[] = {"202", "012", "211"};
    const char* outs2[] = {"002", "022", "212"};
    for (int b = 0; b < 3; ++b) {
      out.push_back(expect("trace round 1 box " + std::to_string(b + 1), outs1[b],
                           t.round1[b].output.to_string()));
      out.push_back(expect("trace round 2 box " + std::to_string(b + 1), outs2[b],
                           t.round2[b].output.to_string()));
    }
  });
  return out;
}

const std::vector<OrbitPairRow>& published_orbit_pairs() {
  static const std::vector<OrbitPairRow> rows = {
      {2, 31, 37, "1147"},
      {3, 2526, 1739, "4392714"},
      {5, 8350, 46728, "195089400"},
      {7, 1377440, 3014559, "4152374148960"},
      {11, 106572673, 19064231, "2031726056359463"}};
  return rows;
}

std::vector<Check> orbit_pair_checks() {
  std::vector<Check> out;
  for (const auto& row : published_orbit_pairs()) {
    OrbitResult a, b;
    a.length = row.orb1;
    b.length = row.orb2;
    const auto rep = closure_verdict({a, b}, big_pow(row.n, 8));
    const std::string name = "Z" + std::to_string(row.n) + " lcm(" + std::to_string(row.orb1) +
                             "," + std::to_string(row.orb2) + ") > " + std::to_string(row.n) + "^8";
    Check c{name, to_string(rep.lcm) == row.lcm && rep.refuted, ""};
    if (!c.passed)
      c.detail = "lcm " + to_string(rep.lcm) + " vs expected " + row.lcm + ", verdict " + rep.verdict();
    out.push_back(c);
  }
  return out;
}

const std::vector<std::uint64_t>& published_subgroup_orbits() {
  static const std::vector<std::uint64_t> v = {134282729, 216589023, 201375970,
                                               62909599,  201375970, 134282729,
                                               18939453,  68600442,  134282729};
  return v;
}

}  // namespace gdes
