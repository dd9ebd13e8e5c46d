#include "gdes/edes.hpp"

#include "gdes/spec_io.hpp"

namespace gdes::detail {
extern const char* const kEdesPresetJson;
}

namespace gdes {

const CipherSpec& edes_spec() {
  static const CipherSpec spec = spec_from_json(nlohmann::json::parse(detail::kEdesPresetJson));
  return spec;
}

Word edes_encrypt(const Word& key, const Word& m) { return gdes_encrypt(edes_spec(), key, m); }
Word edes_decrypt(const Word& key, const Word& c) { return gdes_decrypt(edes_spec(), key, c); }

EdesTrace edes_trace(const Word& key, const Word& m) {
  const CipherSpec& spec = edes_spec();
  spec.check_key(key);
  spec.check_block(m);
  const SBoxRoundSpec& rf = *spec.round_fn(0).sbox();

  EdesTrace t;
  t.key = key;
  t.m = m;
  t.m1 = wiremap_apply(spec.initial_perm(), m);
  auto [left, right] = split_halves(t.m1);
  t.m6 = left;
  t.m2 = right;
  const auto sk = spec.subkeys(key);
  t.k1 = sk[0];
  auto r1 = round_function_trace(rf, t.m2, t.k1);
  t.m3 = r1.expanded;
  t.m4 = r1.mixed;
  t.round1 = r1.selections;
  t.m5 = r1.output;
  t.m7 = word_add(t.m6, t.m5);
  t.e1 = concat(t.m2, t.m7);

  t.e6 = t.m2;
  t.e2 = t.m7;
  t.k2 = sk[1];
  auto r2 = round_function_trace(rf, t.e2, t.k2);
  t.e3 = r2.expanded;
  t.e4 = r2.mixed;
  t.round2 = r2.selections;
  t.e5 = r2.output;
  t.e7 = word_add(t.e6, t.e5);
  t.e8 = concat(t.e7, t.e2);
  t.c = wiremap_apply(spec.final_perm(), t.e8);
  return t;
}

nlohmann::json trace_to_json(const EdesTrace& t) {
  using nlohmann::json;
  auto sel = [](const std::vector<SBoxSelection>& v) {
    json arr = json::array();
    for (std::size_t b = 0; b < v.size(); ++b)
      arr.push_back({{"box", b + 1},
                     {"row", v[b].row},
                     {"column", v[b].column},
                     {"entry", v[b].entry},
                     {"output", v[b].output.to_string()}});
    return arr;
  };
  return json{{"key", t.key.to_string()}, {"m", t.m.to_string()},
              {"m1", t.m1.to_string()},   {"m2", t.m2.to_string()},
              {"m3", t.m3.to_string()},   {"k1", t.k1.to_string()},
              {"m4", t.m4.to_string()},   {"sboxes1", sel(t.round1)},
              {"m5", t.m5.to_string()},   {"m6", t.m6.to_string()},
              {"m7", t.m7.to_string()},   {"e1", t.e1.to_string()},
              {"e2", t.e2.to_string()},   {"e3", t.e3.to_string()},
              {"k2", t.k2.to_string()},   {"e4", t.e4.to_string()},
              {"sboxes2", sel(t.round2)}, {"e5", t.e5.to_string()},
              {"e6", t.e6.to_string()},   {"e7", t.e7.to_string()},
              {"e8", t.e8.to_string()},   {"c", t.c.to_string()}};
}

}  // namespace gdes
