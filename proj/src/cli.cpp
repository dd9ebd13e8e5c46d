#include "gdes/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>

#include "gdes/cycling.hpp"
#include "gdes/edes.hpp"
#include "gdes/error.hpp"
#include "gdes/reference.hpp"
#include "gdes/smallgroup.hpp"
#include "gdes/spec_io.hpp"

namespace gdes {

namespace {

using nlohmann::json;

struct SpecOpts {
  std::string path;
  std::string preset;
  unsigned random_group = 0;
  std::uint64_t spec_seed = 1;

  void add(CLI::App* cmd) {
    cmd->add_option("--spec", path, "Cipher spec JSON file");
    cmd->add_option("--preset", preset, "Built-in spec (edes)");
    cmd->add_option("--random-gdes", random_group,
                    "Use a seeded random two-round GDES over Z_n with t=4 instead");
    cmd->add_option("--spec-seed", spec_seed, "Seed for --random-gdes");
  }

  CipherSpec load() const {
    if (random_group) return random_sbox_cipher(GroupSpec::cyclic(random_group), spec_seed);
    if (!path.empty()) return load_spec(path);
    return preset_spec(preset.empty() ? "edes" : preset);
  }

  bool is_edes() const { return !random_group && path.empty() && (preset.empty() || preset == "edes"); }
};

/// A word given either as nit text or as an integer.
struct WordOpt {
  std::string text, integer;

  void add(CLI::App* cmd, const std::string& name, const std::string& text_flag,
           const std::string& int_flag) {
    cmd->add_option(text_flag, text, name + " as nits");
    cmd->add_option(int_flag, integer, name + " as an integer");
  }
  bool given() const { return !text.empty() || !integer.empty(); }
  Word get(const GroupSpec& g, std::size_t len, const std::string& what) const {
    if (!text.empty() && !integer.empty()) throw Error(what + ": give either nits or an integer");
    if (!text.empty()) return parse_word(text, g, len);
    if (!integer.empty()) return int_to_word(parse_bigint(integer), g, len);
    throw Error(what + " is required");
  }
};

std::string int_of(const Word& w) { return to_string(word_to_int(w)); }

json orbit_json(const OrbitResult& r) {
  json j{{"m", to_string(r.start)},
         {"k", r.keys.size() == 1 ? json(r.keys[0]) : json(r.keys)},
         {"steps", r.steps_taken},
         {"truncated", r.truncated},
         {"seconds", r.wall_time}};
  j["orb"] = r.truncated ? json(nullptr) : json(r.length);
  return j;
}

json report_json(const ExperimentReport& rep) {
  json probes = json::array();
  for (const auto& p : rep.probes) probes.push_back(orbit_json(p));
  return {{"probes", probes},
          {"lcm", to_string(rep.lcm)},
          {"threshold", to_string(rep.threshold)},
          {"key_space", to_string(rep.key_space)},
          {"verdict", rep.verdict()}};
}

void emit(std::ostream& out, const json& j, const std::string& format) {
  if (format != "csv") {
    out << j.dump(2) << '\n';
    return;
  }
  // Probe table first, then scalar summary fields as key,value rows.
  if (j.contains("probes")) {
    out << "m,k,orb,steps,truncated\n";
    for (const auto& p : j["probes"]) {
      std::string k = p["k"].is_array() ? "" : p["k"].get<std::string>();
      if (p["k"].is_array())
        for (const auto& x : p["k"]) k += (k.empty() ? "" : " ") + x.get<std::string>();
      out << p["m"].get<std::string>() << ',' << k << ','
          << (p["orb"].is_null() ? std::string() : p["orb"].dump()) << ',' << p["steps"] << ','
          << (p["truncated"].get<bool>() ? "true" : "false") << '\n';
    }
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "probes" || it.value().is_structured()) continue;
    out << it.key() << ',' << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
        << '\n';
  }
}

// Published purity row: m, encryption key, decryption key, orbit length.
constexpr const char* kPurityMsg = "67681038";
constexpr const char* kPurityKey = "22933471";
constexpr const char* kPurityRef = "1402043471";
constexpr std::uint64_t kPurityOrb = 12802413;

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"DES-like Feistel ciphers over finite abelian groups"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  // encrypt / decrypt
  SpecOpts enc_spec, dec_spec;
  WordOpt enc_key, enc_in, dec_key, dec_in;
  bool enc_as_int = false, dec_as_int = false;
  auto* enc = app.add_subcommand("encrypt", "Encrypt one block");
  enc_spec.add(enc);
  enc_key.add(enc, "key", "--key", "--key-int");
  enc_in.add(enc, "plaintext", "--in", "--int");
  enc->add_flag("--as-int", enc_as_int, "Print the ciphertext as an integer");
  auto* dec = app.add_subcommand("decrypt", "Decrypt one block");
  dec_spec.add(dec);
  dec_key.add(dec, "key", "--key", "--key-int");
  dec_in.add(dec, "ciphertext", "--in", "--int");
  dec->add_flag("--as-int", dec_as_int, "Print the plaintext as an integer");

  // trace
  WordOpt tr_key, tr_in;
  auto* tr = app.add_subcommand("trace", "Full E-DES intermediate values as JSON");
  tr_key.add(tr, "key", "--key", "--key-int");
  tr_in.add(tr, "plaintext", "--in", "--int");

  // orbit
  SpecOpts orb_spec;
  WordOpt orb_key, orb_msg;
  std::uint64_t orb_max = kDefaultMaxSteps;
  std::string orb_ckpt;
  bool orb_resume = false;
  std::optional<std::uint64_t> orb_expect;
  auto* orb = app.add_subcommand("orbit", "Length of the cycle of T_k through m");
  orb_spec.add(orb);
  orb_key.add(orb, "key", "--key", "--key-int");
  orb_msg.add(orb, "message", "--msg", "--msg-int");
  orb->add_option("--max-steps", orb_max)->capture_default_str();
  orb->add_option("--checkpoint", orb_ckpt, "Sidecar file written every 10^7 steps");
  orb->add_flag("--resume", orb_resume, "Continue from --checkpoint if present");
  orb->add_option("--expect", orb_expect, "Reference orbit length to compare against");

  // closure
  SpecOpts cl_spec;
  unsigned cl_probes = 2, cl_threads = 0;
  std::uint64_t cl_seed = 1, cl_max = kDefaultMaxSteps;
  std::optional<unsigned> cl_exp;
  auto* cl = app.add_subcommand("closure", "Cycling closure test with random probes");
  cl_spec.add(cl);
  cl->add_option("--probes", cl_probes)->capture_default_str();
  cl->add_option("--seed", cl_seed)->capture_default_str();
  cl->add_option("--max-steps", cl_max)->capture_default_str();
  cl->add_option("--threads", cl_threads, "Workers (0: all cores)");
  cl->add_option("--threshold-exp", cl_exp, "Compare against |G|^e instead of |K|");

  // purity
  SpecOpts pu_spec;
  WordOpt pu_ref, pu_key, pu_msg;
  unsigned pu_probes = 0, pu_threads = 0;
  std::uint64_t pu_seed = 1, pu_max = kDefaultMaxSteps;
  auto* pu = app.add_subcommand("purity", "Orbits of T_ref^-1 T_k (one probe or --probes N random)");
  pu_spec.add(pu);
  pu_ref.add(pu, "reference key", "--ref-key", "--ref-key-int");
  pu_key.add(pu, "key", "--key", "--key-int");
  pu_msg.add(pu, "message", "--msg", "--msg-int");
  pu->add_option("--probes", pu_probes, "Random probes instead of the given triple");
  pu->add_option("--seed", pu_seed)->capture_default_str();
  pu->add_option("--max-steps", pu_max)->capture_default_str();
  pu->add_option("--threads", pu_threads);

  // walk
  SpecOpts wk_spec;
  std::uint64_t wk_seed = 1, wk_max = kDefaultMaxSteps;
  auto* wk = app.add_subcommand("walk", "Pseudorandom key walk with Brent cycle detection");
  wk_spec.add(wk);
  wk->add_option("--seed", wk_seed)->capture_default_str();
  wk->add_option("--max-steps", wk_max)->capture_default_str();

  // subgroup
  SpecOpts sg_spec;
  std::vector<std::string> sg_gens;
  unsigned sg_probes = 9, sg_threads = 0, sg_len = 3;
  std::uint64_t sg_seed = 1, sg_max = kDefaultMaxSteps;
  std::optional<unsigned> sg_fact;
  auto* sg = app.add_subcommand("subgroup", "Lower bound on the order of <T_k1, T_k2, ...>");
  sg_spec.add(sg);
  sg->add_option("--gen-keys", sg_gens, "Generator keys as integers")->delimiter(',');
  sg->add_option("--probes", sg_probes)->capture_default_str();
  sg->add_option("--word-length", sg_len, "Maximum factors per probe word")->capture_default_str();
  sg->add_option("--seed", sg_seed)->capture_default_str();
  sg->add_option("--max-steps", sg_max)->capture_default_str();
  sg->add_option("--threads", sg_threads);
  sg->add_option("--factorial", sg_fact, "Compare the bound against F!");

  // sign
  SpecOpts sn_spec;
  WordOpt sn_key;
  unsigned sn_keys = 0;
  std::uint64_t sn_seed = 1;
  auto* sn = app.add_subcommand("sign", "Parity of T_k over the whole message space");
  sn_spec.add(sn);
  sn_key.add(sn, "key", "--key", "--key-int");
  sn->add_option("--keys", sn_keys, "Random keys instead of --key");
  sn->add_option("--seed", sn_seed)->capture_default_str();

  // brute
  unsigned br_group = 2, br_rounds = 6;
  std::size_t br_t = 1;
  bool br_swap = false, br_tie = false;
  auto* br = app.add_subcommand("brute", "Exhaustive Feistel-set census on a tiny domain");
  br->add_option("--group", br_group, "Modulus n of Z_n")->capture_default_str();
  br->add_option("--t", br_t, "Half width")->capture_default_str();
  br->add_option("--n-rounds", br_rounds, "Largest round count")->capture_default_str();
  br->add_flag("--swap", br_swap, "Append the final swap (GDES sets)");
  br->add_flag("--tie-ends", br_tie, "Force f_n = f_1");

  // sbox-gen
  unsigned sbg_group = 3;
  std::size_t sbg_i = 2, sbg_j = 3;
  std::uint64_t sbg_seed = 1;
  bool sbg_surj = false;
  auto* sbg = app.add_subcommand("sbox-gen", "Random S-box as JSON");
  sbg->add_option("--group", sbg_group)->capture_default_str();
  sbg->add_option("--i", sbg_i)->capture_default_str();
  sbg->add_option("--j", sbg_j)->capture_default_str();
  sbg->add_option("--seed", sbg_seed)->capture_default_str();
  sbg->add_flag("--row-surjective", sbg_surj);

  // sbox-audit
  SpecOpts sba_spec;
  std::optional<std::size_t> sba_box;
  auto* sba = app.add_subcommand("sbox-audit", "Affineness and row-surjectivity of S-boxes");
  sba_spec.add(sba);
  sba->add_option("--box", sba_box, "1-based box index (default: all)");

  // sbox-expand
  SpecOpts sbe_spec;
  unsigned sbe_to = 9, sbe_mult = 3;
  auto* sbe = app.add_subcommand("sbox-expand", "Spec over Z_m with every S-box grown via x -> a*x");
  sbe_spec.add(sbe);
  sbe->add_option("--to", sbe_to, "Target modulus")->capture_default_str();
  sbe->add_option("--multiplier", sbe_mult, "Embedding multiplier")->capture_default_str();

  auto* vp = app.add_subcommand("verify-paper", "Check the built-in reference values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (enc->parsed() || dec->parsed()) {
      const bool is_enc = enc->parsed();
      const SpecOpts& so = is_enc ? enc_spec : dec_spec;
      const CipherSpec spec = so.load();
      const Word k = (is_enc ? enc_key : dec_key).get(spec.group(), spec.key_length(), "key");
      const Word m = (is_enc ? enc_in : dec_in).get(spec.group(), spec.block_length(), "block");
      const Word c = is_enc ? gdes_encrypt(spec, k, m) : gdes_decrypt(spec, k, m);
      out << ((is_enc ? enc_as_int : dec_as_int) ? int_of(c) : c.to_string()) << '\n';
      return 0;
    }

    if (tr->parsed()) {
      const CipherSpec& spec = edes_spec();
      const Word k = tr_key.given() ? tr_key.get(spec.group(), spec.key_length(), "key")
                                    : parse_word("11012012122012012110", spec.group(), 20);
      const Word m = tr_in.given() ? tr_in.get(spec.group(), spec.block_length(), "block")
                                   : parse_word("012012012012012012", spec.group(), 18);
      out << trace_to_json(edes_trace(k, m)).dump(2) << '\n';
      return 0;
    }

    if (orb->parsed()) {
      const CipherSpec spec = orb_spec.load();
      const Word k = orb_key.get(spec.group(), spec.key_length(), "key");
      const Word m = orb_msg.get(spec.group(), spec.block_length(), "message");
      OrbitOptions opts;
      opts.checkpoint_path = orb_ckpt;
      opts.resume = orb_resume;
      const auto r = orbit_length(spec, k, m, orb_max, opts);
      json j = orbit_json(r);
      if (!orb_expect && orb_spec.is_edes() && int_of(k) == kPurityKey && int_of(m) == kPurityMsg)
        orb_expect = kPurityOrb;
      if (orb_expect) {
        j["expected"] = *orb_expect;
        j["matches"] = !r.truncated && r.length == *orb_expect;
      }
      j["result"] = r.truncated ? "inconclusive" : "complete";
      emit(out, j, format);
      return 0;
    }

    if (cl->parsed()) {
      const CipherSpec spec = cl_spec.load();
      Rng rng(cl_seed);
      std::vector<Probe> probes;
      for (unsigned i = 0; i < cl_probes; ++i) {
        Word k = random_word(spec.group(), spec.key_length(), rng);
        probes.push_back({std::move(k), random_word(spec.group(), spec.block_length(), rng)});
      }
      std::optional<BigInt> thr;
      if (cl_exp) thr = big_pow(spec.group().order(), *cl_exp);
      json j = report_json(closure_refute(spec, probes, cl_max, thr, cl_threads));
      j["seed"] = cl_seed;
      j["group"] = spec.group().to_string();
      emit(out, j, format);
      return 0;
    }

    if (pu->parsed()) {
      const CipherSpec spec = pu_spec.load();
      std::vector<PurityProbe> probes;
      if (pu_probes > 0) {
        Rng rng(pu_seed);
        for (unsigned i = 0; i < pu_probes; ++i) {
          Word r = random_word(spec.group(), spec.key_length(), rng);
          Word k = random_word(spec.group(), spec.key_length(), rng);
          probes.push_back({std::move(r), std::move(k), random_word(spec.group(), spec.block_length(), rng)});
        }
      } else {
        probes.push_back({pu_ref.get(spec.group(), spec.key_length(), "reference key"),
                          pu_key.get(spec.group(), spec.key_length(), "key"),
                          pu_msg.get(spec.group(), spec.block_length(), "message")});
      }
      const auto rep = purity_refute(spec, probes, pu_max, pu_threads);
      json j = report_json(rep);
      j["seed"] = pu_seed;
      if (pu_spec.is_edes() && probes.size() == 1 && int_of(probes[0].message) == kPurityMsg &&
          int_of(probes[0].key) == kPurityKey && int_of(probes[0].ref_key) == kPurityRef) {
        j["expected"] = kPurityOrb;
        j["matches"] = !rep.probes[0].truncated && rep.probes[0].length == kPurityOrb;
      }
      emit(out, j, format);
      return 0;
    }

    if (wk->parsed()) {
      const CipherSpec spec = wk_spec.load();
      const auto r = random_walk_closure(spec, wk_seed, wk_max);
      json j{{"seed", r.seed},         {"start", to_string(r.start)},
             {"steps", r.steps},       {"truncated", r.truncated},
             {"key_space", to_string(r.key_space)}};
      if (!r.truncated) {
        j["tail"] = r.tail;
        j["cycle"] = r.cycle;
        j["estimate"] = to_string(r.estimate);
        j["estimate_exceeds_key_space"] = r.estimate > r.key_space;
      }
      emit(out, j, format);
      return 0;
    }

    if (sg->parsed()) {
      const CipherSpec spec = sg_spec.load();
      if (sg_gens.empty()) {
        if (!sg_spec.is_edes()) throw Error("--gen-keys is required for this spec");
        sg_gens = {"0", "1402043471"};
      }
      std::vector<Word> gens;
      for (const auto& g : sg_gens)
        gens.push_back(int_to_word(parse_bigint(g), spec.group(), spec.key_length()));
      if (sg_len == 0) throw Error("--word-length must be positive");
      Rng rng(sg_seed);
      std::vector<SubgroupProbe> probes;
      for (unsigned i = 0; i < sg_probes; ++i) {
        GeneratorWord w;
        const std::size_t len = 1 + rng.below(sg_len);
        for (std::size_t f = 0; f < len; ++f) w.push_back({rng.below(gens.size()), rng.below(2) == 1});
        probes.push_back({std::move(w), random_word(spec.group(), spec.block_length(), rng)});
      }
      std::optional<BigInt> thr;
      if (sg_fact) thr = factorial(*sg_fact);
      const auto rep = subgroup_lower_bound(spec, gens, probes, sg_max, thr, sg_threads);
      json j = report_json(rep);
      j["bound"] = to_string(rep.lcm);
      j["seed"] = sg_seed;
      for (std::size_t i = 0; i < probes.size(); ++i) {
        std::string word;
        for (auto [g, inv] : probes[i].word)
          word += (word.empty() ? "" : " ") + std::string(inv ? "-" : "") + "T" + std::to_string(g);
        j["probes"][i]["word"] = word;
      }
      emit(out, j, format);
      return 0;
    }

    if (sn->parsed()) {
      const CipherSpec spec = sn_spec.load();
      std::vector<Word> keys;
      if (sn_keys > 0) {
        Rng rng(sn_seed);
        for (unsigned i = 0; i < sn_keys; ++i) keys.push_back(random_word(spec.group(), spec.key_length(), rng));
      } else {
        keys.push_back(sn_key.get(spec.group(), spec.key_length(), "key"));
      }
      json rows = json::array();
      unsigned odd = 0;
      for (const auto& k : keys) {
        const auto s = streaming_sign(spec, k);
        odd += s.sign < 0;
        rows.push_back({{"k", int_of(k)}, {"sign", s.sign}, {"cycles", s.cycles},
                        {"states", s.states}, {"seconds", s.wall_time}});
      }
      emit(out, json{{"keys", rows}, {"odd", odd}, {"even", keys.size() - odd}}, format);
      return 0;
    }

    if (br->parsed()) {
      const GroupSpec g = GroupSpec::cyclic(br_group);
      const auto X = injective_tables(g, br_t);
      json rows = json::array();
      for (unsigned n = 1; n <= br_rounds; ++n) {
        const PermSet S = enumerate_feistel_set(g, br_t, X, n, br_swap, br_tie);
        const auto cl_res = closure_check(S);
        json row{{"rounds", n},
                 {"size", S.size()},
                 {"contains_identity", contains_identity(S)},
                 {"closed", cl_res.closed}};
        if (cl_res.witness) row["witness"] = {cl_res.witness->first, cl_res.witness->second};
        if (S.size() <= 300) {
          const auto p = purity_check(S);
          row["pure"] = p.pure;
          row["lemma_agrees"] = p.lemma_agrees;
        }
        const auto order = generated_order(S);
        row["generated_order"] = order ? json(*order) : json("exceeds cap");
        unsigned even = 0;
        for (const auto& p : S.items()) even += perm_sign(p) > 0;
        row["even"] = even;
        row["odd"] = S.size() - even;
        rows.push_back(row);
      }
      out << json{{"group", g.to_string()}, {"t", br_t}, {"swap", br_swap},
                  {"tie_ends", br_tie}, {"X", X.size()}, {"sets", rows}}
                 .dump(2)
          << '\n';
      return 0;
    }

    if (sbg->parsed()) {
      const GroupSpec g = GroupSpec::cyclic(sbg_group);
      const SBox box = sbox_generate(g, sbg_i, sbg_j, sbg_seed, sbg_surj);
      out << json{{"group", {{"moduli", {sbg_group}}}},
                  {"i", sbg_i},
                  {"j", sbg_j},
                  {"seed", sbg_seed},
                  {"entries", std::vector<std::uint32_t>(box.entries().begin(), box.entries().end())}}
                 .dump()
          << '\n';
      return 0;
    }

    if (sba->parsed()) {
      const CipherSpec spec = sba_spec.load();
      json boxes = json::array();
      for (std::size_t r = 0; r < std::max<std::size_t>(1, spec.round_fns().size()); ++r) {
        const SBoxRoundSpec* sb = spec.round_fn(r).sbox();
        if (!sb) throw Error("spec has no S-boxes");
        for (std::size_t b = 0; b < sb->boxes().size(); ++b) {
          if (sba_box && *sba_box != b + 1) continue;
          const auto a = sbox_audit(sb->boxes()[b]);
          json rows = json::array();
          for (const auto& row : a.rows)
            if (!row.surjective)
              rows.push_back({{"row", row.row}, {"missing", row.missing}, {"duplicated", row.duplicated}});
          json jb{{"box", b + 1}, {"affine", a.affine}, {"rows_surjective", a.rows_surjective()},
                  {"violating_rows", rows}};
          if (a.affine_witness) jb["affine_witness"] = {a.affine_witness->first, a.affine_witness->second};
          boxes.push_back(jb);
        }
        if (spec.round_fns().size() <= 1) break;
      }
      out << boxes.dump(2) << '\n';
      return 0;
    }

    if (sbe->parsed()) {
      const CipherSpec spec = sbe_spec.load();
      if (!spec.group().is_cyclic()) throw Error("sbox-expand needs a cyclic group");
      const auto emb = GroupEmbedding::scaling(spec.group().order(), sbe_to, sbe_mult);
      out << spec_to_json(expand_cipher(spec, emb)).dump() << '\n';
      return 0;
    }

    if (vp->parsed()) {
      auto checks = edes_reference_checks();
      for (auto& c : orbit_pair_checks()) checks.push_back(std::move(c));
      unsigned failed = 0;
      if (format == "json") {
        json arr = json::array();
        for (const auto& c : checks) {
          failed += !c.passed;
          arr.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        }
        out << json{{"checks", arr}, {"failed", failed}}.dump(2) << '\n';
      } else {
        out << "check,passed,detail\n";
        for (const auto& c : checks) {
          failed += !c.passed;
          out << c.name << ',' << (c.passed ? "true" : "false") << ',' << c.detail << '\n';
        }
      }
      return failed ? 1 : 0;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what();
    if (e.position()) err << " (position " << e.position() << ")";
    err << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace gdes
