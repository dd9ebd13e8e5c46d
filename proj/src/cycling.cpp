#include "gdes/cycling.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <json.hpp>
#include <thread>

#include "gdes/error.hpp"

namespace gdes {

Permutation::Permutation(const CipherSpec& spec, std::vector<Factor> factors, bool allow_fast)
    : spec_(&spec), factors_(std::move(factors)) {
  for (const auto& f : factors_) spec.check_key(f.key);
  if (allow_fast && FastCipher::supports(spec)) {
    fast_ = std::make_shared<const FastCipher>(spec);
    for (const auto& f : factors_) {
      keys_.push_back(fast_->compile(f.key));
      inverse_.push_back(f.inverse);
    }
  } else {
    space_size_u64(spec.group(), spec.block_length());  // throws if states do not fit
  }
}

std::uint64_t Permutation::enter(const Word& m) const {
  return fast_ ? fast_->enter(m) : (spec_->check_block(m), word_to_u64(m));
}

Word Permutation::leave(std::uint64_t s) const {
  return fast_ ? fast_->leave(s) : u64_to_word(s, spec_->group(), spec_->block_length());
}

std::uint64_t Permutation::generic_step(std::uint64_t s) const {
  Word w = u64_to_word(s, spec_->group(), spec_->block_length());
  for (const auto& f : factors_)
    w = f.inverse ? gdes_decrypt(*spec_, f.key, w) : gdes_encrypt(*spec_, f.key, w);
  return word_to_u64(w);
}

namespace {

std::vector<std::string> factor_names(const Permutation& perm) {
  std::vector<std::string> out;
  for (const auto& f : perm.factors())
    out.push_back((f.inverse ? "-" : "") + to_string(word_to_int(f.key)));
  return out;
}

void write_checkpoint(const std::string& path, const OrbitResult& r, const BigInt& current) {
  nlohmann::json j{{"start", to_string(r.start)},
                   {"current", to_string(current)},
                   {"steps", r.steps_taken},
                   {"keys", r.keys}};
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write checkpoint '" + tmp + "'");
    out << j.dump() << '\n';
  }
  std::rename(tmp.c_str(), path.c_str());
}

}  // namespace

OrbitResult orbit_of(const Permutation& perm, const Word& m, std::uint64_t max_steps,
                     const OrbitOptions& opts) {
  if (max_steps == 0) throw RangeError("max_steps must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  OrbitResult r;
  r.start = word_to_int(m);
  r.keys = factor_names(perm);

  const std::uint64_t start = perm.enter(m);
  std::uint64_t cur = start;
  std::uint64_t steps = 0;
  const auto& group = perm.spec().group();
  const std::size_t len = perm.spec().block_length();

  if (opts.resume && !opts.checkpoint_path.empty()) {
    std::ifstream in(opts.checkpoint_path);
    if (in) {
      nlohmann::json j = nlohmann::json::parse(in);
      if (j.at("start").get<std::string>() != to_string(r.start) ||
          j.at("keys").get<std::vector<std::string>>() != r.keys)
        throw Error("checkpoint '" + opts.checkpoint_path + "' belongs to a different probe");
      steps = j.at("steps").get<std::uint64_t>();
      cur = perm.enter(int_to_word(parse_bigint(j.at("current").get<std::string>()), group, len));
    }
  }

  const bool checkpoints = !opts.checkpoint_path.empty() && opts.checkpoint_interval > 0;
  bool closed = steps > 0 && cur == start;
  while (!closed && steps < max_steps) {
    std::uint64_t stop = max_steps;
    if (checkpoints) stop = std::min(stop, (steps / opts.checkpoint_interval + 1) * opts.checkpoint_interval);
    while (steps < stop) {
      cur = perm.step(cur);
      ++steps;
      if (cur == start) {
        closed = true;
        break;
      }
    }
    if (checkpoints && !closed) {
      r.steps_taken = steps;
      write_checkpoint(opts.checkpoint_path, r, word_to_int(perm.leave(cur)));
    }
  }
  r.steps_taken = steps;
  r.truncated = !closed;
  r.length = closed ? steps : 0;
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (checkpoints && closed) std::remove(opts.checkpoint_path.c_str());
  return r;
}

OrbitResult orbit_length(const CipherSpec& spec, const Word& k, const Word& m,
                         std::uint64_t max_steps, const OrbitOptions& opts) {
  return orbit_of(Permutation(spec, {{k, false}}), m, max_steps, opts);
}

OrbitResult purity_probe(const CipherSpec& spec, const Word& k_ref, const Word& k, const Word& m,
                         std::uint64_t max_steps) {
  return orbit_of(Permutation(spec, {{k, false}, {k_ref, true}}), m, max_steps);
}

ExperimentReport closure_verdict(std::vector<OrbitResult> probes, const BigInt& threshold) {
  ExperimentReport rep;
  rep.threshold = threshold;
  rep.key_space = threshold;
  bool any_truncated = probes.empty();
  for (const auto& p : probes) {
    if (p.truncated)
      any_truncated = true;
    else
      rep.lcm = big_lcm(rep.lcm, BigInt(p.length));
  }
  rep.refuted = !any_truncated && rep.lcm > threshold;
  rep.probes = std::move(probes);
  return rep;
}

namespace {

ExperimentReport run_probes(const CipherSpec& spec,
                            const std::vector<std::pair<std::vector<Factor>, Word>>& jobs,
                            std::uint64_t max_steps, const BigInt& threshold, unsigned threads) {
  std::vector<OrbitResult> results(jobs.size());
  run_parallel(jobs.size(), threads, [&](std::size_t i) {
    results[i] = orbit_of(Permutation(spec, jobs[i].first), jobs[i].second, max_steps);
  });
  auto rep = closure_verdict(std::move(results), threshold);
  rep.key_space = spec.key_space_size();
  return rep;
}

}  // namespace

ExperimentReport closure_refute(const CipherSpec& spec, const std::vector<Probe>& probes,
                                std::uint64_t max_steps, std::optional<BigInt> threshold,
                                unsigned threads) {
  if (probes.empty()) throw RangeError("closure_refute needs at least one probe");
  std::vector<std::pair<std::vector<Factor>, Word>> jobs;
  for (const auto& p : probes) jobs.push_back({{{p.key, false}}, p.message});
  return run_probes(spec, jobs, max_steps, threshold.value_or(spec.key_space_size()), threads);
}

ExperimentReport purity_refute(const CipherSpec& spec, const std::vector<PurityProbe>& probes,
                               std::uint64_t max_steps, unsigned threads) {
  if (probes.empty()) throw RangeError("purity_refute needs at least one probe");
  std::vector<std::pair<std::vector<Factor>, Word>> jobs;
  for (const auto& p : probes) jobs.push_back({{{p.key, false}, {p.ref_key, true}}, p.message});
  return run_probes(spec, jobs, max_steps, spec.key_space_size(), threads);
}

ExperimentReport subgroup_lower_bound(const CipherSpec& spec, const std::vector<Word>& generators,
                                      const std::vector<SubgroupProbe>& probes,
                                      std::uint64_t max_steps, std::optional<BigInt> threshold,
                                      unsigned threads) {
  if (probes.empty()) throw RangeError("subgroup_lower_bound needs at least one probe");
  std::vector<std::pair<std::vector<Factor>, Word>> jobs;
  for (const auto& p : probes) {
    std::vector<Factor> fs;
    for (auto [g, inv] : p.word) {
      if (g >= generators.size())
        throw RangeError("generator index " + std::to_string(g) + " out of range");
      fs.push_back({generators[g], inv});
    }
    jobs.push_back({std::move(fs), p.message});
  }
  return run_probes(spec, jobs, max_steps, threshold.value_or(spec.key_space_size()), threads);
}

Word random_word(const GroupSpec& group, std::size_t length, Rng& rng) {
  std::vector<std::uint32_t> nits(length);
  for (auto& n : nits) n = static_cast<std::uint32_t>(rng.below(group.order()));
  return Word(group, std::move(nits));
}

Word walk_key(const CipherSpec& spec, std::uint64_t seed, const Word& x) {
  const std::uint64_t h = mix64(word_to_u64(x) + mix64(seed));
  const BigInt ks = spec.key_space_size();
  if (ks <= BigInt(UINT64_MAX))
    return u64_to_word(h % static_cast<std::uint64_t>(ks), spec.group(), spec.key_length());
  Rng rng(h);
  return random_word(spec.group(), spec.key_length(), rng);
}

WalkReport random_walk_closure(const CipherSpec& spec, std::uint64_t seed,
                               std::uint64_t max_steps) {
  if (max_steps == 0) throw RangeError("max_steps must be at least 1");
  const auto& g = spec.group();
  const std::size_t len = spec.block_length();
  space_size_u64(g, len);
  auto f = [&](std::uint64_t x) {
    const Word w = u64_to_word(x, g, len);
    return word_to_u64(gdes_encrypt(spec, walk_key(spec, seed, w), w));
  };

  Rng rng(seed);
  const Word start = random_word(g, len, rng);
  WalkReport rep;
  rep.seed = seed;
  rep.start = word_to_int(start);
  rep.key_space = spec.key_space_size();
  const std::uint64_t x0 = word_to_u64(start);

  // Brent: find the cycle length with a power-of-two teleporting tortoise.
  std::uint64_t power = 1, lam = 1, tortoise = x0, hare = f(x0), steps = 1;
  while (tortoise != hare) {
    if (steps >= max_steps) {
      rep.steps = steps;
      rep.truncated = true;
      return rep;
    }
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = f(hare);
    ++lam;
    ++steps;
  }
  // Tail: a second pointer lam steps ahead meets the first at the cycle entry.
  tortoise = hare = x0;
  for (std::uint64_t i = 0; i < lam; ++i) hare = f(hare);
  std::uint64_t mu = 0;
  while (tortoise != hare) {
    tortoise = f(tortoise);
    hare = f(hare);
    ++mu;
  }
  rep.steps = steps;
  rep.cycle = lam;
  rep.tail = mu;
  rep.estimate = BigInt(mu + lam) * BigInt(mu + lam);
  return rep;
}

CipherSpec random_sbox_cipher(const GroupSpec& group, std::uint64_t seed,
                              const RandomCipherShape& shape) {
  const std::size_t block = shape.i + shape.j;
  if (shape.t % shape.j != 0) throw DimensionError("t must be a multiple of j");
  const std::size_t n_boxes = shape.t / shape.j;
  const std::size_t sub = block * n_boxes;
  if (sub > shape.key_length) throw DimensionError("subkey longer than the key");
  if (sub < shape.t) throw DimensionError("expansion must reach every half nit");
  Rng rng(seed);

  std::vector<std::uint32_t> p(2 * shape.t);
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = static_cast<std::uint32_t>(k + 1);
  rng.shuffle(p);

  std::vector<std::uint32_t> e;
  for (std::size_t k = 0; k < shape.t; ++k) e.push_back(static_cast<std::uint32_t>(k + 1));
  while (e.size() < sub) e.push_back(static_cast<std::uint32_t>(rng.below(shape.t) + 1));
  rng.shuffle(e);

  CipherSpec::Params params;
  params.group = group;
  params.half_width = shape.t;
  params.rounds = shape.rounds;
  params.key_length = shape.key_length;
  params.initial_perm = WireMap(2 * shape.t, p);
  params.final_swap = true;
  for (std::size_t r = 0; r < shape.rounds; ++r) {
    std::vector<std::uint32_t> all(shape.key_length);
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<std::uint32_t>(k + 1);
    rng.shuffle(all);
    all.resize(sub);
    params.key_schedule.emplace_back(shape.key_length, all);
  }
  std::vector<SBox> boxes;
  for (std::size_t b = 0; b < n_boxes; ++b)
    boxes.push_back(sbox_generate(group, shape.i, shape.j, rng.next(), true));
  params.round_fns.emplace_back(SBoxRoundSpec(std::move(boxes), WireMap(shape.t, e)));
  return CipherSpec(std::move(params));
}

void run_parallel(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace gdes
