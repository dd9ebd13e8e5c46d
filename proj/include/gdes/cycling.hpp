#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gdes/bigint.hpp"
#include "gdes/fast_cipher.hpp"
#include "gdes/permnet.hpp"
#include "gdes/rng.hpp"

namespace gdes {

inline constexpr std::uint64_t kDefaultMaxSteps = std::uint64_t{1} << 32;
inline constexpr std::uint64_t kCheckpointInterval = 10'000'000;

/// One factor T_k or T_k^-1 of a composed permutation.
struct Factor {
  Word key;
  bool inverse = false;
};

/**
 * A product of cipher permutations, factors[0] applied first. Uses the packed
 * engine when the spec allows it and dense message integers otherwise.
 * States are opaque; enter/leave convert from and to messages.
 */
class Permutation {
 public:
  /// allow_fast=false forces the generic path (used to cross-check the engine).
  Permutation(const CipherSpec& spec, std::vector<Factor> factors, bool allow_fast = true);

  bool fast() const { return fast_ != nullptr; }
  std::uint64_t enter(const Word& m) const;
  Word leave(std::uint64_t s) const;

  std::uint64_t step(std::uint64_t s) const {
    if (fast_) {
      for (std::size_t i = 0; i < keys_.size(); ++i)
        s = inverse_[i] ? fast_->backward(keys_[i], s) : fast_->forward(keys_[i], s);
      return s;
    }
    return generic_step(s);
  }

  const CipherSpec& spec() const { return *spec_; }
  const std::vector<Factor>& factors() const { return factors_; }
  const FastCipher* engine() const { return fast_.get(); }

 private:
  std::uint64_t generic_step(std::uint64_t s) const;

  const CipherSpec* spec_;
  std::vector<Factor> factors_;
  std::shared_ptr<const FastCipher> fast_;
  std::vector<FastCipher::Key> keys_;
  std::vector<bool> inverse_;
};

struct OrbitResult {
  BigInt start;                  // message integer
  std::vector<std::string> keys; // factor keys as integers, "-" prefix for inverses
  std::uint64_t length = 0;      // meaningful only when !truncated
  std::uint64_t steps_taken = 0;
  bool truncated = false;
  double wall_time = 0;
};

struct OrbitOptions {
  std::string checkpoint_path;  // empty: no checkpoints
  bool resume = false;
  std::uint64_t checkpoint_interval = kCheckpointInterval;
};

/// Iterates s <- perm(s) from m until it returns to m or max_steps is reached.
OrbitResult orbit_of(const Permutation& perm, const Word& m, std::uint64_t max_steps,
                     const OrbitOptions& opts = {});

OrbitResult orbit_length(const CipherSpec& spec, const Word& k, const Word& m,
                         std::uint64_t max_steps = kDefaultMaxSteps,
                         const OrbitOptions& opts = {});

/// Orbit of m under T_{k_ref}^-1 . T_k.
OrbitResult purity_probe(const CipherSpec& spec, const Word& k_ref, const Word& k, const Word& m,
                         std::uint64_t max_steps = kDefaultMaxSteps);

struct ExperimentReport {
  std::vector<OrbitResult> probes;
  BigInt lcm = 1;       // over completed probes
  BigInt threshold;     // the bound the verdict compares against
  BigInt key_space;     // |K|, echoed for reference
  bool refuted = false; // lcm > threshold and nothing truncated
  std::string verdict() const { return refuted ? "refuted" : "inconclusive"; }
};

/// Aggregates finished probes; the verdict rule lives here.
ExperimentReport closure_verdict(std::vector<OrbitResult> probes, const BigInt& threshold);

struct Probe {
  Word key;
  Word message;
};

/// Runs each probe on a pool of `threads` workers (0: hardware concurrency).
ExperimentReport closure_refute(const CipherSpec& spec, const std::vector<Probe>& probes,
                                std::uint64_t max_steps = kDefaultMaxSteps,
                                std::optional<BigInt> threshold = std::nullopt,
                                unsigned threads = 0);

struct PurityProbe {
  Word ref_key;
  Word key;
  Word message;
};

ExperimentReport purity_refute(const CipherSpec& spec, const std::vector<PurityProbe>& probes,
                               std::uint64_t max_steps = kDefaultMaxSteps, unsigned threads = 0);

/// A word in the generators: (generator index, inverse) pairs, first applied first.
using GeneratorWord = std::vector<std::pair<std::size_t, bool>>;

struct SubgroupProbe {
  GeneratorWord word;
  Word message;
};

/// The lcm of completed orbit lengths divides the order of the generated group.
ExperimentReport subgroup_lower_bound(const CipherSpec& spec, const std::vector<Word>& generators,
                                      const std::vector<SubgroupProbe>& probes,
                                      std::uint64_t max_steps = kDefaultMaxSteps,
                                      std::optional<BigInt> threshold = std::nullopt,
                                      unsigned threads = 0);

struct WalkReport {
  std::uint64_t seed = 0;
  BigInt start;
  std::uint64_t tail = 0;
  std::uint64_t cycle = 0;
  std::uint64_t steps = 0;
  bool truncated = false;
  BigInt estimate;   // (tail + cycle)^2
  BigInt key_space;
};

/// x_{i+1} = T_{h(x_i)}(x_i), h(x) = mix64(enc(x) + mix64(seed)) mod |K|, Brent detection.
WalkReport random_walk_closure(const CipherSpec& spec, std::uint64_t seed,
                               std::uint64_t max_steps = kDefaultMaxSteps);

/// The walk's key choice for a message, exposed for replay checks.
Word walk_key(const CipherSpec& spec, std::uint64_t seed, const Word& x);

struct RandomCipherShape {
  std::size_t t = 4;
  std::size_t rounds = 2;
  std::size_t key_length = 10;
  std::size_t i = 2;
  std::size_t j = 2;
};

/// GDES with seeded random P, expansion, key compressions and row-surjective boxes.
CipherSpec random_sbox_cipher(const GroupSpec& group, std::uint64_t seed,
                              const RandomCipherShape& shape = {});

Word random_word(const GroupSpec& group, std::size_t length, Rng& rng);

/// Calls task(i) for i in [0, n) on up to `threads` workers; 0 means hardware concurrency.
void run_parallel(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& task);

}  // namespace gdes
