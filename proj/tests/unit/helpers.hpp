#pragma once

#include <string>
#include <vector>

#include "gdes/cycling.hpp"
#include "gdes/permnet.hpp"
#include "gdes/rng.hpp"

namespace testing {

using namespace gdes;

inline Word z3(const std::string& s) { return parse_word(s, GroupSpec::cyclic(3), s.size()); }

/// Unkeyed table rounds, identity P, empty key.
inline CipherSpec table_spec(const GroupSpec& g, std::size_t t, const std::vector<FunctionTable>& fns,
                             bool swap, WireMap p = {}) {
  CipherSpec::Params params;
  params.group = g;
  params.half_width = t;
  params.rounds = fns.size();
  params.initial_perm = p.out_length() ? p : WireMap::identity(2 * t);
  params.key_length = 0;
  params.key_schedule.assign(fns.size(), WireMap(0, {}));
  for (const auto& f : fns) params.round_fns.emplace_back(f, false);
  params.final_swap = swap;
  return CipherSpec(std::move(params));
}

/// Keyed random table rounds: T_r(R + K_r), key of 2t nits split between two rounds.
inline CipherSpec keyed_table_spec(const GroupSpec& g, std::size_t t, std::uint64_t seed) {
  Rng rng(seed);
  const std::uint64_t n = space_size_u64(g, t);
  CipherSpec::Params params;
  params.group = g;
  params.half_width = t;
  params.rounds = 2;
  std::vector<std::uint32_t> p(2 * t);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<std::uint32_t>(i + 1);
  rng.shuffle(p);
  params.initial_perm = WireMap(2 * t, p);
  params.key_length = 2 * t;
  std::vector<std::uint32_t> a, b;
  for (std::size_t i = 0; i < t; ++i) {
    a.push_back(static_cast<std::uint32_t>(i + 1));
    b.push_back(static_cast<std::uint32_t>(t + i + 1));
  }
  params.key_schedule = {WireMap(2 * t, a), WireMap(2 * t, b)};
  for (int r = 0; r < 2; ++r) {
    std::vector<std::uint64_t> img(n);
    for (auto& v : img) v = rng.below(n);
    params.round_fns.emplace_back(FunctionTable(g, t, img), true);
  }
  params.final_swap = true;
  return CipherSpec(std::move(params));
}

}  // namespace testing
