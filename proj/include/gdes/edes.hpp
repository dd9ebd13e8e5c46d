#pragma once

#include <json.hpp>
#include <vector>

#include "gdes/permnet.hpp"

namespace gdes {

/// The built-in two-round Z3 preset: 18-nit blocks, 20-nit keys, three 9x27 boxes.
const CipherSpec& edes_spec();

Word edes_encrypt(const Word& key, const Word& m);
Word edes_decrypt(const Word& key, const Word& c);

/**
 * Every intermediate of one E-DES encryption. Round 1 works on m1 = P(m),
 * round 2 on e1 = (m2, m7). Names follow the usual worked-example labels.
 */
struct EdesTrace {
  Word key, m;
  Word m1;  // P(m)
  Word m2;  // right half of m1
  Word m3;  // E(m2)
  Word k1;  // CP1(key)
  Word m4;  // m3 + k1
  std::vector<SBoxSelection> round1;
  Word m5;  // f(m2, k1)
  Word m6;  // left half of m1
  Word m7;  // m6 + m5
  Word e1;  // (m2, m7)
  Word e2;  // right half of e1
  Word e3;  // E(e2)
  Word k2;  // CP2(key)
  Word e4;  // e3 + k2
  std::vector<SBoxSelection> round2;
  Word e5;  // f(e2, k2)
  Word e6;  // left half of e1
  Word e7;  // e6 + e5
  Word e8;  // (e7, e2), the swapped output
  Word c;   // P^-1(e8)
};

EdesTrace edes_trace(const Word& key, const Word& m);

nlohmann::json trace_to_json(const EdesTrace& t);

}  // namespace gdes
