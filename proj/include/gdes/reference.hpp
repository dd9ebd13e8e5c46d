#pragma once

#include <string>
#include <vector>

#include "gdes/bigint.hpp"

namespace gdes {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;  // expected vs. actual on failure
};

/// Worked-example values for the E-DES preset (wires, rounds, boxes, full trace).
std::vector<Check> edes_reference_checks();

/// Published orbit-length pairs and their lcm against |G|^8.
struct OrbitPairRow {
  unsigned n;
  std::uint64_t orb1, orb2;
  const char* lcm;
};
const std::vector<OrbitPairRow>& published_orbit_pairs();
std::vector<Check> orbit_pair_checks();

/// The nine published subgroup-probe orbit lengths.
const std::vector<std::uint64_t>& published_subgroup_orbits();

}  // namespace gdes
