#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <string>

namespace gdes {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return a / boost::multiprecision::gcd(a, b) * b;
}

inline BigInt lcm_of(std::span<const std::uint64_t> values) {
  BigInt acc = 1;
  for (auto v : values) acc = big_lcm(acc, BigInt(v));
  return acc;
}

inline BigInt big_pow(std::uint64_t base, std::size_t exp) {
  BigInt r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

inline BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline std::string to_string(const BigInt& v) { return v.str(); }

/// Parses a non-negative decimal integer; throws ParseError (via caller) on junk.
BigInt parse_bigint(const std::string& text);

}  // namespace gdes
