#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace podcong {

// Unbounded signed integer. Coefficient growth in exact-domain series and the
// p^(18a+17) style indices both overflow any fixed width quickly, so every
// "exact" quantity in this library goes through Int.
using Int = boost::multiprecision::cpp_int;

inline std::string to_string(const Int& v) { return v.str(); }

// Floor of |v| does not fit: callers must know v >= 0 and v <= 2^64-1.
inline std::uint64_t to_u64(const Int& v) {
  return static_cast<std::uint64_t>(v);
}

// v mod m mapped to the canonical range [0, m).
inline std::uint64_t canonical_residue(const Int& v, std::uint64_t m) {
  Int r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

Int int_pow(Int base, std::uint64_t exp);

// Sum base^0 + base^1 + ... + base^(terms-1), built by iterated addition so
// the result is exact for every integer base including base = 1 and base < 0.
Int geometric_power_sum(const Int& base, std::uint64_t terms);

}  // namespace podcong
