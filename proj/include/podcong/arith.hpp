#pragma once

#include "podcong/domain.hpp"
#include "podcong/integer.hpp"
#include "podcong/series.hpp"

#include <cstdint>
#include <vector>

namespace podcong {

bool is_prime_u64(std::uint64_t n);

// Sum of the positive divisors of n; rejects n == 0.
std::uint64_t sigma_divisors(std::uint64_t n);

// Count of ways to write n as an ordered sum of k triangular numbers
// (triangular numbers include 0), by direct enumeration.
Int t_enum(int k, std::uint64_t n);

// Count of lattice points x in Z^k with |x|^2 = n, by direct enumeration
// over signed coordinates.
Int r_enum(int k, std::uint64_t n);

// t_4(n) = sigma(2n+1): representations by four triangular numbers.
std::uint64_t t4_closed(std::uint64_t n);

// t_8(n) = sum of cubes of (n+1)/d over odd divisors d of n+1. Returned as
// Int because the cube of n+1 leaves uint64 range early.
Int t8_closed(std::uint64_t n);

// Full table of t_k(0..limit) or r_k(0..limit) computed through k-th powers
// of the psi / theta series, optionally in a residue domain.
struct CountTable {
  enum class Kind { Triangular, Squares };
  Kind kind;
  int k;
  TruncatedSeries values;

  Int at(std::size_t n) const { return values.coeff(n); }
};

CountTable tk_table(int k, std::size_t limit,
                    CoefficientDomain domain = CoefficientDomain::exact(), std::size_t jobs = 1);
CountTable rk_table(int k, std::size_t limit,
                    CoefficientDomain domain = CoefficientDomain::exact(), std::size_t jobs = 1);

// Legendre symbol (a | p) in {-1, 0, 1} for odd prime p, by Euler's
// criterion; rejects p that is not an odd prime.
int legendre_symbol(const Int& a, std::uint64_t p);

// Multiplier identities for sums of squares at scaled arguments. Both return
// the exact count at the scaled argument from counts at the base argument;
// the internal geometric factors are built by iterated addition, never by
// dividing power differences.
//
// r_5(p^{2a} n) from r_5(n), valid when p is an odd prime not dividing n to
// the second power (p^2 | n is rejected; p | n is fine).
Int r5_scaled(std::uint64_t p, std::uint64_t alpha, const Int& n, const Int& r5_n);

// r_3(p^{2a} n) from r_3(n) and r_3(n / p^2); pass r3_n_over_p2 = 0 when
// p^2 does not divide n.
Int r3_scaled(std::uint64_t p, std::uint64_t alpha, const Int& n, const Int& r3_n,
              const Int& r3_n_over_p2);

}  // namespace podcong
