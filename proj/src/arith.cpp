#include "podcong/arith.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace podcong {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 powmod_u64(u64 base, u64 exp, u64 m) {
  u64 acc = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) acc = static_cast<u64>(u128(acc) * base % m);
    exp >>= 1;
    base = static_cast<u64>(u128(base) * base % m);
  }
  return acc;
}

void require_odd_prime(u64 p, const char* who) {
  if (p == 2 || !is_prime_u64(p)) {
    throw std::invalid_argument(std::string(who) + ": p = " + std::to_string(p) +
                                " is not an odd prime");
  }
}

void require_count_k(int k, const char* who) {
  if (k < 1 || k > 8) {
    throw std::invalid_argument(std::string(who) + ": k must be in [1, 8], got " +
                                std::to_string(k));
  }
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (u64 d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

u64 sigma_divisors(u64 n) {
  if (n == 0) throw std::invalid_argument("sigma_divisors: argument must be positive");
  u64 total = 0;
  for (u64 d = 1; d <= n / d; ++d) {
    if (n % d != 0) continue;
    total += d;
    const u64 other = n / d;
    if (other != d) total += other;
  }
  return total;
}

Int t_enum(int k, u64 n) {
  require_count_k(k, "t_enum");
  std::vector<u64> tris;
  for (u64 t = 0; t * (t + 1) / 2 <= n; ++t) tris.push_back(t * (t + 1) / 2);
  std::vector<Int> dp(n + 1, Int(0));
  dp[0] = 1;
  for (int step = 0; step < k; ++step) {
    std::vector<Int> next(n + 1, Int(0));
    for (u64 tri : tris) {
      for (u64 m = tri; m <= n; ++m) next[m] += dp[m - tri];
    }
    dp = std::move(next);
  }
  return dp[n];
}

Int r_enum(int k, u64 n) {
  require_count_k(k, "r_enum");
  std::vector<Int> dp(n + 1, Int(0));
  dp[0] = 1;
  for (int step = 0; step < k; ++step) {
    std::vector<Int> next(n + 1, Int(0));
    for (u64 m = 0; m <= n; ++m) next[m] = dp[m];  // coordinate value 0
    for (u64 j = 1; j * j <= n; ++j) {
      const u64 sq = j * j;
      for (u64 m = sq; m <= n; ++m) next[m] += 2 * dp[m - sq];  // +-j
    }
    dp = std::move(next);
  }
  return dp[n];
}

u64 t4_closed(u64 n) { return sigma_divisors(2 * n + 1); }

Int t8_closed(u64 n) {
  const u64 v = n + 1;
  Int total = 0;
  for (u64 d = 1; d <= v / d; ++d) {
    if (v % d != 0) continue;
    const u64 other = v / d;
    if (d % 2 == 1) {
      Int q(other);
      total += q * q * q;
    }
    if (other != d && other % 2 == 1) {
      Int q(d);
      total += q * q * q;
    }
  }
  return total;
}

CountTable tk_table(int k, std::size_t limit, CoefficientDomain domain, std::size_t jobs) {
  require_count_k(k, "tk_table");
  TruncatedSeries base = psi_series(limit, domain);
  return CountTable{CountTable::Kind::Triangular, k, pow(base, static_cast<u64>(k), jobs)};
}

CountTable rk_table(int k, std::size_t limit, CoefficientDomain domain, std::size_t jobs) {
  require_count_k(k, "rk_table");
  TruncatedSeries base = square_theta_series(limit, domain);
  return CountTable{CountTable::Kind::Squares, k, pow(base, static_cast<u64>(k), jobs)};
}

int legendre_symbol(const Int& a, u64 p) {
  require_odd_prime(p, "legendre_symbol");
  const u64 a0 = canonical_residue(a, p);
  if (a0 == 0) return 0;
  const u64 r = powmod_u64(a0, (p - 1) / 2, p);
  if (r == 1) return 1;
  if (r == p - 1) return -1;
  throw std::logic_error("legendre_symbol: Euler criterion returned " + std::to_string(r) +
                         " for p = " + std::to_string(p));
}

Int r5_scaled(u64 p, u64 alpha, const Int& n, const Int& r5_n) {
  require_odd_prime(p, "r5_scaled");
  if (n <= 0) throw std::invalid_argument("r5_scaled: n must be positive");
  if (n % (Int(p) * p) == 0) {
    throw std::invalid_argument("r5_scaled: p^2 divides n (p = " + std::to_string(p) + ")");
  }
  const Int p3 = Int(p) * p * p;
  const Int lead = geometric_power_sum(p3, alpha + 1);
  const Int tail = geometric_power_sum(p3, alpha);
  const int chi = legendre_symbol(n, p);
  return (lead - Int(p) * chi * tail) * r5_n;
}

Int r3_scaled(u64 p, u64 alpha, const Int& n, const Int& r3_n, const Int& r3_n_over_p2) {
  require_odd_prime(p, "r3_scaled");
  if (n <= 0) throw std::invalid_argument("r3_scaled: n must be positive");
  const Int lead = geometric_power_sum(Int(p), alpha + 1);
  const Int tail = geometric_power_sum(Int(p), alpha);
  const int chi = legendre_symbol(-n, p);
  return (lead - chi * tail) * r3_n - Int(p) * tail * r3_n_over_p2;
}

}  // namespace podcong
