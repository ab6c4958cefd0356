#include "podcong/series.hpp"

#include "podcong/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace podcong {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

// Modular inverse by the extended Euclid iteration; requires gcd(a, m) == 1.
u64 inv_mod(u64 a, u64 m) {
  std::int64_t t = 0, new_t = 1;
  u64 r = m, new_r = a % m;
  while (new_r != 0) {
    u64 q = r / new_r;
    std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * new_t;
    t = new_t;
    new_t = tmp_t;
    u64 tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) {
    throw std::invalid_argument("inverse: value " + std::to_string(a) +
                                " is not a unit mod " + std::to_string(m));
  }
  std::int64_t res = t % static_cast<std::int64_t>(m);
  if (res < 0) res += static_cast<std::int64_t>(m);
  return static_cast<u64>(res);
}

// Residues below 2^32 allow raw uint64 accumulation of products; this is the
// number of terms that fit before a reduction is forced.
u64 lazy_term_cap(u64 m) {
  const u64 t = m - 1;
  if (t >> 32) return 0;  // wide residues: reduce every term through u128
  const u64 t2 = t * t;
  if (t2 == 0) return std::numeric_limits<u64>::max();
  return (std::numeric_limits<u64>::max() - t) / t2;
}

template <typename T>
std::vector<std::pair<std::size_t, T>> nonzeros(const std::vector<T>& c, std::size_t from,
                                                std::size_t upto) {
  std::vector<std::pair<std::size_t, T>> out;
  for (std::size_t j = from; j <= upto && j < c.size(); ++j) {
    if (c[j] != 0) out.emplace_back(j, c[j]);
  }
  return out;
}

void require_same_domain(const TruncatedSeries& a, const TruncatedSeries& b, const char* op) {
  if (!(a.domain() == b.domain())) {
    throw std::invalid_argument(std::string(op) + ": operand domains differ (" +
                                describe(a.domain()) + " vs " + describe(b.domain()) + ")");
  }
}

// out[n] = sum over nz pairs (j, v) with j <= n of v * other[n - j], for all
// n in [0, order]. The modular version keeps sums raw as long as the term
// cap allows and reduces once per coefficient.
void convolve_mod(const std::vector<std::pair<std::size_t, u64>>& nz,
                  const std::vector<u64>& other, std::vector<u64>& out, std::size_t order,
                  u64 m, std::size_t jobs) {
  const u64 cap = lazy_term_cap(m);
  parallel_for(0, order + 1, jobs, [&](std::size_t lo, std::size_t hi) {
    if (cap == 0) {
      for (std::size_t n = lo; n < hi; ++n) {
        u64 acc = 0;
        for (const auto& [j, v] : nz) {
          if (j > n) break;
          acc = (acc + mulmod_u64(v, other[n - j], m)) % m;
        }
        out[n] = acc;
      }
      return;
    }
    for (std::size_t n = lo; n < hi; ++n) {
      u64 acc = 0, cnt = 0;
      for (const auto& [j, v] : nz) {
        if (j > n) break;
        acc += v * other[n - j];
        if (++cnt == cap) {
          acc %= m;
          cnt = 0;
        }
      }
      out[n] = acc % m;
    }
  });
}

void convolve_exact(const std::vector<std::pair<std::size_t, Int>>& nz,
                    const std::vector<Int>& other, std::vector<Int>& out, std::size_t order,
                    std::size_t jobs) {
  parallel_for(0, order + 1, jobs, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t n = lo; n < hi; ++n) {
      Int acc = 0;
      for (const auto& [j, v] : nz) {
        if (j > n) break;
        acc += v * other[n - j];
      }
      out[n] = std::move(acc);
    }
  });
}

std::size_t count_nonzeros_upto(const TruncatedSeries& s, std::size_t upto) {
  std::size_t cnt = 0;
  if (s.domain().is_exact()) {
    const auto& c = s.exact_coeffs();
    for (std::size_t j = 0; j <= upto; ++j) cnt += (c[j] != 0);
  } else {
    const auto& c = s.mod_coeffs();
    for (std::size_t j = 0; j <= upto; ++j) cnt += (c[j] != 0);
  }
  return cnt;
}

// Product over k >= 1 of the signed pentagonal expansion of (q^a; q^a)_inf:
// coefficient (-1)^k at exponents a*k(3k-1)/2 and a*k(3k+1)/2.
TruncatedSeries pentagonal_expansion(std::size_t a, std::size_t order, CoefficientDomain domain) {
  TruncatedSeries c(domain, order);
  c.set_coeff(0, 1);
  for (std::size_t k = 1;; ++k) {
    const std::size_t g = k * (3 * k - 1) / 2;
    if (a > order / g) break;  // a * g > order, overflow-safe
    const std::size_t e1 = a * g;
    if (e1 > order) break;
    const Int sgn = (k % 2 == 1) ? Int(-1) : Int(1);
    c.set_coeff(e1, sgn);
    const std::size_t e2 = e1 + a * k;
    if (e2 <= order) c.set_coeff(e2, sgn);
  }
  return c;
}

}  // namespace

TruncatedSeries::TruncatedSeries(CoefficientDomain domain, std::size_t order)
    : domain_(domain), order_(order) {
  if (domain_.is_exact()) {
    coeffs_ = ExactCoeffs(order + 1, Int(0));
  } else {
    coeffs_ = ModCoeffs(order + 1, 0);
  }
}

TruncatedSeries TruncatedSeries::one(CoefficientDomain domain, std::size_t order) {
  TruncatedSeries s(domain, order);
  s.set_coeff(0, 1);
  return s;
}

TruncatedSeries TruncatedSeries::monomial(CoefficientDomain domain, std::size_t order,
                                          std::size_t exponent, const Int& value) {
  if (exponent > order) {
    throw std::invalid_argument("monomial: exponent " + std::to_string(exponent) +
                                " exceeds order " + std::to_string(order));
  }
  TruncatedSeries s(domain, order);
  s.set_coeff(exponent, value);
  return s;
}

TruncatedSeries TruncatedSeries::from_exact(ExactCoeffs coeffs) {
  if (coeffs.empty()) {
    throw std::invalid_argument("from_exact: need at least the constant coefficient");
  }
  TruncatedSeries s(CoefficientDomain::exact(), coeffs.size() - 1);
  s.coeffs_ = std::move(coeffs);
  return s;
}

Int TruncatedSeries::coeff(std::size_t n) const {
  if (n > order_) {
    throw std::out_of_range("coeff: index " + std::to_string(n) + " exceeds order " +
                            std::to_string(order_));
  }
  if (domain_.is_exact()) return std::get<ExactCoeffs>(coeffs_)[n];
  return Int(std::get<ModCoeffs>(coeffs_)[n]);
}

std::uint64_t TruncatedSeries::residue(std::size_t n) const {
  if (domain_.is_exact()) {
    throw std::invalid_argument("residue: series is in the exact domain");
  }
  if (n > order_) {
    throw std::out_of_range("residue: index " + std::to_string(n) + " exceeds order " +
                            std::to_string(order_));
  }
  return std::get<ModCoeffs>(coeffs_)[n];
}

void TruncatedSeries::set_coeff(std::size_t n, const Int& v) {
  if (n > order_) {
    throw std::out_of_range("set_coeff: index " + std::to_string(n) + " exceeds order " +
                            std::to_string(order_));
  }
  if (domain_.is_exact()) {
    std::get<ExactCoeffs>(coeffs_)[n] = v;
  } else {
    std::get<ModCoeffs>(coeffs_)[n] = canonical_residue(v, domain_.modulus);
  }
}

const TruncatedSeries::ExactCoeffs& TruncatedSeries::exact_coeffs() const {
  if (!domain_.is_exact()) {
    throw std::invalid_argument("exact_coeffs: series is in domain " + describe(domain_));
  }
  return std::get<ExactCoeffs>(coeffs_);
}

const TruncatedSeries::ModCoeffs& TruncatedSeries::mod_coeffs() const {
  if (domain_.is_exact()) {
    throw std::invalid_argument("mod_coeffs: series is in the exact domain");
  }
  return std::get<ModCoeffs>(coeffs_);
}

TruncatedSeries::ExactCoeffs& TruncatedSeries::exact_coeffs() {
  if (!domain_.is_exact()) {
    throw std::invalid_argument("exact_coeffs: series is in domain " + describe(domain_));
  }
  return std::get<ExactCoeffs>(coeffs_);
}

TruncatedSeries::ModCoeffs& TruncatedSeries::mod_coeffs() {
  if (domain_.is_exact()) {
    throw std::invalid_argument("mod_coeffs: series is in the exact domain");
  }
  return std::get<ModCoeffs>(coeffs_);
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_domain(a, b, "add");
  const std::size_t order = std::min(a.order(), b.order());
  TruncatedSeries out(a.domain(), order);
  if (a.domain().is_exact()) {
    for (std::size_t n = 0; n <= order; ++n) {
      out.exact_coeffs()[n] = a.exact_coeffs()[n] + b.exact_coeffs()[n];
    }
  } else {
    const u64 m = a.domain().modulus;
    for (std::size_t n = 0; n <= order; ++n) {
      out.mod_coeffs()[n] = (a.mod_coeffs()[n] + b.mod_coeffs()[n]) % m;
    }
  }
  return out;
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_domain(a, b, "sub");
  const std::size_t order = std::min(a.order(), b.order());
  TruncatedSeries out(a.domain(), order);
  if (a.domain().is_exact()) {
    for (std::size_t n = 0; n <= order; ++n) {
      out.exact_coeffs()[n] = a.exact_coeffs()[n] - b.exact_coeffs()[n];
    }
  } else {
    const u64 m = a.domain().modulus;
    for (std::size_t n = 0; n <= order; ++n) {
      out.mod_coeffs()[n] = (a.mod_coeffs()[n] + m - b.mod_coeffs()[n]) % m;
    }
  }
  return out;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b, std::size_t jobs) {
  require_same_domain(a, b, "mul");
  const std::size_t order = std::min(a.order(), b.order());
  // Gather from the sparser operand so products against theta, psi or
  // pentagonal series cost O(order * sqrt(order)) instead of O(order^2).
  const bool a_sparser = count_nonzeros_upto(a, order) <= count_nonzeros_upto(b, order);
  const TruncatedSeries& s = a_sparser ? a : b;
  const TruncatedSeries& d = a_sparser ? b : a;
  TruncatedSeries out(a.domain(), order);
  if (a.domain().is_exact()) {
    const auto nz = nonzeros(s.exact_coeffs(), 0, order);
    convolve_exact(nz, d.exact_coeffs(), out.exact_coeffs(), order, jobs);
  } else {
    const auto nz = nonzeros(s.mod_coeffs(), 0, order);
    convolve_mod(nz, d.mod_coeffs(), out.mod_coeffs(), order, a.domain().modulus, jobs);
  }
  return out;
}

TruncatedSeries pow(const TruncatedSeries& a, std::uint64_t k, std::size_t jobs) {
  if (k == 0) return TruncatedSeries::one(a.domain(), a.order());
  if (k == 1) return a;
  // For a sparse base, multiplying the accumulator by the base k-1 times
  // keeps one operand sparse in every product and beats binary squaring,
  // which densifies after the first step. Both orderings give identical
  // coefficients; this only picks the cheaper schedule.
  const std::size_t n1 = a.order() + 1;
  const double nnz = static_cast<double>(count_nonzeros_upto(a, a.order()));
  const double log2k = std::log2(static_cast<double>(k));
  const bool iterate = nnz * static_cast<double>(k - 1) <= 0.9 * log2k * static_cast<double>(n1);
  if (iterate) {
    TruncatedSeries acc = a;
    for (std::uint64_t i = 1; i < k; ++i) acc = mul(acc, a, jobs);
    return acc;
  }
  TruncatedSeries base = a;
  TruncatedSeries acc = TruncatedSeries::one(a.domain(), a.order());
  std::uint64_t e = k;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base, jobs);
    e >>= 1;
    if (e > 0) base = mul(base, base, jobs);
  }
  return acc;
}

namespace {

// Shared recurrence for inverse and divide. With den = d0 + tail,
// out[n] = d0^{-1} (num[n] - sum_{j in tail, j <= n} den[j] out[n-j]).
// The tail is gathered from its nonzero entries, so a sparse denominator
// (psi, pentagonal, theta) costs O(order * #nonzeros).
TruncatedSeries divide_impl(const TruncatedSeries* num, const TruncatedSeries& den,
                            std::size_t order, const char* op) {
  TruncatedSeries out(den.domain(), order);
  if (den.domain().is_exact()) {
    const auto& d = den.exact_coeffs();
    if (d[0] != 1 && d[0] != -1) {
      throw std::invalid_argument(std::string(op) +
                                  ": exact-domain constant term must be +1 or -1, got " +
                                  to_string(d[0]));
    }
    const bool unit_pos = d[0] == 1;
    const auto nz = nonzeros(d, 1, order);
    auto& b = out.exact_coeffs();
    for (std::size_t n = 0; n <= order; ++n) {
      Int acc = 0;
      for (const auto& [j, v] : nz) {
        if (j > n) break;
        acc += v * b[n - j];
      }
      Int numerator = num ? num->exact_coeffs()[n] : Int(n == 0 ? 1 : 0);
      b[n] = unit_pos ? numerator - acc : acc - numerator;
    }
    return out;
  }
  const u64 m = den.domain().modulus;
  const auto& d = den.mod_coeffs();
  if (gcd_u64(d[0], m) != 1) {
    throw std::invalid_argument(std::string(op) + ": constant term " + std::to_string(d[0]) +
                                " is not a unit mod " + std::to_string(m));
  }
  const u64 inv0 = inv_mod(d[0], m);
  const auto nz = nonzeros(d, 1, order);
  const u64 cap = lazy_term_cap(m);
  auto& b = out.mod_coeffs();
  const bool narrow = cap > 0;
  for (std::size_t n = 0; n <= order; ++n) {
    u64 s;
    if (narrow) {
      u64 acc = 0, cnt = 0;
      for (const auto& [j, v] : nz) {
        if (j > n) break;
        acc += v * b[n - j];
        if (++cnt == cap) {
          acc %= m;
          cnt = 0;
        }
      }
      s = acc % m;
    } else {
      u64 acc = 0;
      for (const auto& [j, v] : nz) {
        if (j > n) break;
        acc = (acc + mulmod_u64(v, b[n - j], m)) % m;
      }
      s = acc;
    }
    const u64 numerator = num ? num->mod_coeffs()[n] : (n == 0 ? u64(1) : u64(0));
    const u64 diff = (numerator + m - s) % m;
    b[n] = narrow && ((m - 1) >> 32) == 0 ? (inv0 * diff) % m : mulmod_u64(inv0, diff, m);
  }
  return out;
}

}  // namespace

TruncatedSeries inverse(const TruncatedSeries& a) {
  return divide_impl(nullptr, a, a.order(), "inverse");
}

TruncatedSeries divide(const TruncatedSeries& num, const TruncatedSeries& den) {
  require_same_domain(num, den, "divide");
  return divide_impl(&num, den, std::min(num.order(), den.order()), "divide");
}

TruncatedSeries dissect(const TruncatedSeries& a, std::size_t r, std::size_t s) {
  if (s == 0 || r >= s) {
    throw std::invalid_argument("dissect: need 0 <= r < s, got r=" + std::to_string(r) +
                                " s=" + std::to_string(s));
  }
  if (r > a.order()) {
    throw std::invalid_argument("dissect: offset " + std::to_string(r) +
                                " exceeds series order " + std::to_string(a.order()));
  }
  const std::size_t order = (a.order() - r) / s;
  TruncatedSeries out(a.domain(), order);
  if (a.domain().is_exact()) {
    for (std::size_t n = 0; n <= order; ++n) out.exact_coeffs()[n] = a.exact_coeffs()[s * n + r];
  } else {
    for (std::size_t n = 0; n <= order; ++n) out.mod_coeffs()[n] = a.mod_coeffs()[s * n + r];
  }
  return out;
}

TruncatedSeries inflate(const TruncatedSeries& a, std::size_t s,
                        std::optional<std::size_t> max_order) {
  if (s == 0) throw std::invalid_argument("inflate: stride s must be >= 1");
  const std::size_t limit = std::numeric_limits<std::size_t>::max();
  const bool overflows = a.order() != 0 && s > limit / a.order();
  if (overflows && !max_order) {
    throw std::invalid_argument("inflate: result order overflows; pass max_order");
  }
  std::size_t order = overflows ? *max_order : a.order() * s;
  if (max_order && *max_order < order) order = *max_order;
  TruncatedSeries out(a.domain(), order);
  if (a.domain().is_exact()) {
    for (std::size_t n = 0; n * s <= order && n <= a.order(); ++n) {
      out.exact_coeffs()[n * s] = a.exact_coeffs()[n];
    }
  } else {
    for (std::size_t n = 0; n * s <= order && n <= a.order(); ++n) {
      out.mod_coeffs()[n * s] = a.mod_coeffs()[n];
    }
  }
  return out;
}

TruncatedSeries alternate_signs(const TruncatedSeries& a) {
  TruncatedSeries out = a;
  if (a.domain().is_exact()) {
    auto& c = out.exact_coeffs();
    for (std::size_t n = 1; n <= a.order(); n += 2) c[n] = -c[n];
  } else {
    const u64 m = a.domain().modulus;
    auto& c = out.mod_coeffs();
    for (std::size_t n = 1; n <= a.order(); n += 2) {
      if (c[n] != 0) c[n] = m - c[n];
    }
  }
  return out;
}

namespace detail {

TruncatedSeries pochhammer_generic(std::size_t a, std::size_t b, std::size_t order,
                                   CoefficientDomain domain, bool negated) {
  if (a == 0 || b == 0) {
    throw std::invalid_argument("pochhammer_inf: exponent parameters a and b must be >= 1");
  }
  TruncatedSeries c = TruncatedSeries::one(domain, order);
  if (domain.is_exact()) {
    auto& v = c.exact_coeffs();
    for (std::size_t j = a; j <= order; j += b) {
      for (std::size_t n = order; n >= j; --n) {
        if (negated) {
          v[n] += v[n - j];
        } else {
          v[n] -= v[n - j];
        }
        if (n == j) break;
      }
    }
  } else {
    const u64 m = domain.modulus;
    auto& v = c.mod_coeffs();
    for (std::size_t j = a; j <= order; j += b) {
      for (std::size_t n = order; n >= j; --n) {
        v[n] = negated ? (v[n] + v[n - j]) % m : (v[n] + m - v[n - j]) % m;
        if (n == j) break;
      }
    }
  }
  return c;
}

}  // namespace detail

TruncatedSeries pochhammer_inf(std::size_t a, std::size_t b, std::size_t order,
                               CoefficientDomain domain, bool negated) {
  if (a == 0 || b == 0) {
    throw std::invalid_argument("pochhammer_inf: exponent parameters a and b must be >= 1");
  }
  // (q^a; q^a) expands by the pentagonal number theorem: O(sqrt(order))
  // nonzero terms written directly.
  if (!negated && a == b) return pentagonal_expansion(a, order, domain);
  // (-q^a; q^2a) = (q^2a; q^2a)^2 / ((q^a; q^a) (q^4a; q^4a)): three
  // pentagonal series combined by sparse divide/mul. Identical output to the
  // factor-by-factor pass, at a fraction of the cost for large orders.
  if (negated && b == 2 * a && a <= order) {
    TruncatedSeries p1 = pentagonal_expansion(a, order, domain);
    TruncatedSeries p2 = pentagonal_expansion(2 * a, order, domain);
    TruncatedSeries p4 = pentagonal_expansion(4 * a, order, domain);
    return divide(mul(divide(p2, p1), p2), p4);
  }
  return detail::pochhammer_generic(a, b, order, domain, negated);
}

TruncatedSeries psi_series(std::size_t order, CoefficientDomain domain) {
  TruncatedSeries c(domain, order);
  for (std::size_t t = 0;; ++t) {
    const std::size_t tri = t * (t + 1) / 2;
    if (tri > order) break;
    c.set_coeff(tri, 1);
  }
  return c;
}

TruncatedSeries square_theta_series(std::size_t order, CoefficientDomain domain) {
  TruncatedSeries c(domain, order);
  c.set_coeff(0, 1);
  for (std::size_t j = 1; j * j <= order; ++j) c.set_coeff(j * j, 2);
  return c;
}

TruncatedSeries reduce_mod(const TruncatedSeries& a, std::uint64_t m) {
  CoefficientDomain target = CoefficientDomain::mod(m);
  TruncatedSeries out(target, a.order());
  if (a.domain().is_exact()) {
    const auto& src = a.exact_coeffs();
    for (std::size_t n = 0; n <= a.order(); ++n) {
      out.mod_coeffs()[n] = canonical_residue(src[n], m);
    }
    return out;
  }
  const u64 src_m = a.domain().modulus;
  if (src_m % m != 0) {
    throw std::invalid_argument("reduce_mod: target modulus " + std::to_string(m) +
                                " must divide source modulus " + std::to_string(src_m));
  }
  const auto& src = a.mod_coeffs();
  for (std::size_t n = 0; n <= a.order(); ++n) out.mod_coeffs()[n] = src[n] % m;
  return out;
}

std::optional<std::size_t> first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_domain(a, b, "first_mismatch");
  const std::size_t order = std::min(a.order(), b.order());
  if (a.domain().is_exact()) {
    for (std::size_t n = 0; n <= order; ++n) {
      if (a.exact_coeffs()[n] != b.exact_coeffs()[n]) return n;
    }
  } else {
    for (std::size_t n = 0; n <= order; ++n) {
      if (a.mod_coeffs()[n] != b.mod_coeffs()[n]) return n;
    }
  }
  return std::nullopt;
}

std::string to_debug_string(const TruncatedSeries& a, std::size_t max_terms) {
  std::ostringstream os;
  os << "series[" << describe(a.domain()) << ", order " << a.order() << "]:";
  std::size_t printed = 0;
  bool truncated = false;
  for (std::size_t n = 0; n <= a.order(); ++n) {
    Int c = a.coeff(n);
    if (c == 0) continue;
    if (printed == max_terms) {
      truncated = true;
      break;
    }
    if (printed == 0) {
      os << ' ' << (c < 0 ? "-" : "");
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Int mag = c < 0 ? Int(-c) : c;
    if (mag != 1 || n == 0) os << mag.str();
    if (n > 0) {
      if (mag != 1) os << '*';
      os << 'q';
      if (n > 1) os << '^' << n;
    }
    ++printed;
  }
  if (printed == 0) os << " 0";
  if (truncated) os << " + ...";
  return os.str();
}

Int int_pow(Int base, std::uint64_t exp) {
  Int acc = 1;
  while (exp > 0) {
    if (exp & 1) acc *= base;
    exp >>= 1;
    if (exp > 0) base *= base;
  }
  return acc;
}

Int geometric_power_sum(const Int& base, std::uint64_t terms) {
  Int acc = 0;
  Int power = 1;
  for (std::uint64_t i = 0; i < terms; ++i) {
    acc += power;
    power *= base;
  }
  return acc;
}

}  // namespace podcong
