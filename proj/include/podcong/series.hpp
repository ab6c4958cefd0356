#pragma once

#include "podcong/domain.hpp"
#include "podcong/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace podcong {

// Truncated formal power series: coefficients of q^0 .. q^order, eagerly
// truncated. Exact-domain coefficients are unbounded Ints; Z/m coefficients
// are canonical residues stored as uint64_t.
class TruncatedSeries {
 public:
  using ExactCoeffs = std::vector<Int>;
  using ModCoeffs = std::vector<std::uint64_t>;

  // Zero series of the given truncation order (order+1 stored coefficients).
  TruncatedSeries(CoefficientDomain domain, std::size_t order);

  static TruncatedSeries one(CoefficientDomain domain, std::size_t order);
  static TruncatedSeries monomial(CoefficientDomain domain, std::size_t order,
                                  std::size_t exponent, const Int& value);
  static TruncatedSeries from_exact(ExactCoeffs coeffs);  // order = coeffs.size()-1

  CoefficientDomain domain() const { return domain_; }
  std::size_t order() const { return order_; }
  std::size_t size() const { return order_ + 1; }

  // Coefficient of q^n as an Int (the residue value in a Z/m domain).
  Int coeff(std::size_t n) const;
  // Coefficient of q^n in a Z/m domain; throws in the exact domain.
  std::uint64_t residue(std::size_t n) const;
  // Assigns coefficient n, canonicalizing v into [0, m) in a Z/m domain.
  void set_coeff(std::size_t n, const Int& v);

  const ExactCoeffs& exact_coeffs() const;
  const ModCoeffs& mod_coeffs() const;
  ExactCoeffs& exact_coeffs();
  ModCoeffs& mod_coeffs();

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  CoefficientDomain domain_;
  std::size_t order_;
  std::variant<ExactCoeffs, ModCoeffs> coeffs_;
};

// All binary operations require both operands in the same domain and
// truncate the result to the smaller operand order. Rejected inputs raise
// std::invalid_argument naming the violated precondition.

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b, std::size_t jobs = 1);

// a^k by binary exponentiation; a^0 is the constant series 1.
TruncatedSeries pow(const TruncatedSeries& a, std::uint64_t k, std::size_t jobs = 1);

// Multiplicative inverse; the constant term must be a unit (+-1 in the exact
// domain, coprime to m in Z/m).
TruncatedSeries inverse(const TruncatedSeries& a);

// num / den by the same unit-constant recurrence; cheaper than
// mul(num, inverse(den)) when den is sparse, and equal to it coefficient for
// coefficient.
TruncatedSeries divide(const TruncatedSeries& num, const TruncatedSeries& den);

// b_n = a_{s n + r} for 0 <= r < s; order floor((order(a) - r) / s).
TruncatedSeries dissect(const TruncatedSeries& a, std::size_t r, std::size_t s);

// q -> q^s substitution: b_{s n} = a_n. Result order is s * order(a), capped
// at max_order when given.
TruncatedSeries inflate(const TruncatedSeries& a, std::size_t s,
                        std::optional<std::size_t> max_order = std::nullopt);

// q -> -q substitution: b_n = (-1)^n a_n.
TruncatedSeries alternate_signs(const TruncatedSeries& a);

// Infinite product prod_{j>=0} (1 - q^(a + j b)), truncated; with
// negated = true the factors are (1 + q^(a + j b)). Requires a, b >= 1.
TruncatedSeries pochhammer_inf(std::size_t a, std::size_t b, std::size_t order,
                               CoefficientDomain domain, bool negated = false);

// sum_{t>=0} q^(t(t+1)/2), the generating series whose k-th power counts
// representations as sums of k triangular numbers.
TruncatedSeries psi_series(std::size_t order, CoefficientDomain domain);

// 1 + 2 sum_{j>=1} q^(j^2), whose k-th power counts representations as sums
// of k integer squares.
TruncatedSeries square_theta_series(std::size_t order, CoefficientDomain domain);

// Entrywise reduction into Z/m. From the exact domain any m >= 2 is allowed;
// from Z/M the target m must divide M.
TruncatedSeries reduce_mod(const TruncatedSeries& a, std::uint64_t m);

// First mismatching index over the common prefix min(order(a), order(b)),
// or nullopt when the prefixes agree. Domains must match.
std::optional<std::size_t> first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b);

std::string to_debug_string(const TruncatedSeries& a, std::size_t max_terms = 12);

namespace detail {

// Reference implementation of pochhammer_inf: one in-place binomial pass per
// factor, no sparsity shortcuts. The public function must agree with this
// bit for bit; tests compare the two.
TruncatedSeries pochhammer_generic(std::size_t a, std::size_t b, std::size_t order,
                                   CoefficientDomain domain, bool negated);

}  // namespace detail

}  // namespace podcong
