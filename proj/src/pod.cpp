#include "podcong/pod.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace podcong {

namespace {

// Partitions of n with parts <= k and odd parts distinct. States are filled
// on demand; has[n][k] marks which are done.
struct PodMemo {
  std::vector<std::vector<Int>> val;
  std::vector<std::vector<bool>> has;

  explicit PodMemo(std::uint64_t n)
      : val(n + 1, std::vector<Int>(n + 1)), has(n + 1, std::vector<bool>(n + 1, false)) {}

  Int count(std::uint64_t n, std::uint64_t k) {
    if (n == 0) return 1;
    if (k == 0) return 0;
    if (k > n) k = n;
    if (has[n][k]) return val[n][k];
    Int res = count(n, k - 1);  // no part equal to k
    if (k % 2 == 0) {
      res += count(n - k, k);  // even parts may repeat
    } else {
      res += count(n - k, k - 1);  // odd parts appear at most once
    }
    has[n][k] = true;
    val[n][k] = res;
    return val[n][k];
  }
};

}  // namespace

Int pod_enum(std::uint64_t n) {
  if (n == 0) return 1;
  PodMemo memo(n);
  return memo.count(n, n);
}

std::uint64_t PodTable::residue_at(const Int& index, std::uint64_t m) const {
  if (index < 0 || index > limit()) {
    throw std::invalid_argument("PodTable::residue_at: index " + to_string(index) +
                                " outside table limit " + std::to_string(limit()));
  }
  const std::size_t n = static_cast<std::size_t>(to_u64(index));
  if (domain().is_exact()) return canonical_residue(values.exact_coeffs()[n], m);
  if (domain().modulus % m != 0) {
    throw std::invalid_argument("PodTable::residue_at: table modulus " +
                                std::to_string(domain().modulus) +
                                " is not a multiple of requested modulus " + std::to_string(m));
  }
  return values.mod_coeffs()[n] % m;
}

PodTable pod_table_series(std::size_t limit, CoefficientDomain domain, std::size_t jobs) {
  TruncatedSeries route1 = inverse(alternate_signs(psi_series(limit, domain)));
  TruncatedSeries route2 = divide(pochhammer_inf(1, 2, limit, domain, /*negated=*/true),
                                  pochhammer_inf(2, 2, limit, domain));
  (void)jobs;
  if (auto bad = first_mismatch(route1, route2)) {
    throw std::logic_error("pod_table_series: reciprocal route and product route disagree at q^" +
                           std::to_string(*bad) + " (domain " + describe(domain) + ")");
  }
  return PodTable{PodTable::Method::Series, std::move(route1)};
}

PodTable pod_table_enum(std::size_t limit) {
  PodMemo memo(limit);
  TruncatedSeries values(CoefficientDomain::exact(), limit);
  for (std::size_t n = 0; n <= limit; ++n) {
    values.set_coeff(n, memo.count(n, n));
  }
  return PodTable{PodTable::Method::Enumeration, std::move(values)};
}

}  // namespace podcong
