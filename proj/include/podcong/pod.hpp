#pragma once

#include "podcong/domain.hpp"
#include "podcong/integer.hpp"
#include "podcong/series.hpp"

#include <cstddef>
#include <cstdint>

namespace podcong {

// pod(n): partitions of n in which the odd parts are distinct (even parts
// unrestricted). Recursive enumeration over (remaining, max part) with
// memoization; independent of the series machinery, meant as the oracle the
// generating-function route is checked against.
Int pod_enum(std::uint64_t n);

struct PodTable {
  enum class Method { Series, Enumeration };

  Method method;
  TruncatedSeries values;

  CoefficientDomain domain() const { return values.domain(); }
  std::size_t limit() const { return values.order(); }

  // pod(index) mod m. The table must cover index, and its own modulus (if
  // any) must be a multiple of m.
  std::uint64_t residue_at(const Int& index, std::uint64_t m) const;
};

// Coefficients of the pod generating series up to q^limit, computed twice by
// structurally different routes and compared entry for entry:
//   route 1: reciprocal of psi(-q), psi built from triangular exponents;
//   route 2: (-q; q^2)_inf divided by (q^2; q^2)_inf, both as products.
// Any disagreement aborts with std::logic_error naming the first bad index.
PodTable pod_table_series(std::size_t limit, CoefficientDomain domain, std::size_t jobs = 1);

// Table filled from pod_enum; exact domain, practical for small limits only.
PodTable pod_table_enum(std::size_t limit);

}  // namespace podcong
