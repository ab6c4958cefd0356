#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace podcong {

// Coefficient domain of a truncated series: either exact unbounded integers
// (modulus == 0) or the ring Z/m with residues kept canonical in [0, m).
struct CoefficientDomain {
  std::uint64_t modulus = 0;

  static constexpr CoefficientDomain exact() { return CoefficientDomain{0}; }

  static CoefficientDomain mod(std::uint64_t m) {
    if (m < 2) {
      throw std::invalid_argument("CoefficientDomain::mod: modulus must be >= 2, got " +
                                  std::to_string(m));
    }
    return CoefficientDomain{m};
  }

  constexpr bool is_exact() const { return modulus == 0; }

  friend constexpr bool operator==(const CoefficientDomain&, const CoefficientDomain&) = default;
};

inline std::string describe(const CoefficientDomain& d) {
  return d.is_exact() ? std::string("exact") : "mod " + std::to_string(d.modulus);
}

}  // namespace podcong
