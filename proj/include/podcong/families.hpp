#pragma once

#include "podcong/integer.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace podcong {

// One or more fixed progressions pod(A n + B) == 0 (mod M).
struct ProgressionForm {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> progressions;  // (A, B)
};

// pod(a n + b) == c * (-1)^(n + sign_offset) * r_k(8n + k) (mod M).
struct RelationForm {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 1;
  int sign_offset = 0;  // 0 or 1
  int k = 0;            // squares count order (3 or 5 here)
};

// Progressions indexed by alpha: A = base^(2*alpha + exp_offset),
// B = (mult * base^(2*alpha + exp_offset - 1) + 1) / 8.
struct PowerProgressionForm {
  std::uint64_t base = 0;
  std::uint64_t mult = 0;
  std::uint64_t exp_offset = 0;
  std::uint64_t alpha_min = 0;
};

// Single indices (coeff * p^(e0 + e1*alpha) * N + 1) / 8 for admissible
// (p, alpha, N); pod of the index is claimed 0 mod M. The paired relation
// order k records which square-count recursion certifies out-of-table
// instances.
struct PowerIndexForm {
  std::uint64_t coeff = 0;  // 3 or 5
  int k = 0;                // 5 pairs with the mod-9 relation, 3 with mod-5
  std::uint64_t e0 = 0;
  std::uint64_t e1 = 0;
  std::uint64_t p_class_mod = 0;                // residue class constraint on p
  std::vector<std::uint64_t> p_class_residues;  // allowed p mod p_class_mod
  std::uint64_t pn_mod8 = 0;                    // require p*N == pn_mod8 (mod 8)
  bool coprime = true;                          // require gcd(p, N) = 1
};

struct CongruenceFamily {
  std::string id;
  std::uint64_t modulus = 0;
  std::string statement;
  std::variant<ProgressionForm, RelationForm, PowerProgressionForm, PowerIndexForm> form;
};

struct FamilyInstance {
  std::string family_id;
  std::uint64_t modulus = 0;
  std::optional<std::uint64_t> p;
  std::optional<std::uint64_t> alpha;
  std::optional<Int> N;
  // Progression instance: pod(A n + B) == 0 (mod modulus), skipping any
  // n == r (mod m) classes listed in excluded.
  std::optional<std::pair<Int, Int>> progression;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> excluded;
  // Single-index instance: pod(index) == 0 (mod modulus).
  std::optional<Int> index;
  std::string text;
};

// The full catalog of builtin congruences, fixed order, unique ids.
const std::vector<CongruenceFamily>& builtin_families();

// Lookup by id; throws std::invalid_argument for unknown ids.
const CongruenceFamily& family_by_id(const std::string& id);

// Substitutes parameters into a family after checking every side condition;
// a violated condition is rejected with the failed predicate named. For
// parametric index families, omitting N yields the derived progression over
// N's residue class (with the coprimality exclusion made explicit); giving N
// yields a single index. Non-parametric families reject any parameter.
FamilyInstance instantiate(const CongruenceFamily& family, std::optional<std::uint64_t> p,
                           std::optional<std::uint64_t> alpha, std::optional<Int> N);

struct GridBounds {
  std::uint64_t p_max = 30;       // exclusive
  std::uint64_t alpha_max = 1;    // inclusive
  std::uint64_t n_param_max = 200;  // exclusive bound on N
  std::optional<std::uint64_t> p_pin;
  std::optional<std::uint64_t> alpha_pin;
  std::optional<Int> n_pin;
};

// Every admissible instance of the family within the bounds. Progression
// and relation families yield their fixed instances; parametric families
// enumerate (p, alpha, N) triples as single-index instances, or derived
// progressions when the bounds pin p (and alpha) but leave N free.
std::vector<FamilyInstance> instantiate_grid(const CongruenceFamily& family,
                                             const GridBounds& bounds);

}  // namespace podcong
