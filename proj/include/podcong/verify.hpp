#pragma once

#include "podcong/families.hpp"
#include "podcong/integer.hpp"
#include "podcong/pod.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace podcong {

// At most this many violations are stored per report; the count keeps
// tallying past the cap.
inline constexpr std::size_t kCounterexampleCap = 32;

struct Counterexample {
  Int n;         // sweep position (or 0 for single-index instances)
  Int index;     // argument of pod (or of the identity being replayed)
  Int got;       // observed residue / value
  Int expected;  // required residue / value
};

struct VerificationReport {
  std::string family;
  std::string instance;
  std::uint64_t modulus = 0;
  std::uint64_t n_max = 0;  // inclusive sweep bound; 0 when a single point was checked
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;  // true count; counterexamples holds at most the cap
  std::vector<Counterexample> counterexamples;
  std::uint64_t elapsed_ms = 0;  // measured; serializers suppress it unless asked

  bool verified() const { return violations == 0; }
};

// Sweeps pod(A n + B) == 0 (mod M) for 0 <= n <= n_max, skipping the
// instance's excluded residue classes. The table must cover A * n_max + B
// (rejected naming the required limit) and carry a modulus compatible with
// the instance (equal to, or a multiple of, M; exact tables always work).
VerificationReport verify_progression(const FamilyInstance& instance, std::uint64_t n_max,
                                      const PodTable& pod, std::size_t jobs = 1);

// Entrywise check of a Relation family (thm1, thm3, lo12) for 0 <= n <=
// n_max; builds its own pod and r_k tables mod M.
VerificationReport verify_relation(const std::string& family_id, std::uint64_t n_max,
                                   std::size_t jobs = 1);

// Certifies one instance of a parametric index family. Single-index
// instances get a direct table check when a covering table is supplied;
// derived-progression instances get a direct sweep over whatever prefix of
// the progression the table covers (at most n_max terms). Every instance
// additionally gets the multiplier route: the index's paired square-count
// argument is p^(e-1) * (pN), whose scaling multiplier must vanish mod M;
// the multiplier is summed exactly and its residue checked.
VerificationReport verify_power_instance(const CongruenceFamily& family,
                                         const FamilyInstance& instance,
                                         const PodTable* pod_if_covering,
                                         std::uint64_t n_max, std::size_t jobs = 1);

struct ReplayRequest {
  std::string id;  // one of: palpha, thm1_chain, thm3_chain, t4t8
  std::optional<std::uint64_t> p;
  std::optional<std::uint64_t> alpha;
};

// Rebuilds an identity (or a whole derivation chain) as truncated series and
// compares both sides coefficient for coefficient. Chains check every
// intermediate step; a failing step contributes one counterexample per
// mismatching coefficient (up to the cap), with n = step number.
VerificationReport replay_identity(const ReplayRequest& request, std::size_t trunc);

// Aggregated sweep of the scaling recursions (five-square and three-square
// multipliers against exact tables), the eightfold r_k(8n+k) = c_k t_k(n)
// bridge for k = 1..7, and the two t_4 / t_8 progression congruences for
// each p in p_list (mod p and mod p^3).
VerificationReport verify_recursions(const std::vector<std::uint64_t>& p_list,
                                     std::uint64_t alpha_max, std::uint64_t n_max);

// All progressions pod(A n + B) == 0 (mod modulus) with A <= step_max,
// 0 <= B < A and no violation for n <= n_max. Sorted by (A, B); candidates
// only, not proofs. Table coverage is rejected naming the required limit.
std::vector<std::pair<std::uint64_t, std::uint64_t>> search_progressions(
    std::uint64_t modulus, std::uint64_t step_max, std::uint64_t n_max, const PodTable& pod,
    std::size_t jobs = 1);

struct VerifyOptions {
  std::optional<std::uint64_t> n_max;  // default: 10000 for relations, 500 for progressions
  std::uint64_t table_limit = 300000;  // largest pod table the driver may build
  std::size_t jobs = 1;
};

// Drives a whole family: instantiates the grid, builds one shared pod table
// sized to the covered instances (capped at table_limit), and verifies every
// instance. Single-index instances beyond the cap are certified by the
// multiplier route alone; progression instances must fit under the cap.
std::vector<VerificationReport> verify_family(const CongruenceFamily& family,
                                              const GridBounds& bounds,
                                              const VerifyOptions& options);

}  // namespace podcong
