#include "podcong/verify.hpp"

#include "podcong/arith.hpp"
#include "podcong/parallel.hpp"
#include "podcong/series.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace podcong {

namespace {

using u64 = std::uint64_t;

struct Stopwatch {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  u64 ms() const {
    return static_cast<u64>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count());
  }
};

struct SweepPart {
  u64 checked = 0;
  u64 violations = 0;
  std::vector<Counterexample> cexs;

  void record(Counterexample cex) {
    ++violations;
    if (cexs.size() < kCounterexampleCap) cexs.push_back(std::move(cex));
  }
};

void merge_parts(VerificationReport& report, std::vector<SweepPart>& parts) {
  for (auto& part : parts) {
    report.checked += part.checked;
    report.violations += part.violations;
    for (auto& cex : part.cexs) {
      if (report.counterexamples.size() >= kCounterexampleCap) break;
      report.counterexamples.push_back(std::move(cex));
    }
  }
}

// Residue of pod(index) modulo m using direct coefficient access; coverage
// and modulus compatibility must have been validated by the caller.
u64 pod_residue_unchecked(const PodTable& pod, const Int& index, u64 m) {
  const std::size_t n = static_cast<std::size_t>(to_u64(index));
  if (pod.domain().is_exact()) return canonical_residue(pod.values.exact_coeffs()[n], m);
  return pod.values.mod_coeffs()[n] % m;
}

void require_table_compat(const PodTable& pod, u64 m, const char* who) {
  if (!pod.domain().is_exact() && pod.domain().modulus % m != 0) {
    throw std::invalid_argument(std::string(who) + ": pod table modulus " +
                                std::to_string(pod.domain().modulus) +
                                " is not a multiple of the instance modulus " + std::to_string(m));
  }
}

bool is_excluded(const FamilyInstance& inst, u64 n) {
  for (const auto& [residue, mod] : inst.excluded) {
    if (n % mod == residue) return true;
  }
  return false;
}

// Coefficient-prefix comparison used by the replay chains: one
// counterexample per mismatching coefficient, indexed by the chain step.
void compare_step(VerificationReport& report, int step, const TruncatedSeries& lhs,
                  const TruncatedSeries& rhs) {
  const std::size_t order = std::min(lhs.order(), rhs.order());
  report.checked += order + 1;
  for (std::size_t n = 0; n <= order; ++n) {
    Int a = lhs.coeff(n);
    Int b = rhs.coeff(n);
    if (a == b) continue;
    ++report.violations;
    if (report.counterexamples.size() < kCounterexampleCap) {
      report.counterexamples.push_back({Int(step), Int(n), a, b});
    }
  }
}

u64 checked_pow_u64(u64 base, u64 exp, const char* who) {
  u64 acc = 1;
  for (u64 i = 0; i < exp; ++i) {
    if (acc > std::numeric_limits<u64>::max() / base) {
      throw std::invalid_argument(std::string(who) + ": " + std::to_string(base) + "^" +
                                  std::to_string(exp) + " does not fit in 64 bits");
    }
    acc *= base;
  }
  return acc;
}

void note_table(const std::string& what, std::size_t limit, const Stopwatch& sw) {
  std::cerr << "podcong: built " << what << " to order " << limit << " in " << sw.ms() << " ms\n";
}

}  // namespace

VerificationReport verify_progression(const FamilyInstance& instance, u64 n_max,
                                      const PodTable& pod, std::size_t jobs) {
  if (!instance.progression) {
    throw std::invalid_argument("verify_progression: instance carries no progression");
  }
  const u64 m = instance.modulus;
  require_table_compat(pod, m, "verify_progression");
  const Int& A = instance.progression->first;
  const Int& B = instance.progression->second;
  const Int needed = A * n_max + B;
  if (needed > pod.limit()) {
    throw std::invalid_argument("verify_progression: pod table covers q^" +
                                std::to_string(pod.limit()) + " but the sweep needs q^" +
                                to_string(needed));
  }

  Stopwatch sw;
  VerificationReport report;
  report.family = instance.family_id;
  report.instance = instance.text;
  report.modulus = m;
  report.n_max = n_max;

  const auto bounds = chunk_bounds(0, n_max + 1, jobs);
  std::vector<SweepPart> parts(bounds.size());
  parallel_for(0, bounds.size(), bounds.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ci = lo; ci < hi; ++ci) {
      SweepPart& part = parts[ci];
      for (u64 n = bounds[ci].first; n < bounds[ci].second; ++n) {
        if (is_excluded(instance, n)) continue;
        const Int index = A * n + B;
        const u64 got = pod_residue_unchecked(pod, index, m);
        ++part.checked;
        if (got != 0) part.record({Int(n), index, Int(got), Int(0)});
      }
    }
  });
  merge_parts(report, parts);
  report.elapsed_ms = sw.ms();
  return report;
}

VerificationReport verify_relation(const std::string& family_id, u64 n_max, std::size_t jobs) {
  const CongruenceFamily& fam = family_by_id(family_id);
  const auto* rel = std::get_if<RelationForm>(&fam.form);
  if (!rel) {
    throw std::invalid_argument("verify_relation: family '" + family_id +
                                "' is not a relation family");
  }
  const u64 m = fam.modulus;
  const CoefficientDomain dom = CoefficientDomain::mod(m);

  Stopwatch build;
  const std::size_t pod_limit = rel->a * n_max + rel->b;
  PodTable pod = pod_table_series(pod_limit, dom, jobs);
  note_table("pod table mod " + std::to_string(m), pod_limit, build);

  Stopwatch build2;
  const std::size_t rk_limit = 8 * n_max + static_cast<u64>(rel->k);
  CountTable rk = rk_table(rel->k, rk_limit, dom, jobs);
  note_table("r_" + std::to_string(rel->k) + " table mod " + std::to_string(m), rk_limit, build2);

  Stopwatch sw;
  VerificationReport report;
  report.family = fam.id;
  report.instance = fam.statement;
  report.modulus = m;
  report.n_max = n_max;

  const auto& podc = pod.values.mod_coeffs();
  const auto& rkc = rk.values.mod_coeffs();
  const u64 c = rel->c % m;
  const auto bounds = chunk_bounds(0, n_max + 1, jobs);
  std::vector<SweepPart> parts(bounds.size());
  parallel_for(0, bounds.size(), bounds.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ci = lo; ci < hi; ++ci) {
      SweepPart& part = parts[ci];
      for (u64 n = bounds[ci].first; n < bounds[ci].second; ++n) {
        const u64 got = podc[rel->a * n + rel->b];
        u64 base = rkc[8 * n + static_cast<u64>(rel->k)];
        if ((n + static_cast<u64>(rel->sign_offset)) % 2 == 1) base = (m - base) % m;
        const u64 expected = (base * c) % m;
        ++part.checked;
        if (got != expected) {
          part.record({Int(n), Int(rel->a * n + rel->b), Int(got), Int(expected)});
        }
      }
    }
  });
  merge_parts(report, parts);
  report.elapsed_ms = build.ms();  // include table construction
  return report;
}

VerificationReport verify_power_instance(const CongruenceFamily& family,
                                         const FamilyInstance& instance,
                                         const PodTable* pod_if_covering, u64 n_max,
                                         std::size_t jobs) {
  const auto* form = std::get_if<PowerIndexForm>(&family.form);
  if (!form) {
    throw std::invalid_argument("verify_power_instance: family '" + family.id +
                                "' is not a parametric index family");
  }
  if (!instance.p || !instance.alpha) {
    throw std::invalid_argument("verify_power_instance: instance lacks (p, alpha)");
  }

  Stopwatch sw;
  VerificationReport report;
  report.family = instance.family_id;
  report.modulus = instance.modulus;
  const u64 m = instance.modulus;

  bool ran_direct = false;

  if (instance.index) {
    report.n_max = 0;
    if (pod_if_covering && *instance.index <= pod_if_covering->limit()) {
      require_table_compat(*pod_if_covering, m, "verify_power_instance");
      const u64 got = pod_residue_unchecked(*pod_if_covering, *instance.index, m);
      ++report.checked;
      if (got != 0) {
        ++report.violations;
        report.counterexamples.push_back({Int(0), *instance.index, Int(got), Int(0)});
      }
      ran_direct = true;
    }
  } else if (instance.progression) {
    // Direct sweep over whatever prefix of the progression the table covers.
    const Int& A = instance.progression->first;
    const Int& B = instance.progression->second;
    if (pod_if_covering && B <= pod_if_covering->limit()) {
      const Int span = (Int(pod_if_covering->limit()) - B) / A;
      const u64 effective = span >= n_max ? n_max : to_u64(span);
      VerificationReport direct =
          verify_progression(instance, effective, *pod_if_covering, jobs);
      report.n_max = effective;
      report.checked = direct.checked;
      report.violations = direct.violations;
      report.counterexamples = std::move(direct.counterexamples);
      ran_direct = true;
    }
  } else {
    throw std::invalid_argument("verify_power_instance: instance carries neither index nor "
                                "progression");
  }

  // Multiplier route: the paired square-count argument is p^(e-1) * (pN)
  // with p exactly dividing pN, so the scaling identity collapses to a
  // single geometric multiplier which must vanish mod M. Summed exactly.
  const u64 e = form->e0 + form->e1 * *instance.alpha;
  if (e % 2 == 0) {
    throw std::logic_error("verify_power_instance: exponent " + std::to_string(e) +
                           " is even; multiplier route needs p^(odd) * N");
  }
  const u64 beta = (e - 1) / 2;
  const Int base = form->k == 5 ? Int(*instance.p) * *instance.p * *instance.p : Int(*instance.p);
  const Int factor = geometric_power_sum(base, beta + 1);
  const u64 rem = canonical_residue(factor, m);
  ++report.checked;
  if (rem != 0) {
    ++report.violations;
    if (report.counterexamples.size() < kCounterexampleCap) {
      Int where = instance.index ? *instance.index : instance.progression->second;
      report.counterexamples.push_back({Int(0), where, Int(rem), Int(0)});
    }
  }

  report.instance = instance.text + (ran_direct ? " [table+multiplier]" : " [multiplier]");
  report.elapsed_ms = sw.ms();
  return report;
}

VerificationReport replay_identity(const ReplayRequest& request, std::size_t trunc) {
  if (trunc < 16) {
    throw std::invalid_argument("replay_identity: truncation must be >= 16, got " +
                                std::to_string(trunc));
  }

  Stopwatch sw;
  VerificationReport report;
  report.family = "replay";
  report.n_max = trunc;

  if (request.id == "palpha") {
    if (!request.p || !request.alpha) {
      throw std::invalid_argument("replay_identity: palpha needs p and alpha");
    }
    const u64 p = *request.p;
    const u64 alpha = *request.alpha;
    if (!is_prime_u64(p)) {
      throw std::invalid_argument("replay_identity: p = " + std::to_string(p) +
                                  " is not prime");
    }
    if (alpha < 1) throw std::invalid_argument("replay_identity: alpha must be >= 1");
    const u64 m = checked_pow_u64(p, alpha, "replay_identity");
    if (m < 2 || m > (u64(1) << 62)) {
      throw std::invalid_argument("replay_identity: modulus p^alpha out of range");
    }
    const CoefficientDomain dom = CoefficientDomain::mod(m);
    TruncatedSeries lhs = pow(pochhammer_inf(1, 1, trunc, dom), m);
    TruncatedSeries rhs = pow(pochhammer_inf(p, p, trunc, dom), m / p);
    report.modulus = m;
    std::ostringstream os;
    os << "palpha(p=" << p << ", alpha=" << alpha << "): (q;q)^" << m << " == (q^" << p << ";q^"
       << p << ")^" << m / p << " (mod " << m << "), trunc " << trunc;
    report.instance = os.str();
    compare_step(report, 1, lhs, rhs);
    report.elapsed_ms = sw.ms();
    return report;
  }

  if (request.id == "t4t8") {
    if (!request.p) throw std::invalid_argument("replay_identity: t4t8 needs p");
    const u64 p = *request.p;
    if (p == 2 || !is_prime_u64(p)) {
      throw std::invalid_argument("replay_identity: p = " + std::to_string(p) +
                                  " is not an odd prime");
    }
    const u64 p3 = checked_pow_u64(p, 3, "replay_identity");
    report.modulus = p3;
    std::ostringstream os;
    os << "t4t8(p=" << p << "): t_4(pn+(p-1)/2) == t_4(n) (mod " << p
       << "); t_8(pn+p-1) == t_8(n) (mod " << p3 << "), trunc " << trunc;
    report.instance = os.str();
    TruncatedSeries s4 = pow(psi_series(trunc, CoefficientDomain::mod(p)), 4);
    compare_step(report, 1, dissect(s4, (p - 1) / 2, p), s4);
    TruncatedSeries s8 = pow(psi_series(trunc, CoefficientDomain::mod(p3)), 8);
    compare_step(report, 2, dissect(s8, p - 1, p), s8);
    report.elapsed_ms = sw.ms();
    return report;
  }

  const bool is1 = request.id == "thm1_chain";
  const bool is3 = request.id == "thm3_chain";
  if (is1 || is3) {
    if (request.p || request.alpha) {
      throw std::invalid_argument("replay_identity: " + request.id + " takes no parameters");
    }
    const u64 m = is1 ? 9 : 5;
    const u64 s = is1 ? 3 : 5;  // dissection stride
    // With psi = sum q^(t(t+1)/2) and pod the coefficient table, the chain
    // drives psi^(m_power) * sum pod(n) (-q)^n down to a pure psi power on
    // the progression s*n + 2.
    const u64 top = is1 ? 9 : 5;     // psi power that reduces to psi(q^s)^...
    const u64 inner = is1 ? 3 : 1;   // psi(q^s) power appearing mod m
    const u64 mid = is1 ? 8 : 4;     // psi power equal to psi^top * alt-pod
    const u64 fin = is1 ? 5 : 3;     // psi power of the extracted subseries
    const CoefficientDomain dom = CoefficientDomain::mod(m);

    report.modulus = m;
    std::ostringstream os;
    os << request.id << ": psi^" << top << " * alt-pod == psi^" << mid << "; psi^" << top
       << " == psi(q^" << s << ")^" << inner << "; extract q^(" << s << "n+2); dissect(psi^"
       << mid << ",2," << s << ") == psi^" << mid << "; subseries == psi^" << fin << " (mod "
       << m << "), trunc " << trunc;
    report.instance = os.str();

    TruncatedSeries pod = pod_table_series(trunc, dom).values;
    TruncatedSeries alt = alternate_signs(pod);
    TruncatedSeries psi = psi_series(trunc, dom);
    TruncatedSeries psis = inflate(psi_series(trunc / s, dom), s);  // psi(q^s)

    // step 1: psi^top * alt-pod == psi^mid (an exact generating identity)
    compare_step(report, 1, mul(pow(psi, top), alt), pow(psi, mid));
    // step 2: psi^top == psi(q^s)^inner (mod m)
    compare_step(report, 2, pow(psi, top), pow(psis, inner));
    // step 3: extracting q^(s n + 2) from psi(q^s)^inner * alt-pod leaves
    //         psi^inner times the extracted subseries
    TruncatedSeries sub = dissect(alt, 2, s);
    compare_step(report, 3, dissect(mul(pow(psis, inner), alt), 2, s),
                 mul(pow(psi, inner), sub));
    // step 4: the same extraction applied to psi^mid
    compare_step(report, 4, dissect(pow(psi, mid), 2, s), mul(pow(psi, inner), sub));
    // step 5: t_mid(s n + 2) == t_mid(n) (mod m)
    compare_step(report, 5, dissect(pow(psi, mid), 2, s), pow(psi, mid));
    // step 6: the extracted subseries is psi^fin (mod m)
    compare_step(report, 6, sub, pow(psi, fin));
    report.elapsed_ms = sw.ms();
    return report;
  }

  throw std::invalid_argument("replay_identity: unknown id '" + request.id +
                              "' (known: palpha, thm1_chain, thm3_chain, t4t8)");
}

VerificationReport verify_recursions(const std::vector<u64>& p_list, u64 alpha_max, u64 n_max) {
  if (p_list.empty()) {
    throw std::invalid_argument("verify_recursions: empty prime list");
  }
  for (u64 p : p_list) {
    if (p == 2 || !is_prime_u64(p)) {
      throw std::invalid_argument("verify_recursions: p = " + std::to_string(p) +
                                  " is not an odd prime");
    }
  }
  if (n_max == 0) throw std::invalid_argument("verify_recursions: n_max must be >= 1");

  const u64 p_max = *std::max_element(p_list.begin(), p_list.end());
  u64 scale_max = 1;
  for (u64 i = 0; i < 2 * alpha_max; ++i) {
    if (scale_max > (u64(5) << 40) / p_max) {
      throw std::invalid_argument("verify_recursions: p^(2*alpha) grid too large");
    }
    scale_max *= p_max;
  }
  const u64 arg_max = scale_max * n_max;
  if (arg_max > 5'000'000) {
    throw std::invalid_argument("verify_recursions: grid needs exact tables to " +
                                std::to_string(arg_max) + "; shrink p/alpha/n bounds");
  }

  Stopwatch sw;
  VerificationReport report;
  report.family = "recursions";
  report.n_max = n_max;
  std::ostringstream os;
  os << "scaling recursions (r_5, r_3), r_k(8n+k) bridge (k<=7), t_4/t_8 progression "
        "congruences; p in {";
  for (std::size_t i = 0; i < p_list.size(); ++i) os << (i ? "," : "") << p_list[i];
  os << "}, alpha <= " << alpha_max << ", n <= " << n_max;
  report.instance = os.str();

  auto r5tab = rk_table(5, arg_max);
  auto r3tab = rk_table(3, arg_max);

  // five-square scaling: r_5(p^(2a) n) from r_5(n), defined for p^2 not
  // dividing n
  for (u64 p : p_list) {
    for (u64 alpha = 0; alpha <= alpha_max; ++alpha) {
      u64 scale = 1;
      for (u64 i = 0; i < 2 * alpha; ++i) scale *= p;
      for (u64 n = 1; n <= n_max; ++n) {
        if (n % (p * p) == 0) continue;
        if (scale > arg_max / n) continue;
        const Int got = r5_scaled(p, alpha, n, r5tab.at(n));
        const Int expected = r5tab.at(scale * n);
        ++report.checked;
        if (got != expected) {
          ++report.violations;
          if (report.counterexamples.size() < kCounterexampleCap) {
            report.counterexamples.push_back({Int(n), Int(scale * n), got, expected});
          }
        }
      }
    }
  }

  // three-square scaling, including the r_3(n / p^2) correction term
  for (u64 p : p_list) {
    for (u64 alpha = 0; alpha <= alpha_max; ++alpha) {
      u64 scale = 1;
      for (u64 i = 0; i < 2 * alpha; ++i) scale *= p;
      for (u64 n = 1; n <= n_max; ++n) {
        if (scale > arg_max / n) continue;
        const Int below = (n % (p * p) == 0) ? r3tab.at(n / (p * p)) : Int(0);
        const Int got = r3_scaled(p, alpha, n, r3tab.at(n), below);
        const Int expected = r3tab.at(scale * n);
        ++report.checked;
        if (got != expected) {
          ++report.violations;
          if (report.counterexamples.size() < kCounterexampleCap) {
            report.counterexamples.push_back({Int(n), Int(scale * n), got, expected});
          }
        }
      }
    }
  }

  // r_k(8n+k) = (2^k + 2^(k-1) C(k,4)) t_k(n) for k = 1..7
  for (int k = 1; k <= 7; ++k) {
    const u64 kk = static_cast<u64>(k);
    const Int factor = int_pow(2, kk) + (k >= 4 ? int_pow(2, kk - 1) * (kk * (kk - 1) * (kk - 2) *
                                                                        (kk - 3) / 24)
                                                : Int(0));
    auto rtab = rk_table(k, 8 * n_max + kk);
    auto ttab = tk_table(k, n_max);
    for (u64 n = 0; n <= n_max; ++n) {
      const Int got = factor * ttab.at(n);
      const Int expected = rtab.at(8 * n + kk);
      ++report.checked;
      if (got != expected) {
        ++report.violations;
        if (report.counterexamples.size() < kCounterexampleCap) {
          report.counterexamples.push_back({Int(n), Int(8 * n + kk), got, expected});
        }
      }
    }
  }

  // t_4(p n + (p-1)/2) == t_4(n) (mod p) and t_8(p n + p - 1) == t_8(n)
  // (mod p^3)
  for (u64 p : p_list) {
    const u64 p3 = p * p * p;
    for (u64 n = 0; n <= n_max; ++n) {
      const u64 got4 = t4_closed(p * n + (p - 1) / 2) % p;
      const u64 exp4 = t4_closed(n) % p;
      ++report.checked;
      if (got4 != exp4) {
        ++report.violations;
        if (report.counterexamples.size() < kCounterexampleCap) {
          report.counterexamples.push_back(
              {Int(n), Int(p * n + (p - 1) / 2), Int(got4), Int(exp4)});
        }
      }
      const u64 got8 = canonical_residue(t8_closed(p * n + p - 1), p3);
      const u64 exp8 = canonical_residue(t8_closed(n), p3);
      ++report.checked;
      if (got8 != exp8) {
        ++report.violations;
        if (report.counterexamples.size() < kCounterexampleCap) {
          report.counterexamples.push_back({Int(n), Int(p * n + p - 1), Int(got8), Int(exp8)});
        }
      }
    }
  }

  report.elapsed_ms = sw.ms();
  return report;
}

std::vector<std::pair<u64, u64>> search_progressions(u64 modulus, u64 step_max, u64 n_max,
                                                     const PodTable& pod, std::size_t jobs) {
  if (modulus < 2) throw std::invalid_argument("search_progressions: modulus must be >= 2");
  if (step_max < 1) throw std::invalid_argument("search_progressions: step_max must be >= 1");
  require_table_compat(pod, modulus, "search_progressions");
  const u64 required = step_max * (n_max + 1) - 1;
  if (Int(required) > pod.limit()) {
    throw std::invalid_argument("search_progressions: pod table covers q^" +
                                std::to_string(pod.limit()) + " but scanning needs q^" +
                                std::to_string(required));
  }

  // one flat residue array makes the scan cache-friendly
  std::vector<u64> residue(required + 1);
  if (pod.domain().is_exact()) {
    const auto& c = pod.values.exact_coeffs();
    for (u64 i = 0; i <= required; ++i) residue[i] = canonical_residue(c[i], modulus);
  } else {
    const auto& c = pod.values.mod_coeffs();
    for (u64 i = 0; i <= required; ++i) residue[i] = c[i] % modulus;
  }

  const auto bounds = chunk_bounds(1, step_max + 1, jobs);
  std::vector<std::vector<std::pair<u64, u64>>> parts(bounds.size());
  parallel_for(0, bounds.size(), bounds.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t ci = lo; ci < hi; ++ci) {
      for (u64 A = bounds[ci].first; A < bounds[ci].second; ++A) {
        for (u64 B = 0; B < A; ++B) {
          bool ok = true;
          for (u64 n = 0; n <= n_max; ++n) {
            if (residue[A * n + B] != 0) {
              ok = false;
              break;
            }
          }
          if (ok) parts[ci].emplace_back(A, B);
        }
      }
    }
  });

  std::vector<std::pair<u64, u64>> out;
  for (auto& part : parts) {
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<VerificationReport> verify_family(const CongruenceFamily& family,
                                              const GridBounds& bounds,
                                              const VerifyOptions& options) {
  std::vector<VerificationReport> reports;

  if (const auto* rel = std::get_if<RelationForm>(&family.form)) {
    if (bounds.p_pin || bounds.alpha_pin || bounds.n_pin) {
      throw std::invalid_argument(family.id + ": family takes no (p, alpha, N) parameters");
    }
    const u64 n_max = options.n_max.value_or(10000);
    const u64 needed = std::max(rel->a * n_max + rel->b, 8 * n_max + static_cast<u64>(rel->k));
    if (needed > options.table_limit) {
      throw std::invalid_argument(family.id + ": sweep needs tables to q^" +
                                  std::to_string(needed) + " but the table limit is " +
                                  std::to_string(options.table_limit) +
                                  "; raise the limit or lower n_max");
    }
    reports.push_back(verify_relation(family.id, n_max, options.jobs));
    return reports;
  }

  if (std::get_if<ProgressionForm>(&family.form) ||
      std::get_if<PowerProgressionForm>(&family.form)) {
    const auto instances = instantiate_grid(family, bounds);
    // power progressions have geometric steps, so the default sweep is
    // shorter to keep the shared table under the cap
    const bool geometric = std::get_if<PowerProgressionForm>(&family.form) != nullptr;
    const u64 n_max = options.n_max.value_or(geometric ? 100 : 500);
    Int needed = 0;
    for (const auto& inst : instances) {
      const Int top = inst.progression->first * n_max + inst.progression->second;
      if (top > needed) needed = top;
    }
    if (needed > options.table_limit) {
      throw std::invalid_argument(family.id + ": sweep needs a pod table to q^" +
                                  to_string(needed) + " but the table limit is " +
                                  std::to_string(options.table_limit) +
                                  "; raise the limit or lower n_max");
    }
    Stopwatch build;
    PodTable pod = pod_table_series(static_cast<std::size_t>(to_u64(needed)),
                                    CoefficientDomain::mod(family.modulus), options.jobs);
    note_table("pod table mod " + std::to_string(family.modulus), pod.limit(), build);
    for (const auto& inst : instances) {
      reports.push_back(verify_progression(inst, n_max, pod, options.jobs));
    }
    return reports;
  }

  // parametric index family
  const auto instances = instantiate_grid(family, bounds);
  if (instances.empty()) {
    throw std::invalid_argument(family.id + ": no admissible instances in the given grid");
  }
  const u64 n_max = options.n_max.value_or(500);

  // size one shared table to the largest direct check that fits the cap
  Int needed = -1;
  for (const auto& inst : instances) {
    if (inst.index) {
      if (*inst.index <= options.table_limit && *inst.index > needed) needed = *inst.index;
    } else if (inst.progression) {
      const Int& B = inst.progression->second;
      if (B > options.table_limit) continue;
      Int top = inst.progression->first * n_max + B;
      if (top > options.table_limit) top = options.table_limit;
      if (top > needed) needed = top;
    }
  }
  std::optional<PodTable> pod;
  if (needed >= 0) {
    Stopwatch build;
    pod = pod_table_series(static_cast<std::size_t>(to_u64(needed)),
                           CoefficientDomain::mod(family.modulus), options.jobs);
    note_table("pod table mod " + std::to_string(family.modulus), pod->limit(), build);
  }
  for (const auto& inst : instances) {
    reports.push_back(
        verify_power_instance(family, inst, pod ? &*pod : nullptr, n_max, options.jobs));
  }
  return reports;
}

}  // namespace podcong
