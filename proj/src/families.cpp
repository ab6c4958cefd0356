#include "podcong/families.hpp"

#include "podcong/arith.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace podcong {

namespace {

using u64 = std::uint64_t;

std::string mod_tag(u64 m) { return " (mod " + std::to_string(m) + ")"; }

std::string progression_text(const Int& A, const Int& B, u64 m) {
  return "pod(" + to_string(A) + "n+" + to_string(B) + ") == 0" + mod_tag(m);
}

[[noreturn]] void reject(const std::string& family, const std::string& condition) {
  throw std::invalid_argument(family + ": side condition failed: " + condition);
}

u64 inv_mod8(u64 odd) {
  // odd^2 == 1 (mod 8) for every odd residue
  return (odd % 8) == 0 ? 0 : (odd % 8);
}

std::vector<CongruenceFamily> make_catalog() {
  std::vector<CongruenceFamily> fams;

  fams.push_back({"thm1", 9,
                  "pod(3n+2) == 2*(-1)^(n+1)*r_5(8n+5) (mod 9)",
                  RelationForm{3, 2, 2, 1, 5}});

  fams.push_back({"thm2a", 3,
                  "pod((3*p^(6a+5)*N+1)/8) == 0 (mod 3) for prime p == 1 (mod 3), "
                  "gcd(N,p)=1, p*N == 5 (mod 8)",
                  PowerIndexForm{3, 5, 5, 6, 3, {1}, 5, true}});
  fams.push_back({"thm2b", 9,
                  "pod((3*p^(18a+17)*N+1)/8) == 0 (mod 9) for prime p == 1 (mod 3), "
                  "gcd(N,p)=1, p*N == 5 (mod 8)",
                  PowerIndexForm{3, 5, 17, 18, 3, {1}, 5, true}});
  fams.push_back({"thm2c", 9,
                  "pod((3*p^(4a+3)*N+1)/8) == 0 (mod 9) for prime p == 2 (mod 3), "
                  "gcd(N,p)=1, p*N == 5 (mod 8)",
                  PowerIndexForm{3, 5, 3, 4, 3, {2}, 5, true}});

  fams.push_back({"thm3", 5,
                  "pod(5n+2) == 2*(-1)^n*r_3(8n+3) (mod 5)",
                  RelationForm{5, 2, 2, 0, 3}});

  fams.push_back({"thm4a", 5,
                  "pod(5^(2a+2)*n + (11*5^(2a+1)+1)/8) == 0 (mod 5) for a >= 1",
                  PowerProgressionForm{5, 11, 2, 1}});
  fams.push_back({"thm4b", 5,
                  "pod(5^(2a+2)*n + (19*5^(2a+1)+1)/8) == 0 (mod 5) for a >= 1",
                  PowerProgressionForm{5, 19, 2, 1}});

  fams.push_back({"thm5", 5,
                  "pod((5*p^3*N+1)/8) == 0 (mod 5) for prime p == 4 (mod 5), "
                  "gcd(N,p)=1, p*N == 3 (mod 8)",
                  PowerIndexForm{5, 3, 3, 0, 5, {4}, 3, true}});

  fams.push_back({"thm6a", 5,
                  "pod((5*p^(10a+9)*N+1)/8) == 0 (mod 5) for prime p == 1 (mod 5), "
                  "gcd(N,p)=1, p*N == 3 (mod 8)",
                  PowerIndexForm{5, 3, 9, 10, 5, {1}, 3, true}});
  fams.push_back({"thm6b", 5,
                  "pod((5*p^(8a+7)*N+1)/8) == 0 (mod 5) for prime p == 2,3,4 (mod 5), "
                  "gcd(N,p)=1, p*N == 3 (mod 8)",
                  PowerIndexForm{5, 3, 7, 8, 5, {2, 3, 4}, 3, true}});

  fams.push_back({"hs3", 3,
                  "pod(3^(2a+3)*n + (23*3^(2a+2)+1)/8) == 0 (mod 3) for a >= 0",
                  PowerProgressionForm{3, 23, 3, 0}});

  fams.push_back({"rs135", 5,
                  "pod(135n+8) == pod(135n+107) == pod(135n+116) == 0 (mod 5)",
                  ProgressionForm{{{135, 8}, {135, 107}, {135, 116}}}});
  fams.push_back({"rs567", 7,
                  "pod(567n+260) == pod(567n+449) == 0 (mod 7)",
                  ProgressionForm{{{567, 260}, {567, 449}}}});

  fams.push_back({"lo12", 3,
                  "pod(3n+2) == (-1)^n*r_5(8n+5) (mod 3)",
                  RelationForm{3, 2, 1, 0, 5}});

  return fams;
}

bool p_class_ok(const PowerIndexForm& f, u64 p) {
  if (f.p_class_mod == 0) return true;
  const u64 r = p % f.p_class_mod;
  for (u64 allowed : f.p_class_residues) {
    if (r == allowed) return true;
  }
  return false;
}

std::string p_class_condition(const PowerIndexForm& f) {
  std::ostringstream os;
  os << "p == ";
  for (std::size_t i = 0; i < f.p_class_residues.size(); ++i) {
    if (i) os << ",";
    os << f.p_class_residues[i];
  }
  os << " (mod " << f.p_class_mod << ")";
  return os.str();
}

// Exact index (coeff * p^e * N + 1) / 8 with the divisibility check stated
// rather than assumed.
Int checked_index(const std::string& family, u64 coeff, u64 p, u64 e, const Int& N) {
  Int numerator = Int(coeff) * int_pow(Int(p), e) * N + 1;
  if (numerator % 8 != 0) {
    throw std::logic_error(family + ": index numerator " + to_string(numerator) +
                           " is not divisible by 8");
  }
  return numerator / 8;
}

FamilyInstance instantiate_power_index(const CongruenceFamily& fam, const PowerIndexForm& f,
                                       std::optional<u64> p_opt, std::optional<u64> alpha_opt,
                                       const std::optional<Int>& N_opt) {
  if (!p_opt) reject(fam.id, "p parameter required");
  const u64 p = *p_opt;
  if (p == 2 || !is_prime_u64(p)) reject(fam.id, "p must be an odd prime");
  if (!p_class_ok(f, p)) reject(fam.id, p_class_condition(f));
  u64 alpha = 0;
  if (f.e1 == 0) {
    if (alpha_opt && *alpha_opt != 0) {
      reject(fam.id, "alpha must be 0 (family has no alpha parameter)");
    }
  } else {
    if (!alpha_opt) reject(fam.id, "alpha parameter required");
    alpha = *alpha_opt;
  }
  const u64 e = f.e0 + f.e1 * alpha;

  FamilyInstance inst;
  inst.family_id = fam.id;
  inst.modulus = fam.modulus;
  inst.p = p;
  inst.alpha = alpha;

  std::ostringstream text;
  text << "p=" << p << " alpha=" << alpha;

  if (N_opt) {
    const Int& N = *N_opt;
    if (N < 1) reject(fam.id, "N >= 1");
    if (f.coprime && N % p == 0) reject(fam.id, "gcd(N, p) = 1");
    if ((Int(p) * N) % 8 != f.pn_mod8) {
      reject(fam.id, "p*N == " + std::to_string(f.pn_mod8) + " (mod 8)");
    }
    inst.N = N;
    inst.index = checked_index(fam.id, f.coeff, p, e, N);
    text << " N=" << to_string(N) << ": pod(" << to_string(*inst.index) << ") == 0"
         << mod_tag(fam.modulus);
    inst.text = text.str();
    return inst;
  }

  // N free: all N == N0 (mod 8) (minus the p | N classes) collapse into one
  // progression pod(A t + B) with N = 8t + N0.
  const u64 n0 = (f.pn_mod8 * inv_mod8(p)) % 8;
  const Int step = Int(f.coeff) * int_pow(Int(p), e);
  const Int B = checked_index(fam.id, f.coeff, p, e, Int(n0));
  inst.progression = {step, B};
  if (f.coprime) {
    // skip t with 8t + n0 == 0 (mod p)
    u64 inv8 = 0;
    for (u64 c = 1; c < p; ++c) {
      if ((8 * c) % p == 1) {
        inv8 = c;
        break;
      }
    }
    const u64 t0 = static_cast<u64>((Int(p) - Int(n0) * inv8 % p) % p);
    inst.excluded.push_back({t0, p});
  }
  text << ": " << progression_text(step, B, fam.modulus);
  if (!inst.excluded.empty()) {
    text << ", excluding n == " << inst.excluded[0].first << " (mod " << inst.excluded[0].second
         << ")";
  }
  inst.text = text.str();
  return inst;
}

FamilyInstance instantiate_power_progression(const CongruenceFamily& fam,
                                             const PowerProgressionForm& f,
                                             std::optional<u64> p_opt,
                                             std::optional<u64> alpha_opt,
                                             const std::optional<Int>& N_opt) {
  if (p_opt || N_opt) reject(fam.id, "family takes only the alpha parameter");
  if (!alpha_opt) reject(fam.id, "alpha parameter required");
  const u64 alpha = *alpha_opt;
  if (alpha < f.alpha_min) {
    reject(fam.id, "alpha >= " + std::to_string(f.alpha_min));
  }
  const u64 e = 2 * alpha + f.exp_offset;
  const Int A = int_pow(Int(f.base), e);
  Int numerator = Int(f.mult) * int_pow(Int(f.base), e - 1) + 1;
  if (numerator % 8 != 0) {
    throw std::logic_error(fam.id + ": offset numerator " + to_string(numerator) +
                           " is not divisible by 8");
  }
  const Int B = numerator / 8;

  FamilyInstance inst;
  inst.family_id = fam.id;
  inst.modulus = fam.modulus;
  inst.alpha = alpha;
  inst.progression = {A, B};
  inst.text = "alpha=" + std::to_string(alpha) + ": " + progression_text(A, B, fam.modulus);
  return inst;
}

}  // namespace

const std::vector<CongruenceFamily>& builtin_families() {
  static const std::vector<CongruenceFamily> catalog = make_catalog();
  return catalog;
}

const CongruenceFamily& family_by_id(const std::string& id) {
  for (const auto& fam : builtin_families()) {
    if (fam.id == id) return fam;
  }
  std::string known;
  for (const auto& fam : builtin_families()) {
    if (!known.empty()) known += ", ";
    known += fam.id;
  }
  throw std::invalid_argument("unknown family id '" + id + "' (known: " + known + ")");
}

FamilyInstance instantiate(const CongruenceFamily& family, std::optional<std::uint64_t> p,
                           std::optional<std::uint64_t> alpha, std::optional<Int> N) {
  if (const auto* f = std::get_if<PowerIndexForm>(&family.form)) {
    return instantiate_power_index(family, *f, p, alpha, N);
  }
  if (const auto* f = std::get_if<PowerProgressionForm>(&family.form)) {
    return instantiate_power_progression(family, *f, p, alpha, N);
  }
  throw std::invalid_argument(family.id + ": family is not parametric");
}

std::vector<FamilyInstance> instantiate_grid(const CongruenceFamily& family,
                                             const GridBounds& bounds) {
  std::vector<FamilyInstance> out;

  if (const auto* f = std::get_if<ProgressionForm>(&family.form)) {
    if (bounds.p_pin || bounds.alpha_pin || bounds.n_pin) {
      throw std::invalid_argument(family.id + ": family takes no (p, alpha, N) parameters");
    }
    for (const auto& [A, B] : f->progressions) {
      FamilyInstance inst;
      inst.family_id = family.id;
      inst.modulus = family.modulus;
      inst.progression = {Int(A), Int(B)};
      inst.text = progression_text(Int(A), Int(B), family.modulus);
      out.push_back(std::move(inst));
    }
    return out;
  }

  if (std::get_if<RelationForm>(&family.form)) {
    if (bounds.p_pin || bounds.alpha_pin || bounds.n_pin) {
      throw std::invalid_argument(family.id + ": family takes no (p, alpha, N) parameters");
    }
    FamilyInstance inst;
    inst.family_id = family.id;
    inst.modulus = family.modulus;
    inst.text = family.statement;
    out.push_back(std::move(inst));
    return out;
  }

  if (const auto* f = std::get_if<PowerProgressionForm>(&family.form)) {
    if (bounds.p_pin || bounds.n_pin) {
      throw std::invalid_argument(family.id + ": family takes only the alpha parameter");
    }
    if (bounds.alpha_pin) {
      out.push_back(instantiate(family, std::nullopt, bounds.alpha_pin, std::nullopt));
      return out;
    }
    for (u64 a = f->alpha_min; a <= bounds.alpha_max; ++a) {
      out.push_back(instantiate(family, std::nullopt, a, std::nullopt));
    }
    return out;
  }

  const auto& f = std::get<PowerIndexForm>(family.form);

  std::vector<u64> ps;
  if (bounds.p_pin) {
    ps.push_back(*bounds.p_pin);  // instantiate validates and names failures
  } else {
    for (u64 p = 3; p < bounds.p_max; p += 2) {
      if (is_prime_u64(p) && p_class_ok(f, p)) ps.push_back(p);
    }
  }
  std::vector<u64> alphas;
  if (f.e1 == 0) {
    alphas.push_back(0);
    if (bounds.alpha_pin && *bounds.alpha_pin != 0) alphas = {*bounds.alpha_pin};  // will reject
  } else if (bounds.alpha_pin) {
    alphas.push_back(*bounds.alpha_pin);
  } else {
    for (u64 a = 0; a <= bounds.alpha_max; ++a) alphas.push_back(a);
  }

  for (u64 p : ps) {
    for (u64 alpha : alphas) {
      if (bounds.n_pin) {
        out.push_back(instantiate(family, p, alpha, bounds.n_pin));
        continue;
      }
      if (bounds.p_pin) {
        // p fixed, N free: the derived progression covers the whole class
        out.push_back(instantiate(family, p, alpha, std::nullopt));
        continue;
      }
      // enumerate admissible N below the bound
      const u64 n0 = (f.pn_mod8 * inv_mod8(p)) % 8;
      for (Int N = n0; N < bounds.n_param_max; N += 8) {
        if (N == 0) continue;
        if (f.coprime && N % p == 0) continue;
        out.push_back(instantiate(family, p, alpha, N));
      }
    }
  }
  return out;
}

}  // namespace podcong
