#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "podcong/arith.hpp"
#include "podcong/families.hpp"

#include <algorithm>
#include <functional>
#include <set>

using namespace podcong;
using u64 = std::uint64_t;

namespace {

FamilyInstance inst_of(const std::string& id, std::optional<u64> p, std::optional<u64> alpha,
                       std::optional<Int> N) {
  return instantiate(family_by_id(id), p, alpha, N);
}

bool throws_mentioning(const std::function<void()>& fn, const std::string& needle) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("catalog has unique ids and stable statements") {
  const auto& fams = builtin_families();
  CHECK(fams.size() == 14);
  std::set<std::string> ids;
  for (const auto& f : fams) {
    CHECK(f.modulus >= 2);
    CHECK(!f.statement.empty());
    CHECK(ids.insert(f.id).second);
  }
  for (const char* id : {"thm1", "thm2a", "thm2b", "thm2c", "thm3", "thm4a", "thm4b", "thm5",
                         "thm6a", "thm6b", "hs3", "rs135", "rs567", "lo12"}) {
    CHECK(family_by_id(id).id == id);
  }
  CHECK(family_by_id("thm1").statement == "pod(3n+2) == 2*(-1)^(n+1)*r_5(8n+5) (mod 9)");
  CHECK(family_by_id("thm1").modulus == 9);
  CHECK(family_by_id("lo12").modulus == 3);
  CHECK(family_by_id("rs567").modulus == 7);
}

TEST_CASE("unknown ids are rejected naming the catalog") {
  CHECK(throws_mentioning([] { family_by_id("nope"); }, "unknown family id"));
  CHECK(throws_mentioning([] { family_by_id("nope"); }, "thm1"));
}

TEST_CASE("fixed progression families instantiate to their listed progressions") {
  const auto insts = instantiate_grid(family_by_id("rs135"), {});
  REQUIRE(insts.size() == 3);
  const std::vector<std::pair<Int, Int>> expect = {{135, 8}, {135, 107}, {135, 116}};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(insts[i].progression == expect[i]);
    CHECK(insts[i].modulus == 5);
    CHECK(insts[i].excluded.empty());
  }
  CHECK(insts[0].text == "pod(135n+8) == 0 (mod 5)");

  const auto rs = instantiate_grid(family_by_id("rs567"), {});
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].progression == std::pair<Int, Int>{567, 260});
  CHECK(rs[1].progression == std::pair<Int, Int>{567, 449});
}

TEST_CASE("fixed families reject parameters") {
  CHECK(throws_mentioning([] { inst_of("rs135", 5, {}, {}); }, "not parametric"));
  CHECK(throws_mentioning([] { inst_of("thm1", {}, 1, {}); }, "not parametric"));
  GridBounds pinned;
  pinned.p_pin = 5;
  CHECK(throws_mentioning([&] { instantiate_grid(family_by_id("thm1"), pinned); },
                          "takes no (p, alpha, N)"));
}

TEST_CASE("power progressions: index arithmetic and alpha bounds") {
  // A = base^(2a+off), B = (mult * base^(2a+off-1) + 1) / 8
  auto h0 = inst_of("hs3", {}, 0, {});
  CHECK(h0.progression == std::pair<Int, Int>{27, 26});
  auto h1 = inst_of("hs3", {}, 1, {});
  CHECK(h1.progression == std::pair<Int, Int>{243, 233});
  CHECK(h1.text == "alpha=1: pod(243n+233) == 0 (mod 3)");

  auto a1 = inst_of("thm4a", {}, 1, {});
  CHECK(a1.progression == std::pair<Int, Int>{625, 172});
  auto a2 = inst_of("thm4a", {}, 2, {});
  CHECK(a2.progression == std::pair<Int, Int>{15625, 4297});
  auto b1 = inst_of("thm4b", {}, 1, {});
  CHECK(b1.progression == std::pair<Int, Int>{625, 297});
  auto b2 = inst_of("thm4b", {}, 2, {});
  CHECK(b2.progression == std::pair<Int, Int>{15625, 7422});

  // 8B - 1 recovers mult * base^(2a+off-1) exactly
  for (const auto& inst : {h0, h1, a1, a2, b1, b2}) {
    const Int A = inst.progression->first;
    const Int B = inst.progression->second;
    const auto& fam = family_by_id(inst.family_id);
    const auto& form = std::get<PowerProgressionForm>(fam.form);
    CHECK((B * 8 - 1) * form.base == Int(form.mult) * A);
  }

  CHECK(throws_mentioning([] { inst_of("thm4a", {}, 0, {}); }, "alpha >= 1"));
  CHECK(throws_mentioning([] { inst_of("thm4a", {}, {}, {}); }, "alpha parameter required"));
  CHECK(throws_mentioning([] { inst_of("hs3", 3, 0, {}); }, "only the alpha parameter"));
}

TEST_CASE("parametric index families: explicit N gives the checked single index") {
  auto i1 = inst_of("thm2c", 5, 0, Int(1));
  CHECK(i1.index == Int(47));
  CHECK(i1.modulus == 9);
  CHECK(i1.text == "p=5 alpha=0 N=1: pod(47) == 0 (mod 9)");
  CHECK(inst_of("thm2c", 5, 0, Int(9)).index == Int(422));
  CHECK(inst_of("thm2c", 5, 0, Int(17)).index == Int(797));
  CHECK(inst_of("thm2a", 7, 0, Int(3)).index == Int(18908));
  CHECK(inst_of("thm2a", 7, 0, Int(3)).modulus == 3);

  // 8 * index - 1 == coeff * p^e * N even when the index exceeds 64 bits
  auto big = inst_of("thm2b", 19, 0, Int(7));
  CHECK(*big.index * 8 - 1 == Int(3) * int_pow(Int(19), 17) * 7);
  CHECK(*big.index > Int("18446744073709551615"));

  auto t5 = inst_of("thm5", 19, 0, Int(1));
  CHECK(t5.index == Int(4287));
  auto t6 = inst_of("thm6b", 3, 0, Int(1));
  CHECK(t6.index == Int(1367));
  CHECK(inst_of("thm6b", 7, 0, Int(5)).index == Int(2573572));
  CHECK(inst_of("thm6b", 13, 0, Int(7)).index == Int(274524762));
}

TEST_CASE("parametric index families: free N collapses to a derived progression") {
  auto d = inst_of("thm2c", 5, 0, {});
  CHECK(d.progression == std::pair<Int, Int>{375, 47});
  REQUIRE(d.excluded.size() == 1);
  CHECK(d.excluded[0] == std::pair<u64, u64>{3, 5});
  CHECK(d.text == "p=5 alpha=0: pod(375n+47) == 0 (mod 9), excluding n == 3 (mod 5)");

  auto t5 = inst_of("thm5", 19, 0, {});
  CHECK(t5.progression == std::pair<Int, Int>{34295, 4287});
  REQUIRE(t5.excluded.size() == 1);
  CHECK(t5.excluded[0] == std::pair<u64, u64>{7, 19});

  // every skipped t really is the p | N class and no admissible t is skipped
  for (u64 t = 0; t < 40; ++t) {
    const Int N = 8 * t + 1;  // thm5 p=19: p*N == 3 (mod 8) forces N == 1 (mod 8)
    const bool divisible = N % 19 == 0;
    const bool skipped = t % t5.excluded[0].second == t5.excluded[0].first;
    CHECK(divisible == skipped);
  }
}

TEST_CASE("parametric index families: side conditions rejected by name") {
  CHECK(throws_mentioning([] { inst_of("thm2a", {}, 0, Int(1)); }, "p parameter required"));
  CHECK(throws_mentioning([] { inst_of("thm2a", 4, 0, Int(1)); }, "odd prime"));
  CHECK(throws_mentioning([] { inst_of("thm2a", 2, 0, Int(1)); }, "odd prime"));
  CHECK(throws_mentioning([] { inst_of("thm2a", 5, 0, Int(1)); }, "p == 1 (mod 3)"));
  CHECK(throws_mentioning([] { inst_of("thm2c", 7, 0, Int(1)); }, "p == 2 (mod 3)"));
  CHECK(throws_mentioning([] { inst_of("thm6b", 11, 0, Int(1)); }, "p == 2,3,4 (mod 5)"));
  CHECK(throws_mentioning([] { inst_of("thm5", 7, 0, Int(1)); }, "p == 4 (mod 5)"));
  CHECK(throws_mentioning([] { inst_of("thm2c", 5, {}, Int(1)); }, "alpha parameter required"));
  CHECK(throws_mentioning([] { inst_of("thm2c", 5, 0, Int(0)); }, "N >= 1"));
  CHECK(throws_mentioning([] { inst_of("thm2c", 5, 0, Int(2)); }, "p*N == 5 (mod 8)"));
  CHECK(throws_mentioning([] { inst_of("thm5", 19, 0, Int(3)); }, "p*N == 3 (mod 8)"));
  // the coprimality clause: p | N slips every stated residue condition yet
  // the congruence fails in practice, so instantiation refuses it
  CHECK(throws_mentioning([] { inst_of("thm2c", 5, 0, Int(25)); }, "gcd(N, p) = 1"));
  CHECK(throws_mentioning([] { inst_of("thm2a", 7, 0, Int(35)); }, "gcd(N, p) = 1"));
}

TEST_CASE("grid enumeration matches an independent recount of admissible triples") {
  for (const char* id : {"thm2a", "thm2c", "thm6b"}) {
    const auto& fam = family_by_id(id);
    const auto& form = std::get<PowerIndexForm>(fam.form);
    GridBounds bounds;  // defaults: p < 30, alpha <= 1, N < 200
    const auto insts = instantiate_grid(fam, bounds);

    std::vector<std::tuple<u64, u64, Int>> expect;
    for (u64 p = 3; p < bounds.p_max; p += 2) {
      if (!is_prime_u64(p)) continue;
      const u64 r = p % form.p_class_mod;
      if (std::find(form.p_class_residues.begin(), form.p_class_residues.end(), r) ==
          form.p_class_residues.end()) {
        continue;
      }
      for (u64 alpha = 0; alpha <= bounds.alpha_max; ++alpha) {
        for (u64 N = 1; N < bounds.n_param_max; ++N) {
          if ((p * N) % 8 != form.pn_mod8) continue;
          if (N % p == 0) continue;
          expect.emplace_back(p, alpha, Int(N));
        }
      }
    }
    REQUIRE(insts.size() == expect.size());
    for (std::size_t i = 0; i < insts.size(); ++i) {
      CHECK(insts[i].p == std::get<0>(expect[i]));
      CHECK(insts[i].alpha == std::get<1>(expect[i]));
      CHECK(insts[i].N == std::get<2>(expect[i]));
      REQUIRE(insts[i].index.has_value());
      const u64 e = form.e0 + form.e1 * *insts[i].alpha;
      CHECK(*insts[i].index * 8 - 1 ==
            Int(form.coeff) * int_pow(Int(*insts[i].p), e) * *insts[i].N);
    }
  }
}

TEST_CASE("grid pinning: p alone gives derived progressions, full pins give one index") {
  GridBounds pin_p;
  pin_p.p_pin = 5;
  const auto derived = instantiate_grid(family_by_id("thm2c"), pin_p);
  REQUIRE(derived.size() == 2);  // alpha = 0, 1
  CHECK(derived[0].progression.has_value());
  CHECK(derived[1].progression.has_value());
  CHECK(derived[0].progression->first == 375);
  CHECK(derived[1].progression->first == Int(3) * int_pow(Int(5), 7));

  GridBounds full;
  full.p_pin = 5;
  full.alpha_pin = 0;
  full.n_pin = Int(9);
  const auto one = instantiate_grid(family_by_id("thm2c"), full);
  REQUIRE(one.size() == 1);
  CHECK(one[0].index == Int(422));

  GridBounds bad;
  bad.p_pin = 4;
  CHECK(throws_mentioning([&] { instantiate_grid(family_by_id("thm2c"), bad); }, "odd prime"));
}
