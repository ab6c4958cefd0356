#include "CLI11.hpp"

#include "podcong/arith.hpp"
#include "podcong/families.hpp"
#include "podcong/parallel.hpp"
#include "podcong/pod.hpp"
#include "podcong/report.hpp"
#include "podcong/verify.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace podcong;
using u64 = std::uint64_t;

int emit_reports(const std::vector<VerificationReport>& reports, OutputFormat format,
                 bool timing) {
  if (format == OutputFormat::Csv) std::cout << report_csv_header() << "\n";
  bool all_ok = true;
  for (const auto& r : reports) {
    switch (format) {
      case OutputFormat::Json: std::cout << report_json_line(r, timing) << "\n"; break;
      case OutputFormat::Csv: std::cout << report_csv_line(r, timing) << "\n"; break;
      case OutputFormat::Text: std::cout << report_text_block(r, timing) << "\n"; break;
    }
    all_ok = all_ok && r.verified();
  }
  return all_ok ? 0 : 1;
}

// "A,B,M" with A, B arbitrary-precision and M a machine word
FamilyInstance parse_inline_progression(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  if (parts.size() != 3) {
    throw std::invalid_argument("--progression expects A,B,M; got '" + text + "'");
  }
  const Int A(parts[0]);
  const Int B(parts[1]);
  const u64 M = std::stoull(parts[2]);
  if (A < 1 || B < 0 || M < 2) {
    throw std::invalid_argument("--progression needs A >= 1, B >= 0, M >= 2");
  }
  FamilyInstance inst;
  inst.family_id = "custom";
  inst.modulus = M;
  inst.progression = {A, B};
  inst.text = "pod(" + to_string(A) + "n+" + to_string(B) + ") == 0 (mod " +
              std::to_string(M) + ")";
  return inst;
}

struct VerifyArgs {
  std::string family;
  std::string progression;
  std::optional<u64> n_max;
  u64 limit = 300000;
  std::optional<u64> p, alpha, N;
  u64 p_max = 30, alpha_max = 1, N_max = 200;
  std::string format = "text";
  std::size_t jobs = default_jobs();
  bool timing = false;
};

int run_verify(const VerifyArgs& a) {
  const OutputFormat format = parse_format(a.format);
  if (a.family.empty() == a.progression.empty()) {
    throw std::invalid_argument("verify needs exactly one of --family or --progression");
  }

  if (!a.progression.empty()) {
    FamilyInstance inst = parse_inline_progression(a.progression);
    const u64 n_max = a.n_max.value_or(500);
    const Int needed = inst.progression->first * n_max + inst.progression->second;
    if (needed > a.limit) {
      throw std::invalid_argument("sweep needs a pod table to q^" + to_string(needed) +
                                  " but the table limit is " + std::to_string(a.limit) +
                                  "; raise --limit or lower --n-max");
    }
    PodTable pod = pod_table_series(static_cast<std::size_t>(to_u64(needed)),
                                    CoefficientDomain::mod(inst.modulus), a.jobs);
    return emit_reports({verify_progression(inst, n_max, pod, a.jobs)}, format, a.timing);
  }

  const CongruenceFamily& fam = family_by_id(a.family);
  GridBounds bounds;
  bounds.p_max = a.p_max;
  bounds.alpha_max = a.alpha_max;
  bounds.n_param_max = a.N_max;
  bounds.p_pin = a.p;
  bounds.alpha_pin = a.alpha;
  bounds.n_pin = a.N;
  VerifyOptions options;
  options.n_max = a.n_max;
  options.table_limit = a.limit;
  options.jobs = a.jobs;
  return emit_reports(verify_family(fam, bounds, options), format, a.timing);
}

struct TableArgs {
  std::string kind;
  std::optional<u64> k;
  u64 limit = 0;
  u64 modulus = 0;
  std::string format = "text";
  std::size_t jobs = default_jobs();
};

int run_table(const TableArgs& a) {
  const OutputFormat format = parse_format(a.format);
  const CoefficientDomain dom =
      a.modulus == 0 ? CoefficientDomain::exact() : CoefficientDomain::mod(a.modulus);

  TruncatedSeries values = [&] {
    if (a.kind == "pod") {
      if (a.k) throw std::invalid_argument("--k only applies to t and r tables");
      return pod_table_series(a.limit, dom, a.jobs).values;
    }
    if (a.kind == "t" || a.kind == "r") {
      if (!a.k) throw std::invalid_argument("table --kind " + a.kind + " needs --k");
      const int k = static_cast<int>(*a.k);
      return a.kind == "t" ? tk_table(k, a.limit, dom, a.jobs).values
                           : rk_table(k, a.limit, dom, a.jobs).values;
    }
    throw std::invalid_argument("unknown table kind '" + a.kind + "' (expected pod, t, r)");
  }();

  if (format != OutputFormat::Json) std::cout << table_csv_header() << "\n";
  for (u64 n = 0; n <= a.limit; ++n) {
    const std::string value = dom.is_exact()
                                  ? to_string(values.exact_coeffs()[n])
                                  : std::to_string(values.mod_coeffs()[n]);
    std::cout << table_row(format, n, value) << "\n";
  }
  return 0;
}

struct ReplayArgs {
  std::string identity;
  std::optional<u64> p, alpha;
  u64 trunc = 500;
  std::string format = "text";
  bool timing = false;
};

int run_replay(const ReplayArgs& a) {
  const OutputFormat format = parse_format(a.format);
  ReplayRequest request;
  request.id = a.identity;
  std::replace(request.id.begin(), request.id.end(), '-', '_');
  request.p = a.p;
  request.alpha = a.alpha;
  return emit_reports({replay_identity(request, a.trunc)}, format, a.timing);
}

struct SearchArgs {
  u64 modulus = 0;
  u64 step_max = 0;
  u64 n_max = 200;
  u64 limit = 300000;
  std::string format = "text";
  std::size_t jobs = default_jobs();
};

int run_search(const SearchArgs& a) {
  const OutputFormat format = parse_format(a.format);
  if (a.modulus < 2) throw std::invalid_argument("--modulus must be >= 2");
  if (a.step_max < 1) throw std::invalid_argument("--step-max must be >= 1");
  const u64 required = a.step_max * (a.n_max + 1) - 1;
  if (required > a.limit) {
    throw std::invalid_argument("search needs a pod table to q^" + std::to_string(required) +
                                " but the table limit is " + std::to_string(a.limit) +
                                "; raise --limit or shrink the scan");
  }
  PodTable pod = pod_table_series(required, CoefficientDomain::mod(a.modulus), a.jobs);
  const auto hits = search_progressions(a.modulus, a.step_max, a.n_max, pod, a.jobs);
  if (format == OutputFormat::Csv) std::cout << search_csv_header() << "\n";
  for (const auto& [A, B] : hits) {
    std::cout << search_row(format, {A, B, a.modulus, a.n_max, a.n_max + 1}) << "\n";
  }
  std::cerr << "podcong: " << hits.size() << " progression(s) with all residues 0 (mod "
            << a.modulus << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pod congruence toolkit: residue tables, congruence sweeps, identity replays"};
  app.require_subcommand(1);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "verify a congruence family or progression");
  verify->add_option("--family", va.family, "builtin family id");
  verify->add_option("--progression", va.progression, "inline progression A,B,M");
  verify->add_option("--n-max", va.n_max, "largest n in the sweep");
  verify->add_option("--limit", va.limit, "pod table size cap")->capture_default_str();
  verify->add_option("--p", va.p, "pin the prime parameter");
  verify->add_option("--alpha", va.alpha, "pin the exponent parameter");
  verify->add_option("--N", va.N, "pin the N parameter");
  verify->add_option("--p-max", va.p_max, "grid bound: primes below this")->capture_default_str();
  verify->add_option("--alpha-max", va.alpha_max, "grid bound: exponents up to this")->capture_default_str();
  verify->add_option("--N-max", va.N_max, "grid bound: N below this")->capture_default_str();
  verify->add_option("--format", va.format, "output format: text, csv, json")->capture_default_str();
  verify->add_option("--jobs", va.jobs, "worker threads");
  verify->add_flag("--timing", va.timing, "include measured elapsed_ms in reports");

  TableArgs ta;
  CLI::App* table = app.add_subcommand("table", "emit a coefficient table");
  table->add_option("--kind", ta.kind, "table kind: pod, t, r")->required();
  table->add_option("--k", ta.k, "tuple size for t/r tables (1..8)");
  table->add_option("--limit", ta.limit, "largest n in the table")->required();
  table->add_option("--modulus", ta.modulus, "reduce mod this; 0 means exact")
      ->capture_default_str();
  table->add_option("--format", ta.format, "output format: text, csv, json")->capture_default_str();
  table->add_option("--jobs", ta.jobs, "worker threads");

  ReplayArgs ra;
  CLI::App* replay = app.add_subcommand("replay", "re-derive an identity coefficientwise");
  replay->add_option("--identity", ra.identity,
                     "identity id: palpha, thm1-chain, thm3-chain, t4t8")
      ->required();
  replay->add_option("--p", ra.p, "prime parameter");
  replay->add_option("--alpha", ra.alpha, "exponent parameter");
  replay->add_option("--trunc", ra.trunc, "series truncation order")->capture_default_str();
  replay->add_option("--format", ra.format, "output format: text, csv, json")->capture_default_str();
  replay->add_flag("--timing", ra.timing, "include measured elapsed_ms in reports");

  SearchArgs sa;
  CLI::App* search = app.add_subcommand("search", "scan for vanishing progressions");
  search->add_option("--modulus", sa.modulus, "residue modulus")->required();
  search->add_option("--step-max", sa.step_max, "largest progression step A")->required();
  search->add_option("--n-max", sa.n_max, "entries checked per progression")->capture_default_str();
  search->add_option("--limit", sa.limit, "pod table size cap")->capture_default_str();
  search->add_option("--format", sa.format, "output format: text, csv, json")->capture_default_str();
  search->add_option("--jobs", sa.jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return run_verify(va);
    if (*table) return run_table(ta);
    if (*replay) return run_replay(ra);
    return run_search(sa);
  } catch (const std::exception& e) {
    std::cerr << "podcong: " << e.what() << "\n";
    return 2;
  }
}
