#pragma once

#include "podcong/verify.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace podcong {

enum class OutputFormat { Text, Csv, Json };

// Accepts "text", "csv", "json"; throws on anything else.
OutputFormat parse_format(const std::string& name);

// One report per line. JSON lines carry a fixed key order:
// family, instance, modulus, n_max, checked, status, counterexamples,
// elapsed_ms. Counterexample values are decimal strings so arbitrarily
// large indices survive any JSON reader. elapsed_ms is reported as 0
// unless with_timing is set, keeping output reproducible across runs.
std::string report_json_line(const VerificationReport& report, bool with_timing);
std::string report_csv_header();
std::string report_csv_line(const VerificationReport& report, bool with_timing);
std::string report_text_block(const VerificationReport& report, bool with_timing);

// table command rows: value is a decimal string (may exceed 64 bits)
std::string table_csv_header();
std::string table_row(OutputFormat format, std::uint64_t n, const std::string& value);

// search command rows
struct SearchHit {
  std::uint64_t step = 0;
  std::uint64_t offset = 0;
  std::uint64_t modulus = 0;
  std::uint64_t n_max = 0;
  std::uint64_t checked = 0;
};

std::string search_csv_header();
std::string search_row(OutputFormat format, const SearchHit& hit);

}  // namespace podcong
