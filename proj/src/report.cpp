#include "podcong/report.hpp"

#include "json.hpp"

#include <sstream>
#include <stdexcept>

namespace podcong {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* status_word(const VerificationReport& r) {
  return r.verified() ? "verified" : "falsified";
}

// RFC 4180 quoting; instance text contains commas routinely
std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format '" + name + "' (expected text, csv, json)");
}

std::string report_json_line(const VerificationReport& report, bool with_timing) {
  ordered_json j;
  j["family"] = report.family;
  j["instance"] = report.instance;
  j["modulus"] = report.modulus;
  j["n_max"] = report.n_max;
  j["checked"] = report.checked;
  j["status"] = status_word(report);
  ordered_json cexs = ordered_json::array();
  for (const auto& c : report.counterexamples) {
    ordered_json e;
    e["n"] = to_string(c.n);
    e["index"] = to_string(c.index);
    e["pod"] = to_string(c.got);
    e["expected"] = to_string(c.expected);
    cexs.push_back(std::move(e));
  }
  j["counterexamples"] = std::move(cexs);
  j["elapsed_ms"] = with_timing ? report.elapsed_ms : 0;
  return j.dump();
}

std::string report_csv_header() {
  return "family,instance,modulus,n_max,checked,status,violations,elapsed_ms";
}

std::string report_csv_line(const VerificationReport& report, bool with_timing) {
  std::ostringstream os;
  os << csv_quote(report.family) << ',' << csv_quote(report.instance) << ',' << report.modulus
     << ',' << report.n_max << ',' << report.checked << ',' << status_word(report) << ','
     << report.violations << ',' << (with_timing ? report.elapsed_ms : 0);
  return os.str();
}

std::string report_text_block(const VerificationReport& report, bool with_timing) {
  std::ostringstream os;
  os << '[' << status_word(report) << "] " << report.family << " | " << report.instance
     << " | modulus=" << report.modulus << " n_max=" << report.n_max
     << " checked=" << report.checked;
  if (report.violations > 0) os << " violations=" << report.violations;
  if (with_timing) os << " elapsed_ms=" << report.elapsed_ms;
  for (const auto& c : report.counterexamples) {
    os << "\n    counterexample n=" << to_string(c.n) << " index=" << to_string(c.index)
       << " pod=" << to_string(c.got) << " expected=" << to_string(c.expected);
  }
  return os.str();
}

std::string table_csv_header() { return "n,value"; }

std::string table_row(OutputFormat format, std::uint64_t n, const std::string& value) {
  if (format == OutputFormat::Json) {
    ordered_json j;
    j["n"] = n;
    j["value"] = value;
    return j.dump();
  }
  return std::to_string(n) + "," + value;
}

std::string search_csv_header() { return "step,offset,modulus,n_max,checked"; }

std::string search_row(OutputFormat format, const SearchHit& hit) {
  if (format == OutputFormat::Json) {
    ordered_json j;
    j["step"] = hit.step;
    j["offset"] = hit.offset;
    j["modulus"] = hit.modulus;
    j["n_max"] = hit.n_max;
    j["checked"] = hit.checked;
    return j.dump();
  }
  if (format == OutputFormat::Csv) {
    std::ostringstream os;
    os << hit.step << ',' << hit.offset << ',' << hit.modulus << ',' << hit.n_max << ','
       << hit.checked;
    return os.str();
  }
  std::ostringstream os;
  os << hit.step << ',' << hit.offset << " (mod " << hit.modulus << ") n_max=" << hit.n_max
     << " checked=" << hit.checked;
  return os.str();
}

}  // namespace podcong
