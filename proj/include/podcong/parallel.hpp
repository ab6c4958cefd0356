#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace podcong {

// Number of worker threads to use when the caller does not say: the
// PODCONG_JOBS environment variable if set and positive, otherwise 1.
inline std::size_t default_jobs() {
  if (const char* env = std::getenv("PODCONG_JOBS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

// Splits [begin, end) into fixed contiguous chunks and runs body(lo, hi) on
// each. The chunk boundaries depend only on the range, never on jobs, and
// each chunk writes only to its own slots or its own local state, so results
// are identical for every jobs value.
template <typename Body>
void parallel_for(std::size_t begin, std::size_t end, std::size_t jobs, Body&& body) {
  if (begin >= end) return;
  const std::size_t n = end - begin;
  if (jobs <= 1 || n < 2) {
    body(begin, end);
    return;
  }
  const std::size_t workers = jobs < n ? jobs : n;
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * chunk;
    if (lo >= end) break;
    const std::size_t hi = lo + chunk < end ? lo + chunk : end;
    pool.emplace_back([lo, hi, &body] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

// Chunk layout used when per-chunk results must be merged in order. Returns
// the list of [lo, hi) bounds that parallel_for would use with `jobs`
// workers; callers collect per-chunk output and concatenate by chunk index.
inline std::vector<std::pair<std::size_t, std::size_t>> chunk_bounds(std::size_t begin,
                                                                     std::size_t end,
                                                                     std::size_t jobs) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (begin >= end) return out;
  const std::size_t n = end - begin;
  const std::size_t workers = (jobs <= 1 || n < 2) ? 1 : (jobs < n ? jobs : n);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * chunk;
    if (lo >= end) break;
    out.emplace_back(lo, lo + chunk < end ? lo + chunk : end);
  }
  return out;
}

}  // namespace podcong
