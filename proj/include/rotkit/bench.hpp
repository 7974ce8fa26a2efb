#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <vector>

#include "rotkit/approx.hpp"
#include "rotkit/tree.hpp"

namespace rotkit {

struct TimingRow {
  std::size_t n = 0;
  std::size_t samples = 0;
  double mean_ms = 0;
  double median_ms = 0;
};

/// Wall time of distance_bounds plus approx_sequence over `samples` random
/// pairs of size n. Pair i uses seeds seed+2i and seed+2i+1; generating the
/// trees is not timed.
inline TimingRow time_bounds_and_sequence(std::size_t n, std::size_t samples, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  std::vector<double> ms;
  ms.reserve(samples);
  std::size_t sink = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto s = random_tree(n, seed + 2 * i);
    const auto t = random_tree(n, seed + 2 * i + 1);
    const auto start = Clock::now();
    const auto bounds = distance_bounds(s, t);
    const auto seq = approx_sequence(s, t);
    const auto stop = Clock::now();
    sink += bounds.upper + seq.size();
    ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }
  TimingRow row{n, samples, 0, 0};
  if (ms.empty()) return row;
  row.mean_ms = std::accumulate(ms.begin(), ms.end(), 0.0) / static_cast<double>(ms.size());
  std::sort(ms.begin(), ms.end());
  row.median_ms = ms.size() % 2 ? ms[ms.size() / 2] : (ms[ms.size() / 2 - 1] + ms[ms.size() / 2]) / 2;
  // Keeps the timed calls observable.
  if (sink == static_cast<std::size_t>(-1)) row.samples = 0;
  return row;
}

}  // namespace rotkit
