#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace msed {

// Deterministic random source. Distribution sampling is implemented here
// rather than via <random> distributions so that output depends only on the
// seed, not on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // uniform integer in [lo, hi] inclusive
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  double exponential() { return -std::log1p(-uniform()); }

  // arrival counting; exact for any mean
  int poisson(double mean) {
    int count = 0;
    double t = exponential();
    while (t < mean) {
      ++count;
      t += exponential();
    }
    return count;
  }

  // index sampled proportionally to cumulative weights (non-decreasing,
  // last entry is the total)
  std::size_t discrete(const std::vector<double>& cumulative) {
    const double u = uniform() * cumulative.back();
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cumulative[mid] <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return lo;
  }

  // decorrelated child stream, e.g. one per trial or simulation
  Rng spawn(std::uint64_t stream) {
    return Rng(engine_() ^ (stream * 0x9E3779B97F4A7C15ull));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace msed
