#pragma once

#include "hhgeom/common.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace hhgeom {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the independent stream `stream` under master seed `seed`.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// mt19937_64 plus the few draws the library needs, with portable output
/// (no std distributions, whose algorithms are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double exponential() { return -std::log1p(-uniform()); }
  double normal() {
    // Box-Muller; uses one of the two variates.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  Vector uniform_cube(int n, double lo = -1.0, double hi = 1.0) {
    Vector v(n);
    for (int j = 0; j < n; ++j) v[j] = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

/// Worker threads used by sharded Monte Carlo loops. Results never depend on it.
inline std::atomic<int>& worker_count() {
  static std::atomic<int> jobs{1};
  return jobs;
}

inline constexpr std::size_t kShardSize = 4096;

inline std::size_t shard_count(std::size_t samples) {
  return (samples + kShardSize - 1) / kShardSize;
}

/// Runs fn(shard) for every shard in [0, shards), spread over worker_count() threads.
template <class Fn>
void for_each_shard(std::size_t shards, Fn&& fn) {
  const auto jobs = static_cast<std::size_t>(std::max(1, worker_count().load()));
  if (jobs <= 1 || shards <= 1) {
    for (std::size_t s = 0; s < shards; ++s) fn(s);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(jobs, shards); ++t)
    pool.emplace_back([&] {
      try {
        for (std::size_t s = next++; s < shards; s = next++) fn(s);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = shards;
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hhgeom
