#ifndef NEARLAP_BENCH_HPP
#define NEARLAP_BENCH_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <new>
#include <string>
#include <vector>

#include "nearlap/errors.hpp"
#include "nearlap/projection.hpp"
#include "nearlap/rng.hpp"
#include "nearlap/synthgen.hpp"

namespace nearlap {

struct BenchRecord {
  std::size_t n = 0;
  std::size_t repeats = 0;
  double median_seconds = 0;
  double min_seconds = 0;
};

struct BenchFailure {
  std::size_t n = 0;
  std::string message;
};

struct BenchConfig {
  std::vector<std::size_t> sizes;
  std::size_t repeats = 5;
  std::uint64_t seed = 0;
  std::size_t k = 10;
  double beta = 0.3;
  double s = 5.0;
};

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// Times nearest_laplacian on one generated instance per size. Only the
// projection call is inside the timed region. Each record (or failure) is
// handed to the callbacks as soon as its size finishes.
inline std::vector<BenchRecord> bench_projection(
    const BenchConfig& cfg, const std::function<void(const BenchRecord&)>& on_record = {},
    const std::function<void(const BenchFailure&)>& on_failure = {}) {
  if (cfg.repeats < 3) throw ValidationError("bench needs at least 3 repeats");
  if (!std::is_sorted(cfg.sizes.begin(), cfg.sizes.end())) throw ValidationError("bench sizes must be ascending");
  for (std::size_t n : cfg.sizes) SynthParams{n, cfg.k, cfg.beta, cfg.s, cfg.seed}.validate();

  std::vector<BenchRecord> out;
  for (std::size_t n : cfg.sizes) {
    try {
      const auto [E, A] = generate_observation({n, cfg.k, cfg.beta, cfg.s, mix_seed(cfg.seed, n)});
      std::vector<double> times;
      times.reserve(cfg.repeats);
      for (std::size_t r = 0; r < cfg.repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        auto result = nearest_laplacian(A, E);
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
      }
      BenchRecord rec{n, cfg.repeats, median_of(times), *std::min_element(times.begin(), times.end())};
      out.push_back(rec);
      if (on_record) on_record(rec);
    } catch (const std::bad_alloc&) {
      if (on_failure) on_failure({n, "allocation failed"});
    } catch (const Error& e) {
      if (on_failure) on_failure({n, e.what()});
    }
  }
  return out;
}

}  // namespace nearlap

#endif  // NEARLAP_BENCH_HPP
