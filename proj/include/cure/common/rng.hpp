#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace cure {

// Deterministic random source. std::mt19937_64 is fully specified by the
// standard, but the distributions on top of it are not, so every draw here
// is implemented explicitly. Identical seeds give identical streams on any
// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Mixes a tag into a seed to derive independent sub-streams. Used to give
  // each (seed, method, round) its own generator so that reordering method
  // lists cannot change any draw.
  static std::uint64_t derive(std::uint64_t seed, std::string_view tag);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform();
  double uniform(double lo, double hi);

  // Uniform integer in [0, n), n >= 1. Rejection sampling, unbiased.
  std::uint64_t uniform_int(std::uint64_t n);

  // Standard normal via Box-Muller; one spare value is cached.
  double normal();

  // Uniform direction on the unit sphere in `dim` dimensions.
  std::vector<double> unit_sphere(std::size_t dim);

  // Fisher-Yates permutation of {0, ..., n-1}.
  std::vector<std::size_t> permutation(std::size_t n);

  // k distinct values sampled from `pool` without replacement, in draw order.
  std::vector<std::size_t> sample_without_replacement(
      const std::vector<std::size_t>& pool, std::size_t k);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace cure
