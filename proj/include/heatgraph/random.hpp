#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace heatgraph {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream key from a master seed and a path of
/// task indices, e.g. derive_key(seed, {repetition, sample, pair}).
std::uint64_t derive_key(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// xoshiro256** 1.0 (Blackman & Vigna), seeded through SplitMix64.
///
/// All sampling helpers are implemented here rather than through <random>
/// distributions, whose output is implementation-defined; a seed therefore
/// reproduces the same stream on every platform.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);
  Rng(std::uint64_t master, std::initializer_list<std::uint64_t> path)
      : Rng(derive_key(master, path)) {}

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on the open interval (0, 1).
  double uniform_open();
  double uniform(double a, double b) { return a + (b - a) * uniform_open(); }
  // Uniform integer in [0, bound); bound > 0. Unbiased (Lemire).
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p) { return uniform() < p; }
  // Poisson by sequential multiplication of uniforms; fine for mean <= ~500.
  std::uint64_t poisson(double mean);

 private:
  std::array<std::uint64_t, 4> s_;
};

}  // namespace heatgraph
