#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace offload {

// Deterministic randomness. Every draw is built from raw 64-bit engine
// output so streams are identical across standard library implementations.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// FNV-1a; used to fold identifiers into seeds.
inline std::uint64_t hash_name(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b));
}

// [0, 1) with 53 bits of resolution.
inline double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return to_unit(engine_()); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n));
  }

 private:
  std::mt19937_64 engine_;
};

// Stateless draws keyed by (seed, key, tick); order of evaluation never
// changes the value.
inline double keyed_uniform(std::uint64_t seed, std::uint64_t key,
                            std::uint64_t tick) {
  return to_unit(mix_seed(mix_seed(seed, key), tick));
}

inline double keyed_normal(std::uint64_t seed, std::uint64_t key,
                           std::uint64_t tick) {
  // Box-Muller on two keyed uniforms.
  const double u1 = 1.0 - keyed_uniform(seed, key, 2 * tick);
  const double u2 = keyed_uniform(seed, key, 2 * tick + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace offload
