#pragma once

#include <cstdint>
#include <random>

namespace mecwave {

using Rng = std::mt19937_64;

// One named stream per purpose. Streams never share state, so the order in
// which fitness evaluations complete cannot perturb any draw.
enum class Stream : std::uint64_t {
  sbs_placement = 1,
  md_placement,
  clustering,
  init,
  selection,
  diversity,
  crossover,
  mutation,
  refraction,
  breaking,
  propagation,
  experiment,
};

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return mix64(mix64(mix64(master) ^ a) ^ (b * 0xd1b54a32d192ed03ULL));
}

inline Rng make_stream(std::uint64_t master, Stream stream, std::uint64_t index = 0) {
  return Rng{derive_seed(master, static_cast<std::uint64_t>(stream), index)};
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Inclusive on both ends.
inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double standard_normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

}  // namespace mecwave
