#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "mecwave/rng.hpp"
#include "mecwave/scenario.hpp"
#include "mecwave/sysmodel.hpp"

namespace mecwave {

// Gene groups in their canonical order. Integer groups hold whole numbers
// after repair. Positional genes are 1-based: bs 1 is the MBS, bs s+1 is SBS s.
enum class Gene : int { mu, n_sub, bs, crypto, power, z_first, z_second, channel, d_first, d_second };
inline constexpr int kNumGroups = 10;
inline constexpr std::array<Gene, kNumGroups> kGroups{Gene::mu,    Gene::n_sub,   Gene::bs,       Gene::crypto,
                                                      Gene::power, Gene::z_first, Gene::z_second, Gene::channel,
                                                      Gene::d_first, Gene::d_second};

constexpr bool is_integer(Gene g) {
  return g == Gene::n_sub || g == Gene::bs || g == Gene::crypto || g == Gene::channel;
}
constexpr bool is_per_task(Gene g) {
  return g == Gene::crypto || g == Gene::z_first || g == Gene::z_second || g == Gene::d_first ||
         g == Gene::d_second;
}
const char* gene_name(Gene g);

struct Wave {
  std::array<std::vector<double>, kNumGroups> genes;
  int height = 0;

  std::vector<double>& operator[](Gene g) { return genes[static_cast<std::size_t>(g)]; }
  const std::vector<double>& operator[](Gene g) const { return genes[static_cast<std::size_t>(g)]; }

  // Position equality; height is bookkeeping and ignored.
  bool same_genes(const Wave& other) const { return genes == other.genes; }
  friend bool operator==(const Wave&, const Wave&) = default;
};

// Static box per gene. Two bounds move with the wave itself and are applied in
// repair: channel <= n_sub and d_second <= d_first. Here their static caps are
// N^max and the task size.
struct Bounds {
  int num_md = 0;
  int num_tasks = 0;
  int num_sbs = 0;
  int num_crypto = 0;
  int max_subchannels = 0;
  double epsilon = 0.0;
  double one_minus = 0.0;
  std::array<std::vector<double>, kNumGroups> lo;
  std::array<std::vector<double>, kNumGroups> hi;
  std::array<double, kNumGroups> diagonal{};

  int num_virtual() const { return num_md * num_tasks; }
  std::size_t group_size(Gene g) const {
    return static_cast<std::size_t>(is_per_task(g) ? num_virtual() : (g == Gene::mu || g == Gene::n_sub) ? 1 : num_md);
  }
  double lower(Gene g, std::size_t i) const { return lo[static_cast<std::size_t>(g)][i]; }
  double upper(Gene g, std::size_t i) const { return hi[static_cast<std::size_t>(g)][i]; }
  // Upper bound given the rest of the wave (channel and d_second are coupled).
  double upper(Gene g, std::size_t i, const Wave& w) const;
};

Bounds make_bounds(const Scenario& scenario);

// Column-major (MATLAB ind2sub) mapping, 1-based: i -> (u, k).
std::pair<int, int> virtual_index(int i, int U, int K);
// 0-based helpers used internally: virtual slot v holds task k of MD u.
inline int virtual_slot(int u, int k, int U) { return k * U + u; }

Wave init_wave(const Bounds& bounds, Rng& rng, int height);

void repair_in_place(Wave& wave, const Bounds& bounds);
Wave repair_wave(Wave wave, const Bounds& bounds);
bool is_repaired(const Wave& wave, const Bounds& bounds);

Solution decode(const Wave& wave, const Bounds& bounds);
Wave encode(const Solution& solution, const Bounds& bounds, int height = 0);

// Best wave as a JSON object, groups in canonical order.
std::string wave_to_json(const Wave& wave);

}  // namespace mecwave
