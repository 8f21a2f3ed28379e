#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mecwave {

struct Range {
  double min = 0.0;
  double max = 0.0;

  friend bool operator==(const Range&, const Range&) = default;
};

// Cycle-count model of a (de)compressor: cycles per raw bit = scale * ratio^exponent + offset.
struct CodecCoefficients {
  double scale = 0.0;
  double exponent = 0.0;
  double offset = 0.0;

  friend bool operator==(const CodecCoefficients&, const CodecCoefficients&) = default;
};

struct CryptoAlgorithm {
  double encrypt_cycles_per_bit = 0.0;
  double decrypt_cycles_per_bit = 0.0;
  double energy_per_bit_j = 0.0;  // same for encryption and decryption
  double security_level = 0.0;

  friend bool operator==(const CryptoAlgorithm&, const CryptoAlgorithm&) = default;
};

enum class Tier { macro, small };

// All quantities in SI units (bits, Hz, s, W, J, cycles). README lists the
// defaults and the modelling choices behind the less obvious ones.
struct ScenarioParams {
  double macrocell_radius_km = 0.5;
  double min_distance_km = 0.01;

  int num_sbs = 20;
  int num_md = 20;
  int num_tasks_per_md = 3;
  int num_clusters = 6;
  int max_subchannels = 5;

  double system_bandwidth_hz = 20e6;
  double noise_power_w = 1e-14;  // 1e-11 mW
  double backhaul_rate_bps = 1e9;
  double wired_power_w = 1e-3;
  double md_max_power_w = 0.19952623149688797;  // 23 dBm
  double md_cpu_hz = 1e9;
  double sbs_cpu_hz = 20e9;
  double mbs_cpu_hz = 20e9;
  double bs_energy_per_cycle_j = 1e-9;  // 1 W/GHz
  double switched_capacitance = 1e-25;
  double codec_xi = 50.0;

  CodecCoefficients md_compress{1.027e-15, 32.28, 0.3};
  CodecCoefficients bs_compress{0.076, 0.7116, 0.5794};
  CodecCoefficients bs_decompress{0.115, -0.9179, 0.046};

  Range z_first{2.3, 2.9};
  Range z_second{3.4, 11.2};

  Range task_size_bits{200.0 * 8192.0, 500.0 * 8192.0};
  Range cycles_per_bit{50.0, 100.0};
  Range deadline_s{5.0, 10.0};
  Range breach_loss{1000.0, 5000.0};
  Range breach_budget{5000.0, 10000.0};
  Range risk_coefficient{1.0, 3.0};
  std::vector<double> expected_levels{5.0, 6.0};

  std::vector<CryptoAlgorithm> crypto{
      {100.0, 90.0, 2.5296e-7, 1.0},  {200.0, 280.0, 5.0425e-7, 2.0},
      {250.0, 350.0, 6.837e-7, 3.0},  {300.0, 300.0, 7.8528e-7, 4.0},
      {350.0, 400.0, 8.7073e-7, 5.0}, {1050.0, 1700.0, 26.3643e-7, 6.0},
  };

  double shadowing_std_db = 8.0;
  double epsilon = 1e-6;              // lower clamp for fractions, powers and sizes
  double one_minus = 1.0 - 1e-6;      // upper clamp for the band split

  int num_crypto() const { return static_cast<int>(crypto.size()); }

  friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

// Throws ConfigError on zero counts, inverted ranges, or inconsistent sizes.
void validate(const ScenarioParams& params);

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct TaskParams {
  double size_bits = 0.0;
  double cycles_per_bit = 0.0;
  double expected_level = 0.0;
  double risk = 0.0;
  double loss = 0.0;

  friend bool operator==(const TaskParams&, const TaskParams&) = default;
};

struct DeviceParams {
  double deadline_s = 0.0;
  double breach_budget = 0.0;
  double cpu_hz = 0.0;
  double max_power_w = 0.0;

  friend bool operator==(const DeviceParams&, const DeviceParams&) = default;
};

// Immutable network instance. Base station 0 is the MBS, 1..num_sbs are SBSs.
struct Scenario {
  ScenarioParams params;
  std::vector<Point> md_positions;
  std::vector<Point> bs_positions;
  std::vector<double> gains;         // row-major, num_md x num_bs, linear
  std::vector<int> cluster_of_sbs;   // entry s-1 holds the cluster of SBS s, in [1, L]
  std::vector<TaskParams> tasks;     // row-major, num_md x K
  std::vector<DeviceParams> devices;

  int num_md() const { return static_cast<int>(md_positions.size()); }
  int num_sbs() const { return static_cast<int>(bs_positions.size()) - 1; }
  int num_bs() const { return static_cast<int>(bs_positions.size()); }
  int num_tasks() const { return params.num_tasks_per_md; }
  int num_clusters() const { return params.num_clusters; }
  int num_crypto() const { return params.num_crypto(); }

  double gain(int md, int bs) const { return gains[static_cast<std::size_t>(md * num_bs() + bs)]; }
  const TaskParams& task(int md, int k) const {
    return tasks[static_cast<std::size_t>(md * num_tasks() + k)];
  }
  const DeviceParams& device(int md) const { return devices[static_cast<std::size_t>(md)]; }
  int cluster_of(int bs) const { return cluster_of_sbs[static_cast<std::size_t>(bs - 1)]; }
  double bs_cpu_hz(int bs) const { return bs == 0 ? params.mbs_cpu_hz : params.sbs_cpu_hz; }
  double bs_energy_per_cycle(int /*bs*/) const { return params.bs_energy_per_cycle_j; }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Linear channel gain from the 3GPP-style pathloss used in the evaluation:
// macro 128.1 + 37.6 log10(d_km), small 140.7 + 36.7 log10(d_km), plus shadowing.
double pathloss_gain(double distance_km, Tier tier, double shadow_db);

// Lloyd K-means with k-means++ seeding. Returns a cluster id in [1, L] per point.
std::vector<int> cluster_sbs(std::span<const Point> positions, int num_clusters, std::uint64_t seed,
                             int max_iterations = 100);

// Pure function of (params, seed). Each MD and each SBS draws from its own
// stream, so adding MDs keeps the first ones identical.
Scenario build_scenario(const ScenarioParams& params, std::uint64_t seed);

// Structured JSON snapshot for replay.
std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);
void save_scenario(const Scenario& scenario, const std::string& path);
Scenario load_scenario(const std::string& path);

}  // namespace mecwave
