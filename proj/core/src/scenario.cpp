#include "mecwave/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "mecwave/errors.hpp"
#include "mecwave/rng.hpp"

namespace mecwave {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError("invalid scenario parameters: " + message);
}

void require_range(const Range& r, const char* name, bool strict = false) {
  require(std::isfinite(r.min) && std::isfinite(r.max), std::string(name) + " must be finite");
  if (strict) {
    require(r.min < r.max, std::string(name) + " needs min < max");
  } else {
    require(r.min <= r.max, std::string(name) + " needs min <= max");
  }
}

double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

Point uniform_in_disc(Rng& rng, double radius) {
  const double r = radius * std::sqrt(uniform01(rng));
  const double theta = 2.0 * std::numbers::pi * uniform01(rng);
  return {r * std::cos(theta), r * std::sin(theta)};
}

int nearest(const Point& p, const std::vector<Point>& centroids) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = squared_distance(p, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

}  // namespace

void validate(const ScenarioParams& p) {
  require(p.num_sbs >= 1, "num_sbs must be >= 1");
  require(p.num_md >= 1, "num_md must be >= 1");
  require(p.num_tasks_per_md >= 1, "num_tasks_per_md must be >= 1");
  require(p.num_clusters >= 1, "num_clusters must be >= 1");
  require(p.num_clusters <= p.num_sbs, "num_clusters must not exceed num_sbs");
  require(p.max_subchannels >= 1, "max_subchannels must be >= 1");
  require(!p.crypto.empty(), "at least one cryptographic algorithm is required");
  require(!p.expected_levels.empty(), "expected_levels must not be empty");

  require(p.macrocell_radius_km > 0.0, "macrocell_radius_km must be positive");
  require(p.min_distance_km > 0.0, "min_distance_km must be positive");
  require(p.system_bandwidth_hz > 0.0, "system_bandwidth_hz must be positive");
  require(p.noise_power_w > 0.0, "noise_power_w must be positive");
  require(p.backhaul_rate_bps > 0.0, "backhaul_rate_bps must be positive");
  require(p.wired_power_w >= 0.0, "wired_power_w must be non-negative");
  require(p.md_cpu_hz > 0.0, "md_cpu_hz must be positive");
  require(p.sbs_cpu_hz > 0.0 && p.mbs_cpu_hz > 0.0, "BS cpu must be positive");
  require(p.bs_energy_per_cycle_j >= 0.0, "bs_energy_per_cycle_j must be non-negative");
  require(p.switched_capacitance >= 0.0, "switched_capacitance must be non-negative");
  require(p.codec_xi >= 0.0, "codec_xi must be non-negative");
  require(p.shadowing_std_db >= 0.0, "shadowing_std_db must be non-negative");

  require(0.0 < p.epsilon && p.epsilon < p.one_minus && p.one_minus < 1.0,
          "need 0 < epsilon < one_minus < 1");
  require(p.md_max_power_w > p.epsilon, "md_max_power_w must exceed epsilon");

  require_range(p.z_first, "z_first", true);
  require_range(p.z_second, "z_second", true);
  require(p.z_first.min > 0.0 && p.z_second.min > 0.0, "compression ratios must be positive");
  require_range(p.task_size_bits, "task_size_bits");
  require(p.task_size_bits.min > p.epsilon, "task sizes must exceed epsilon");
  require_range(p.cycles_per_bit, "cycles_per_bit");
  require(p.cycles_per_bit.min >= 0.0, "cycles_per_bit must be non-negative");
  require_range(p.deadline_s, "deadline_s");
  require_range(p.breach_loss, "breach_loss");
  require_range(p.breach_budget, "breach_budget");
  require_range(p.risk_coefficient, "risk_coefficient");
  require(p.risk_coefficient.min > 0.0, "risk coefficients must be positive");

  for (const auto& alg : p.crypto) {
    require(alg.encrypt_cycles_per_bit >= 0.0 && alg.decrypt_cycles_per_bit >= 0.0 &&
                alg.energy_per_bit_j >= 0.0,
            "crypto costs must be non-negative");
  }
}

double pathloss_gain(double distance_km, Tier tier, double shadow_db) {
  if (!(distance_km > 0.0)) throw std::domain_error("pathloss_gain: distance must be positive");
  const double loss_db = tier == Tier::macro ? 128.1 + 37.6 * std::log10(distance_km)
                                             : 140.7 + 36.7 * std::log10(distance_km);
  return std::pow(10.0, -(loss_db + shadow_db) / 10.0);
}

std::vector<int> cluster_sbs(std::span<const Point> positions, int num_clusters, std::uint64_t seed,
                             int max_iterations) {
  if (num_clusters < 1) throw ConfigError("cluster_sbs: need at least one cluster");
  if (positions.size() < static_cast<std::size_t>(num_clusters)) {
    throw ConfigError("cluster_sbs: fewer SBSs than clusters");
  }
  const std::size_t n = positions.size();
  const auto k = static_cast<std::size_t>(num_clusters);
  Rng rng{seed};

  // k-means++ seeding
  std::vector<Point> centroids;
  centroids.reserve(k);
  std::vector<bool> taken(n, false);
  const auto first = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1));
  centroids.push_back(positions[first]);
  taken[first] = true;
  std::vector<double> weight(n);
  while (centroids.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = std::numeric_limits<double>::infinity();
      for (const auto& c : centroids) d = std::min(d, squared_distance(positions[i], c));
      weight[i] = taken[i] ? 0.0 : d;
      total += weight[i];
    }
    std::size_t pick = 0;
    if (total > 0.0) {
      std::discrete_distribution<std::size_t> dist(weight.begin(), weight.end());
      pick = dist(rng);
    } else {
      // remaining points coincide with chosen centroids
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < n; ++i)
        if (!taken[i]) free.push_back(i);
      pick = free[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(free.size()) - 1))];
    }
    taken[pick] = true;
    centroids.push_back(positions[pick]);
  }

  std::vector<int> assignment(n);
  for (std::size_t i = 0; i < n; ++i) assignment[i] = nearest(positions[i], centroids);

  for (int iter = 0; iter < max_iterations; ++iter) {
    std::vector<Point> sums(k);
    std::vector<int> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(assignment[i]);
      sums[c].x += positions[i].x;
      sums[c].y += positions[i].y;
      ++counts[c];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centroids[c] = {sums[c].x / counts[c], sums[c].y / counts[c]};
        continue;
      }
      // empty cluster: move it onto the point farthest from its own centroid
      std::size_t far = 0;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = squared_distance(positions[i], centroids[static_cast<std::size_t>(assignment[i])]);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      centroids[c] = positions[far];
    }
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int c = nearest(positions[i], centroids);
      if (c != assignment[i]) {
        assignment[i] = c;
        changed = true;
      }
    }
    if (!changed) break;
  }
  // k-means can leave a cluster empty when points coincide; hand it the point
  // farthest from its centroid among clusters that can spare one
  std::vector<int> counts(k, 0);
  for (int a : assignment) ++counts[static_cast<std::size_t>(a)];
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] > 0) continue;
    std::size_t far = n;
    double far_d = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = static_cast<std::size_t>(assignment[i]);
      if (counts[a] < 2) continue;
      const double d = squared_distance(positions[i], centroids[a]);
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    --counts[static_cast<std::size_t>(assignment[far])];
    assignment[far] = static_cast<int>(c);
    counts[c] = 1;
    centroids[c] = positions[far];
  }
  for (auto& a : assignment) ++a;  // ids are 1-based
  return assignment;
}

Scenario build_scenario(const ScenarioParams& params, std::uint64_t seed) {
  validate(params);

  Scenario sc;
  sc.params = params;
  const int num_bs = params.num_sbs + 1;
  const int K = params.num_tasks_per_md;
  const double radius = params.macrocell_radius_km;

  sc.bs_positions.reserve(static_cast<std::size_t>(num_bs));
  sc.bs_positions.push_back({0.0, 0.0});
  Rng sbs_rng = make_stream(seed, Stream::sbs_placement);
  for (int s = 0; s < params.num_sbs; ++s) sc.bs_positions.push_back(uniform_in_disc(sbs_rng, radius));

  const auto num_md = static_cast<std::size_t>(params.num_md);
  sc.md_positions.reserve(num_md);
  sc.devices.reserve(num_md);
  sc.tasks.reserve(num_md * static_cast<std::size_t>(K));
  sc.gains.reserve(num_md * static_cast<std::size_t>(num_bs));

  const int num_levels = static_cast<int>(params.expected_levels.size());
  for (int i = 0; i < params.num_md; ++i) {
    Rng rng = make_stream(seed, Stream::md_placement, static_cast<std::uint64_t>(i));
    const Point pos = uniform_in_disc(rng, radius);
    sc.md_positions.push_back(pos);

    DeviceParams dev;
    dev.deadline_s = uniform(rng, params.deadline_s.min, params.deadline_s.max);
    dev.breach_budget = uniform(rng, params.breach_budget.min, params.breach_budget.max);
    dev.cpu_hz = params.md_cpu_hz;
    dev.max_power_w = params.md_max_power_w;
    sc.devices.push_back(dev);

    for (int k = 0; k < K; ++k) {
      TaskParams t;
      t.size_bits = uniform(rng, params.task_size_bits.min, params.task_size_bits.max);
      t.cycles_per_bit = uniform(rng, params.cycles_per_bit.min, params.cycles_per_bit.max);
      t.expected_level = params.expected_levels[static_cast<std::size_t>(uniform_int(rng, 0, num_levels - 1))];
      t.risk = uniform(rng, params.risk_coefficient.min, params.risk_coefficient.max);
      t.loss = uniform(rng, params.breach_loss.min, params.breach_loss.max);
      sc.tasks.push_back(t);
    }

    std::normal_distribution<double> shadow(0.0, params.shadowing_std_db);
    for (int j = 0; j < num_bs; ++j) {
      const double shadow_db = params.shadowing_std_db > 0.0 ? shadow(rng) : 0.0;
      const double d = std::max(params.min_distance_km,
                                std::sqrt(squared_distance(pos, sc.bs_positions[static_cast<std::size_t>(j)])));
      sc.gains.push_back(pathloss_gain(d, j == 0 ? Tier::macro : Tier::small, shadow_db));
    }
  }

  const std::span<const Point> sbs(sc.bs_positions.data() + 1, static_cast<std::size_t>(params.num_sbs));
  sc.cluster_of_sbs = cluster_sbs(sbs, params.num_clusters, derive_seed(seed, static_cast<std::uint64_t>(Stream::clustering)));
  return sc;
}

}  // namespace mecwave
