#include "mecwave/encoding.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "mecwave/errors.hpp"

namespace mecwave {

namespace {

std::size_t gi(Gene g) { return static_cast<std::size_t>(g); }

double clamp_finite(double v, double lo, double hi) {
  if (!std::isfinite(v)) return lo;
  return std::clamp(v, lo, hi);
}

}  // namespace

const char* gene_name(Gene g) {
  switch (g) {
    case Gene::mu: return "mu";
    case Gene::n_sub: return "n_sub";
    case Gene::bs: return "bs";
    case Gene::crypto: return "crypto";
    case Gene::power: return "power";
    case Gene::z_first: return "z_first";
    case Gene::z_second: return "z_second";
    case Gene::channel: return "channel";
    case Gene::d_first: return "d_first";
    case Gene::d_second: return "d_second";
  }
  return "?";
}

double Bounds::upper(Gene g, std::size_t i, const Wave& w) const {
  if (g == Gene::channel) return std::clamp(w[Gene::n_sub][0], 1.0, static_cast<double>(max_subchannels));
  if (g == Gene::d_second) return std::max(w[Gene::d_first][i], epsilon);
  return upper(g, i);
}

Bounds make_bounds(const Scenario& sc) {
  const auto& p = sc.params;
  Bounds b;
  b.num_md = sc.num_md();
  b.num_tasks = sc.num_tasks();
  b.num_sbs = sc.num_sbs();
  b.num_crypto = sc.num_crypto();
  b.max_subchannels = p.max_subchannels;
  b.epsilon = p.epsilon;
  b.one_minus = p.one_minus;

  const int U = b.num_md;
  for (Gene g : kGroups) {
    const std::size_t n = b.group_size(g);
    auto& lo = b.lo[gi(g)];
    auto& hi = b.hi[gi(g)];
    lo.assign(n, 0.0);
    hi.assign(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      const int u = static_cast<int>(v) % U;
      const int k = static_cast<int>(v) / U;
      switch (g) {
        case Gene::mu: lo[v] = p.epsilon; hi[v] = p.one_minus; break;
        case Gene::n_sub: lo[v] = 1; hi[v] = p.max_subchannels; break;
        case Gene::bs: lo[v] = 1; hi[v] = sc.num_sbs() + 1; break;
        case Gene::crypto: lo[v] = 1; hi[v] = sc.num_crypto(); break;
        case Gene::power: lo[v] = p.epsilon; hi[v] = sc.device(static_cast<int>(v)).max_power_w; break;
        case Gene::z_first: lo[v] = p.z_first.min; hi[v] = p.z_first.max; break;
        case Gene::z_second: lo[v] = p.z_second.min; hi[v] = p.z_second.max; break;
        case Gene::channel: lo[v] = 1; hi[v] = p.max_subchannels; break;
        case Gene::d_first:
        case Gene::d_second: lo[v] = p.epsilon; hi[v] = sc.task(u, k).size_bits; break;
      }
    }
    double sq = 0.0;
    for (std::size_t v = 0; v < n; ++v) sq += (hi[v] - lo[v]) * (hi[v] - lo[v]);
    b.diagonal[gi(g)] = std::sqrt(sq);
  }
  return b;
}

std::pair<int, int> virtual_index(int i, int U, int K) {
  if (U < 1 || K < 1 || i < 1 || i > U * K) throw ContractViolation("virtual_index: index out of range");
  return {(i - 1) % U + 1, (i - 1) / U + 1};
}

Wave init_wave(const Bounds& b, Rng& rng, int height) {
  Wave w;
  w.height = height;
  for (Gene g : kGroups) w[g].assign(b.group_size(g), 0.0);

  w[Gene::mu][0] = uniform01(rng);
  w[Gene::n_sub][0] = uniform_int(rng, 1, b.max_subchannels);
  for (auto& x : w[Gene::bs]) x = uniform_int(rng, 1, b.num_sbs + 1);
  for (auto& y : w[Gene::crypto]) y = uniform_int(rng, 1, b.num_crypto);
  for (std::size_t i = 0; i < w[Gene::power].size(); ++i) w[Gene::power][i] = uniform(rng, 0.0, b.upper(Gene::power, i));
  for (std::size_t i = 0; i < w[Gene::z_first].size(); ++i)
    w[Gene::z_first][i] = uniform(rng, b.lower(Gene::z_first, i), b.upper(Gene::z_first, i));
  for (std::size_t i = 0; i < w[Gene::z_second].size(); ++i)
    w[Gene::z_second][i] = uniform(rng, b.lower(Gene::z_second, i), b.upper(Gene::z_second, i));
  const int n = static_cast<int>(w[Gene::n_sub][0]);
  for (auto& c : w[Gene::channel]) c = uniform_int(rng, 1, n);
  for (std::size_t i = 0; i < w[Gene::d_first].size(); ++i)
    w[Gene::d_first][i] = uniform(rng, 0.0, b.upper(Gene::d_first, i));
  for (std::size_t i = 0; i < w[Gene::d_second].size(); ++i)
    w[Gene::d_second][i] = uniform(rng, 0.0, w[Gene::d_first][i]);

  repair_in_place(w, b);
  return w;
}

void repair_in_place(Wave& w, const Bounds& b) {
  for (Gene g : kGroups) {
    auto& genes = w[g];
    if (genes.size() != b.group_size(g)) throw ContractViolation(std::string("repair: wrong size for ") + gene_name(g));
    for (std::size_t i = 0; i < genes.size(); ++i) {
      double v = genes[i];
      if (is_integer(g) && std::isfinite(v)) v = std::round(v);
      // coupled bounds read the already-repaired n_sub and d_first
      genes[i] = clamp_finite(v, b.lower(g, i), b.upper(g, i, w));
    }
  }
}

Wave repair_wave(Wave w, const Bounds& b) {
  repair_in_place(w, b);
  return w;
}

bool is_repaired(const Wave& w, const Bounds& b) {
  Wave copy = w;
  repair_in_place(copy, b);
  return copy.genes == w.genes;
}

Solution decode(const Wave& w, const Bounds& b) {
  const int U = b.num_md;
  const int K = b.num_tasks;
  Solution s;
  s.mu = w[Gene::mu][0];
  s.num_subchannels = static_cast<int>(w[Gene::n_sub][0]);
  s.power = w[Gene::power];
  s.assoc.resize(static_cast<std::size_t>(U));
  s.channel.resize(static_cast<std::size_t>(U));
  for (int u = 0; u < U; ++u) {
    s.assoc[static_cast<std::size_t>(u)] = static_cast<int>(w[Gene::bs][static_cast<std::size_t>(u)]) - 1;
    s.channel[static_cast<std::size_t>(u)] = static_cast<int>(w[Gene::channel][static_cast<std::size_t>(u)]) - 1;
  }
  s.tasks.resize(static_cast<std::size_t>(U * K));
  for (int u = 0; u < U; ++u) {
    for (int k = 0; k < K; ++k) {
      const auto v = static_cast<std::size_t>(virtual_slot(u, k, U));
      auto& t = s.tasks[static_cast<std::size_t>(u * K + k)];
      t.crypto = static_cast<int>(w[Gene::crypto][v]) - 1;
      t.z_first = w[Gene::z_first][v];
      t.z_second = w[Gene::z_second][v];
      t.d_first = w[Gene::d_first][v];
      t.d_second = w[Gene::d_second][v];
    }
  }
  return s;
}

Wave encode(const Solution& s, const Bounds& b, int height) {
  const int U = b.num_md;
  const int K = b.num_tasks;
  Wave w;
  w.height = height;
  for (Gene g : kGroups) w[g].assign(b.group_size(g), 0.0);
  w[Gene::mu][0] = s.mu;
  w[Gene::n_sub][0] = s.num_subchannels;
  w[Gene::power] = s.power;
  for (int u = 0; u < U; ++u) {
    w[Gene::bs][static_cast<std::size_t>(u)] = s.assoc[static_cast<std::size_t>(u)] + 1;
    w[Gene::channel][static_cast<std::size_t>(u)] = s.channel[static_cast<std::size_t>(u)] + 1;
    for (int k = 0; k < K; ++k) {
      const auto v = static_cast<std::size_t>(virtual_slot(u, k, U));
      const auto& t = s.tasks[static_cast<std::size_t>(u * K + k)];
      w[Gene::crypto][v] = t.crypto + 1;
      w[Gene::z_first][v] = t.z_first;
      w[Gene::z_second][v] = t.z_second;
      w[Gene::d_first][v] = t.d_first;
      w[Gene::d_second][v] = t.d_second;
    }
  }
  return w;
}

std::string wave_to_json(const Wave& w) {
  nlohmann::ordered_json j;
  for (Gene g : kGroups) j[gene_name(g)] = w[g];
  j["height"] = w.height;
  return j.dump();
}

}  // namespace mecwave
