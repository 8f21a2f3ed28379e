#include "mecwave/operators.hpp"

#include <algorithm>
#include <cmath>

#include "mecwave/errors.hpp"

namespace mecwave {

bool better(const Score& a, const Score& b, FitnessMode mode) {
  if (mode == FitnessMode::penalty) return a.fitness > b.fitness;
  if (a.violation != b.violation) return a.violation < b.violation;
  return a.energy < b.energy;
}

std::size_t best_index(std::span<const Score> scores, FitnessMode mode) {
  if (scores.empty()) throw ContractViolation("best_index: empty population");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (better(scores[i], scores[best], mode)) best = i;
  return best;
}

std::size_t worst_index(std::span<const Score> scores, FitnessMode mode) {
  if (scores.empty()) throw ContractViolation("worst_index: empty population");
  std::size_t worst = 0;
  for (std::size_t i = 1; i < scores.size(); ++i)
    if (better(scores[worst], scores[i], mode)) worst = i;
  return worst;
}

double crossover_probability(double f_pair_min, double f_min, double f_ave, double a1, double a2) {
  if (!(f_ave > f_min)) return a2;  // all fitnesses tie
  if (f_pair_min >= f_ave) return a2;
  return a1 * std::clamp((f_pair_min - f_min) / (f_ave - f_min), 0.0, 1.0);
}

double mutation_probability(double f_m, double f_max, double f_ave, double a3, double a4) {
  if (!(f_max > f_ave)) return a3;
  if (f_m < f_ave) return a4;
  return a3 * std::clamp((f_max - f_m) / (f_max - f_ave), 0.0, 1.0);
}

double diversity_mutation_probability(double diversity, double a5, double a6, double a7, double d1, double d2) {
  if (diversity < d1) return a5;
  if (diversity < d2) return a6;
  return a7;
}

double breaking_coefficient(int t, int total, double u_min, double u_max) {
  return u_min + (u_max - u_min) * static_cast<double>(t - 1) / static_cast<double>(std::max(total - 1, 1));
}

Selection tournament_select(std::span<const Wave> pop, std::span<const Score> scores, const Wave& historical_best,
                            const Score& historical_score, FitnessMode mode, Rng& rng) {
  if (pop.empty() || pop.size() != scores.size()) throw ContractViolation("tournament_select: bad population");
  const int M = static_cast<int>(pop.size());
  Selection out;
  out.waves.reserve(pop.size());
  out.scores.reserve(pop.size());
  for (int m = 0; m < M; ++m) {
    const auto a = static_cast<std::size_t>(uniform_int(rng, 0, M - 1));
    const auto b = static_cast<std::size_t>(uniform_int(rng, 0, M - 1));
    const std::size_t win = better(scores[b], scores[a], mode) ? b : a;
    out.waves.push_back(pop[win]);
    out.scores.push_back(scores[win]);
  }
  const bool present = std::any_of(out.waves.begin(), out.waves.end(),
                                   [&](const Wave& w) { return w.same_genes(historical_best); });
  if (!present) {
    const std::size_t worst = worst_index(out.scores, mode);
    out.waves[worst] = historical_best;
    out.scores[worst] = historical_score;
  }
  return out;
}

void crossover(Wave& a, Wave& b, double probability, const Bounds& bounds, Rng& rng) {
  if (!(uniform01(rng) < probability)) return;
  const Gene g = kGroups[static_cast<std::size_t>(uniform_int(rng, 0, kNumGroups - 1))];
  const int n = static_cast<int>(a[g].size());
  const int c1 = uniform_int(rng, 0, n - 1);
  const int c2 = uniform_int(rng, 0, n - 1);
  for (int i = std::min(c1, c2); i <= std::max(c1, c2); ++i)
    std::swap(a[g][static_cast<std::size_t>(i)], b[g][static_cast<std::size_t>(i)]);
  repair_in_place(a, bounds);
  repair_in_place(b, bounds);
}

double mutate_gene(Gene group, double value, double lo, double hi, double r1, double r2) {
  double v;
  if (r2 > 0.5) {
    v = r1 * hi + (1.0 - r1) * value;
  } else if (group == Gene::d_first || group == Gene::d_second) {
    v = (1.0 - r1) * value;
  } else {
    v = r1 * lo + (1.0 - r1) * value;
  }
  if (is_integer(group)) v = std::clamp(std::round(v), lo, hi);
  return v;
}

void mutate_wave(Wave& w, double probability, const Bounds& bounds, Rng& rng) {
  for (Gene g : kGroups) {
    auto& genes = w[g];
    for (std::size_t i = 0; i < genes.size(); ++i) {
      if (!(uniform01(rng) < probability)) continue;
      const double r1 = uniform01(rng);
      const double r2 = uniform01(rng);
      genes[i] = mutate_gene(g, genes[i], bounds.lower(g, i), bounds.upper(g, i, w), r1, r2);
    }
  }
  repair_in_place(w, bounds);
}

double population_diversity(std::span<const Wave> pop, const Bounds& bounds) {
  if (pop.empty()) throw ContractViolation("population_diversity: empty population");
  const double M = static_cast<double>(pop.size());
  double total = 0.0;
  for (Gene g : kGroups) {
    const double diag = bounds.diagonal[static_cast<std::size_t>(g)];
    if (!(diag > 0.0)) continue;  // a one-point domain carries no diversity
    const std::size_t n = bounds.group_size(g);
    // mean as an offset from the first wave, so identical waves give exactly 0
    const auto& ref = pop.front()[g];
    std::vector<double> mean(n, 0.0);
    for (const auto& w : pop)
      for (std::size_t i = 0; i < n; ++i) mean[i] += w[g][i] - ref[i];
    for (std::size_t i = 0; i < n; ++i) mean[i] = ref[i] + mean[i] / M;
    for (const auto& w : pop) {
      double sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) sq += (w[g][i] - mean[i]) * (w[g][i] - mean[i]);
      total += std::sqrt(sq) / diag;
    }
  }
  return total / (static_cast<double>(kNumGroups) * M);
}

double refract_gene(double value, double best_value, bool integer, Rng& rng) {
  if (value == best_value) return value;
  const double mean = 0.5 * (best_value + value);
  const double sd = 0.5 * std::abs(best_value - value);
  const double v = mean + sd * standard_normal(rng);
  return integer ? std::round(v) : v;
}

void refract_wave(Wave& w, const Wave& best, const Bounds& bounds, Rng& rng) {
  for (Gene g : kGroups) {
    auto& genes = w[g];
    for (std::size_t i = 0; i < genes.size(); ++i) genes[i] = refract_gene(genes[i], best[g][i], is_integer(g), rng);
  }
  repair_in_place(w, bounds);
}

double break_gene(double best_value, double range_width, double zeta, double u, bool integer) {
  const double v = best_value + zeta * u * range_width;
  return integer ? std::round(v) : v;
}

double gene_range(Gene g, std::size_t i, const Bounds& b, const Wave& w) {
  switch (g) {
    case Gene::mu: return b.one_minus - b.epsilon;
    case Gene::n_sub: return b.max_subchannels - 1.0;
    case Gene::bs: return static_cast<double>(b.num_sbs);
    case Gene::crypto: return b.num_crypto - 1.0;
    case Gene::power: return b.upper(g, i) - b.epsilon;
    case Gene::z_first:
    case Gene::z_second: return b.upper(g, i) - b.lower(g, i);
    case Gene::channel: return b.upper(Gene::channel, i, w) - 1.0;
    case Gene::d_first: return b.upper(g, i);
    case Gene::d_second: return std::clamp(w[Gene::d_first][i], b.epsilon, b.upper(Gene::d_first, i));
  }
  return 0.0;
}

Wave break_wave(const Wave& best, double u, const Bounds& bounds, Rng& rng) {
  Wave w = best;
  for (Gene g : kGroups) {
    for (std::size_t i = 0; i < w[g].size(); ++i) {
      const double zeta = standard_normal(rng);
      // the range reads n_sub and d_first already moved for this solitary wave
      w[g][i] = break_gene(best[g][i], gene_range(g, i, bounds, w), zeta, u, is_integer(g));
    }
  }
  repair_in_place(w, bounds);
  return w;
}

}  // namespace mecwave
