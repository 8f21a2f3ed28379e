#pragma once

#include <span>
#include <vector>

#include "mecwave/encoding.hpp"
#include "mecwave/rng.hpp"

namespace mecwave {

// How two evaluated waves compare. `penalty` uses the scalar penalised fitness.
// `lexicographic` ranks by total normalised violation first and energy second,
// which stays exact when huge penalty factors would swamp the energy term.
enum class FitnessMode { penalty, lexicographic };

struct Score {
  double fitness = 0.0;
  double violation = 0.0;
  double energy = 0.0;

  friend bool operator==(const Score&, const Score&) = default;
};

// Strictly better.
bool better(const Score& a, const Score& b, FitnessMode mode);
std::size_t best_index(std::span<const Score> scores, FitnessMode mode);
std::size_t worst_index(std::span<const Score> scores, FitnessMode mode);

double crossover_probability(double f_pair_min, double f_min, double f_ave, double a1, double a2);
double mutation_probability(double f_m, double f_max, double f_ave, double a3, double a4);
double diversity_mutation_probability(double diversity, double a5, double a6, double a7, double d1, double d2);
double breaking_coefficient(int t, int total, double u_min, double u_max);

struct Selection {
  std::vector<Wave> waves;
  std::vector<Score> scores;
};

// M binary tournaments. The historical best is put in place of the worst pick
// when no pick carries its genes.
Selection tournament_select(std::span<const Wave> population, std::span<const Score> scores,
                            const Wave& historical_best, const Score& historical_score, FitnessMode mode, Rng& rng);

// Swaps one random segment of one random group with the given probability, then repairs.
void crossover(Wave& a, Wave& b, double probability, const Bounds& bounds, Rng& rng);

// Single-gene mutation rule. lo and hi are the group's limits at this gene.
double mutate_gene(Gene group, double value, double lo, double hi, double r1, double r2);
// Each gene mutates independently with the given probability; the wave is repaired afterwards.
void mutate_wave(Wave& wave, double probability, const Bounds& bounds, Rng& rng);

double population_diversity(std::span<const Wave> population, const Bounds& bounds);

double refract_gene(double value, double best_value, bool integer, Rng& rng);
void refract_wave(Wave& wave, const Wave& best, const Bounds& bounds, Rng& rng);

double break_gene(double best_value, double range_width, double zeta, double u, bool integer);
// One solitary wave around `best`, with a fresh standard-normal draw per gene.
Wave break_wave(const Wave& best, double u, const Bounds& bounds, Rng& rng);

// Search width of a gene, used by breaking and by WWO propagation. The channel
// and d_second widths follow the wave's own n_sub and d_first.
double gene_range(Gene g, std::size_t i, const Bounds& bounds, const Wave& wave);

}  // namespace mecwave
