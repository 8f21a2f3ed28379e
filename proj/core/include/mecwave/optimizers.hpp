#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mecwave/encoding.hpp"
#include "mecwave/operators.hpp"
#include "mecwave/scenario.hpp"
#include "mecwave/sysmodel.hpp"

namespace mecwave {

struct OptimizerConfig {
  int population = 20;       // M
  int iterations = 200;      // T
  int solitary_waves = 5;    // V
  int max_height = 5;        // h^max
  double a1 = 0.8, a2 = 0.8;
  double a3 = 0.3, a4 = 0.3;
  double a5 = 0.6, a6 = 0.03, a7 = 1e-5;
  double d1 = 0.01, d2 = 0.25;
  double u_min = 0.001, u_max = 0.25;
  double alpha = 1e20;
  double beta = 1e20;
  FitnessMode mode = FitnessMode::penalty;
  // WWO baseline only
  double wwo_lambda_init = 0.5;
  double wwo_reduction = 1.0026;
  double wwo_epsilon = 1e-31;
  int workers = 1;

  friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

// Throws ConfigError. The diversity constants may all be zero, which switches
// diversity-guided mutation off; otherwise 0 < a6 < a5 < 1 and 0 < a7 < 1.
void validate(const OptimizerConfig& config);

struct TraceRow {
  int iteration = 0;
  double best_fitness = 0.0;  // historical best
  double avg_fitness = 0.0;
  double best_energy = 0.0;
  double diversity = 0.0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct RunTrace {
  std::string algorithm;
  std::vector<TraceRow> rows;  // row 0 is the initial population
  Wave best;                   // empty genes for the local-only baseline
  Score best_score;
  EvaluationReport report;
  double wall_time_s = 0.0;
};

enum class Algorithm { agwwo, wwo, aga, cmt };
std::string_view to_string(Algorithm a);
Algorithm parse_algorithm(std::string_view name);  // throws ConfigError

RunTrace run_agwwo(const Scenario& scenario, const OptimizerConfig& config, std::uint64_t seed);
RunTrace run_wwo(const Scenario& scenario, const OptimizerConfig& config, std::uint64_t seed);
RunTrace run_aga(const Scenario& scenario, const OptimizerConfig& config, std::uint64_t seed);
RunTrace run_cmt(const Scenario& scenario, const OptimizerConfig& config = {});

RunTrace run_algorithm(Algorithm a, const Scenario& scenario, const OptimizerConfig& config, std::uint64_t seed);

}  // namespace mecwave
