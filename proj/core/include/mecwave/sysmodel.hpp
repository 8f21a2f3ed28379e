#pragma once

#include <span>
#include <vector>

#include "mecwave/scenario.hpp"

namespace mecwave {

struct TaskDecision {
  int crypto = 0;         // algorithm index in [0, Q)
  double z_first = 0.0;   // MD -> BS compression ratio
  double z_second = 0.0;  // SBS -> MBS compression ratio
  double d_first = 0.0;   // bits offloaded by the MD
  double d_second = 0.0;  // bits forwarded by the SBS to the MBS

  friend bool operator==(const TaskDecision&, const TaskDecision&) = default;
};

// Decoded decision vector. Indices are 0-based: assoc 0 is the MBS, channel in [0, N).
struct Solution {
  double mu = 0.5;
  int num_subchannels = 1;
  std::vector<double> power;
  std::vector<int> assoc;
  std::vector<int> channel;
  std::vector<TaskDecision> tasks;  // md * K + k

  const TaskDecision& task(int md, int k, int K) const {
    return tasks[static_cast<std::size_t>(md * K + k)];
  }

  friend bool operator==(const Solution&, const Solution&) = default;
};

struct TimeEnergy {
  double time = 0.0;
  double energy = 0.0;
};

struct EvaluationReport {
  std::vector<double> delay;
  std::vector<double> energy;
  std::vector<double> breach_cost;
  std::vector<double> delay_violation;
  std::vector<double> cost_violation;
  double network_energy = 0.0;
  double total_local_energy = 0.0;
  bool feasible = true;

  int num_md() const { return static_cast<int>(delay.size()); }

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

// Throws ContractViolation if sizes, indices or box constraints are broken.
void check_structure(const Scenario& scenario, const Solution& solution);

double subchannel_bandwidth(double mu, int num_subchannels, int num_clusters, double system_bw_hz);

// SIC uplink rate to the associated SBS. Interferers are the other SBS users of
// the same cluster on the same channel whose gain at this receiver is not larger.
double noma_uplink_rate(const Scenario& scenario, const Solution& solution, int md);
// Equal split of the reserved band among all MBS users.
double mbs_uplink_rate(const Scenario& scenario, const Solution& solution, int md);
double uplink_rate(const Scenario& scenario, const Solution& solution, int md);

double codec_cycles(double size_bits, double ratio, const CodecCoefficients& coeffs, double xi);

double breach_probability(double risk, double expected_level, double algorithm_level);
std::vector<double> breach_cost(const Scenario& scenario, const Solution& solution);

double sbs_workload_cycles(const ScenarioParams& params, const TaskParams& task, const TaskDecision& d);

enum class Origin { from_md, from_sbs };
double mbs_workload_cycles(const ScenarioParams& params, Origin origin, const TaskParams& task,
                           const TaskDecision& d);

double proportional_cc_share(std::span<const double> workloads, double total_cc, std::size_t target);

// Cost pieces with every coupling quantity passed in explicitly.
TimeEnergy local_cost(const ScenarioParams& params, const TaskParams& task, const TaskDecision& d,
                      double md_cpu_hz, double power_w, double rate_bps);
TimeEnergy sbs_path_cost(const ScenarioParams& params, const TaskParams& task, const TaskDecision& d,
                         double rate_bps, double sbs_share_hz, double mbs_share_hz);
TimeEnergy mbs_path_cost(const ScenarioParams& params, const TaskParams& task, const TaskDecision& d,
                         double rate_bps, double mbs_share_hz);

TimeEnergy local_cost(const Scenario& scenario, const Solution& solution, int md, int k);
TimeEnergy sbs_path_cost(const Scenario& scenario, const Solution& solution, int md, int k,
                         double sbs_share_hz, double mbs_share_hz);
TimeEnergy mbs_path_cost(const Scenario& scenario, const Solution& solution, int md, int k,
                         double mbs_share_hz);

// Per-BS workload denominators: entry j is the total cycles BS j must share out.
std::vector<double> bs_workloads(const Scenario& scenario, const Solution& solution);

// Delay and energy of one MD. Recomputes its rate and the BS denominators.
TimeEnergy md_totals(const Scenario& scenario, const Solution& solution, int md);

// Full report. Rates come from per-(cluster, channel) prefix sums and workloads
// from one pass per BS, so the cost is O(I log I + I K).
EvaluationReport evaluate_solution(const Scenario& scenario, const Solution& solution);

// Every task computed on its own device at full local CPU.
EvaluationReport evaluate_local_only(const Scenario& scenario);

// Penalised objective, maximised.
double fitness(const EvaluationReport& report, std::span<const double> alpha, std::span<const double> beta);
double fitness(const EvaluationReport& report, double alpha, double beta);

// Constraint residual used by the lexicographic comparison: violations scaled by their limits.
double normalized_violation(const Scenario& scenario, const EvaluationReport& report);

}  // namespace mecwave
