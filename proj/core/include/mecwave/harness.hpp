#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mecwave/optimizers.hpp"
#include "mecwave/scenario.hpp"
#include "mecwave/sysmodel.hpp"

namespace mecwave {

// Config spelling: none, md_density, max_power_dbm, max_cpu_ghz, solitary_V, max_height.
enum class SweepVar { none, md_density, max_power_dbm, max_cpu_ghz, solitary_v, max_height };
std::string_view to_string(SweepVar v);
SweepVar parse_sweep_var(std::string_view name);  // throws ConfigError

struct ExperimentSpec {
  SweepVar sweep = SweepVar::none;
  std::vector<double> values{0.0};
  std::vector<Algorithm> algorithms{Algorithm::agwwo, Algorithm::wwo, Algorithm::aga, Algorithm::cmt};
  int seeds = 1;
  std::uint64_t master_seed = 1;
  ScenarioParams scenario;
  OptimizerConfig optimizer;
  bool record_wall_time = false;  // off keeps the CSV byte-identical across reruns
  bool emit_traces = false;
  int parallel = 1;  // cells run concurrently; output order does not change
};

void validate(const ExperimentSpec& spec);

// Scenario and optimizer settings for one sweep point.
ScenarioParams apply_sweep(ScenarioParams params, SweepVar var, double value);
OptimizerConfig apply_sweep(OptimizerConfig config, SweepVar var, double value);

// The scenario depends on (master seed, replicate) only, so every sweep point
// and every algorithm of a replicate sees the same draws. The optimizer seed
// is shared across algorithms as well, which makes comparisons paired.
std::uint64_t scenario_seed(std::uint64_t master_seed, int replicate);
std::uint64_t algorithm_seed(std::uint64_t master_seed, int replicate);

struct MetricRow {
  std::string sweep_var;
  double sweep_value = 0.0;
  std::string algorithm;
  int seed = 0;  // replicate index
  double network_energy_j = 0.0;
  double local_energy_j = 0.0;
  double time_support_ratio = 0.0;
  double cost_support_ratio = 0.0;
  double best_fitness = 0.0;
  double wall_time_s = 0.0;

  friend bool operator==(const MetricRow&, const MetricRow&) = default;
};

struct SupportRatios {
  double time = 0.0;
  double cost = 0.0;
};
SupportRatios support_ratios(const EvaluationReport& report);

MetricRow make_row(SweepVar var, double value, int replicate, const RunTrace& trace, bool record_wall_time);

struct TraceFile {
  std::string name;  // trace_<var>_<value>_<algorithm>_<seed>.csv
  std::vector<TraceRow> rows;
};

struct ExperimentResult {
  std::vector<MetricRow> rows;
  std::vector<TraceFile> traces;  // filled when emit_traces is set
};

// Cells run in (value, replicate, algorithm) order. `on_row` sees each row as it completes.
ExperimentResult run_experiment(const ExperimentSpec& spec,
                                const std::function<void(const MetricRow&)>& on_row = {});

std::string format_number(double v);
double parse_number(std::string_view text);  // throws ConfigError

inline constexpr std::string_view kResultsHeader =
    "sweep_var,sweep_value,algorithm,seed,network_energy_j,local_energy_j,time_support_ratio,"
    "cost_support_ratio,best_fitness,wall_time_s";
inline constexpr std::string_view kTraceHeader = "iteration,best_fitness,avg_fitness,best_energy,diversity";

std::string results_csv(const std::vector<MetricRow>& rows);
std::vector<MetricRow> parse_results_csv(const std::string& text);
void write_csv(const std::vector<MetricRow>& rows, const std::string& path);
std::vector<MetricRow> read_csv(const std::string& path);

std::string trace_csv(const std::vector<TraceRow>& rows);
std::vector<TraceRow> parse_trace_csv(const std::string& text);
void write_trace(const std::vector<TraceRow>& rows, const std::string& path);
std::vector<TraceRow> read_trace(const std::string& path);
std::string trace_file_name(SweepVar var, double value, Algorithm algorithm, int replicate);

}  // namespace mecwave
