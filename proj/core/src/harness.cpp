#include "mecwave/harness.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "mecwave/errors.hpp"
#include "mecwave/evaluator.hpp"
#include "mecwave/rng.hpp"
#include "mecwave/units.hpp"

namespace mecwave {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid experiment: " + what);
}

bool is_whole(double v) { return std::isfinite(v) && v == std::floor(v); }

// Offset between the scenario and optimizer seed families.
constexpr std::uint64_t kAlgorithmSalt = 0x5eed'a160'0000'0001ULL;

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto p = line.find(sep, start);
    out.push_back(line.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

int parse_int(std::string_view text) {
  int v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size())
    throw ConfigError("not an integer: '" + std::string(text) + "'");
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void dump(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
  if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace

std::string_view to_string(SweepVar v) {
  switch (v) {
    case SweepVar::none: return "none";
    case SweepVar::md_density: return "md_density";
    case SweepVar::max_power_dbm: return "max_power_dbm";
    case SweepVar::max_cpu_ghz: return "max_cpu_ghz";
    case SweepVar::solitary_v: return "solitary_V";
    case SweepVar::max_height: return "max_height";
  }
  return "?";
}

SweepVar parse_sweep_var(std::string_view name) {
  for (SweepVar v : {SweepVar::none, SweepVar::md_density, SweepVar::max_power_dbm, SweepVar::max_cpu_ghz,
                     SweepVar::solitary_v, SweepVar::max_height}) {
    if (name == to_string(v)) return v;
  }
  throw ConfigError("unknown sweep variable '" + std::string(name) +
                    "' (expected none, md_density, max_power_dbm, max_cpu_ghz, solitary_V or max_height)");
}

void validate(const ExperimentSpec& spec) {
  require(!spec.values.empty(), "sweep values must not be empty");
  require(!spec.algorithms.empty(), "algorithm set must not be empty");
  require(spec.seeds >= 1, "seeds must be >= 1");
  require(spec.parallel >= 1, "parallel must be >= 1");
  for (double v : spec.values) {
    require(std::isfinite(v), "sweep values must be finite");
    switch (spec.sweep) {
      case SweepVar::md_density:
      case SweepVar::solitary_v:
      case SweepVar::max_height:
        require(is_whole(v) && v >= 1.0 && v <= 1e6, std::string(to_string(spec.sweep)) + " values must be positive integers");
        break;
      case SweepVar::max_cpu_ghz: require(v > 0.0, "max_cpu_ghz values must be positive"); break;
      case SweepVar::max_power_dbm:
      case SweepVar::none: break;
    }
  }
  for (double v : spec.values) {
    validate(apply_sweep(spec.scenario, spec.sweep, v));
    validate(apply_sweep(spec.optimizer, spec.sweep, v));
  }
}

ScenarioParams apply_sweep(ScenarioParams params, SweepVar var, double value) {
  switch (var) {
    case SweepVar::md_density: params.num_md = static_cast<int>(value); break;
    case SweepVar::max_power_dbm: params.md_max_power_w = units::dbm_to_watts(value); break;
    case SweepVar::max_cpu_ghz: params.md_cpu_hz = units::ghz_to_hz(value); break;
    default: break;
  }
  return params;
}

OptimizerConfig apply_sweep(OptimizerConfig config, SweepVar var, double value) {
  switch (var) {
    case SweepVar::solitary_v: config.solitary_waves = static_cast<int>(value); break;
    case SweepVar::max_height: config.max_height = static_cast<int>(value); break;
    default: break;
  }
  return config;
}

std::uint64_t scenario_seed(std::uint64_t master_seed, int replicate) {
  return derive_seed(master_seed, static_cast<std::uint64_t>(Stream::experiment),
                     static_cast<std::uint64_t>(replicate));
}

std::uint64_t algorithm_seed(std::uint64_t master_seed, int replicate) {
  return derive_seed(master_seed ^ kAlgorithmSalt, static_cast<std::uint64_t>(Stream::experiment),
                     static_cast<std::uint64_t>(replicate));
}

SupportRatios support_ratios(const EvaluationReport& report) {
  const int n = report.num_md();
  if (n == 0) return {1.0, 1.0};
  int on_time = 0;
  int in_budget = 0;
  for (int i = 0; i < n; ++i) {
    if (report.delay_violation[static_cast<std::size_t>(i)] <= 0.0) ++on_time;
    if (report.cost_violation[static_cast<std::size_t>(i)] <= 0.0) ++in_budget;
  }
  return {static_cast<double>(on_time) / n, static_cast<double>(in_budget) / n};
}

MetricRow make_row(SweepVar var, double value, int replicate, const RunTrace& trace, bool record_wall_time) {
  const SupportRatios r = support_ratios(trace.report);
  MetricRow row;
  row.sweep_var = std::string(to_string(var));
  row.sweep_value = value;
  row.algorithm = trace.algorithm;
  row.seed = replicate;
  row.network_energy_j = trace.report.network_energy;
  row.local_energy_j = trace.report.total_local_energy;
  row.time_support_ratio = r.time;
  row.cost_support_ratio = r.cost;
  row.best_fitness = trace.best_score.fitness;
  row.wall_time_s = record_wall_time ? trace.wall_time_s : 0.0;
  return row;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const std::function<void(const MetricRow&)>& on_row) {
  validate(spec);
  const std::size_t A = spec.algorithms.size();
  const std::size_t R = static_cast<std::size_t>(spec.seeds);
  const std::size_t cells = spec.values.size() * R * A;

  std::vector<MetricRow> rows(cells);
  std::vector<std::vector<TraceRow>> traces(cells);

  // One scenario per (value, replicate), shared by its algorithms.
  const std::size_t points = spec.values.size() * R;
  std::vector<std::optional<Scenario>> scenarios(points);
  parallel_for(points, spec.parallel, [&](std::size_t p) {
    const double value = spec.values[p / R];
    const int rep = static_cast<int>(p % R);
    scenarios[p] = build_scenario(apply_sweep(spec.scenario, spec.sweep, value), scenario_seed(spec.master_seed, rep));
  });

  parallel_for(cells, spec.parallel, [&](std::size_t c) {
    const std::size_t p = c / A;
    const double value = spec.values[p / R];
    const int rep = static_cast<int>(p % R);
    const OptimizerConfig cfg = apply_sweep(spec.optimizer, spec.sweep, value);
    RunTrace trace = run_algorithm(spec.algorithms[c % A], *scenarios[p], cfg, algorithm_seed(spec.master_seed, rep));
    rows[c] = make_row(spec.sweep, value, rep, trace, spec.record_wall_time);
    if (spec.emit_traces) traces[c] = std::move(trace.rows);
  });

  ExperimentResult result;
  result.rows = std::move(rows);
  for (std::size_t c = 0; c < cells; ++c) {
    if (on_row) on_row(result.rows[c]);
    if (spec.emit_traces) {
      const std::size_t p = c / A;
      result.traces.push_back({trace_file_name(spec.sweep, spec.values[p / R], spec.algorithms[c % A],
                                               static_cast<int>(p % R)),
                               std::move(traces[c])});
    }
  }
  return result;
}

std::string format_number(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw ContractViolation("format_number failed");
  return std::string(buf, p);
}

double parse_number(std::string_view text) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || p != text.data() + text.size() || text.empty())
    throw ConfigError("not a number: '" + std::string(text) + "'");
  return v;
}

std::string results_csv(const std::vector<MetricRow>& rows) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.sweep_var + ',' + format_number(r.sweep_value) + ',' + r.algorithm + ',' + std::to_string(r.seed) + ',' +
           format_number(r.network_energy_j) + ',' + format_number(r.local_energy_j) + ',' +
           format_number(r.time_support_ratio) + ',' + format_number(r.cost_support_ratio) + ',' +
           format_number(r.best_fitness) + ',' + format_number(r.wall_time_s) + '\n';
  }
  return out;
}

std::vector<MetricRow> parse_results_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kResultsHeader) throw ConfigError("results CSV: missing or unexpected header");
  std::vector<MetricRow> rows;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto f = split(lines[n], ',');
    if (f.size() != 10)
      throw ConfigError("results CSV line " + std::to_string(n + 1) + ": expected 10 fields, got " +
                        std::to_string(f.size()));
    try {
      MetricRow r;
      r.sweep_var = std::string(f[0]);
      r.sweep_value = parse_number(f[1]);
      r.algorithm = std::string(f[2]);
      r.seed = parse_int(f[3]);
      r.network_energy_j = parse_number(f[4]);
      r.local_energy_j = parse_number(f[5]);
      r.time_support_ratio = parse_number(f[6]);
      r.cost_support_ratio = parse_number(f[7]);
      r.best_fitness = parse_number(f[8]);
      r.wall_time_s = parse_number(f[9]);
      rows.push_back(std::move(r));
    } catch (const ConfigError& e) {
      throw ConfigError("results CSV line " + std::to_string(n + 1) + ": " + e.what());
    }
  }
  return rows;
}

void write_csv(const std::vector<MetricRow>& rows, const std::string& path) { dump(results_csv(rows), path); }

std::vector<MetricRow> read_csv(const std::string& path) { return parse_results_csv(slurp(path)); }

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::string out(kTraceHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.iteration) + ',' + format_number(r.best_fitness) + ',' + format_number(r.avg_fitness) +
           ',' + format_number(r.best_energy) + ',' + format_number(r.diversity) + '\n';
  }
  return out;
}

std::vector<TraceRow> parse_trace_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != kTraceHeader) throw ConfigError("trace CSV: missing or unexpected header");
  std::vector<TraceRow> rows;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto f = split(lines[n], ',');
    if (f.size() != 5)
      throw ConfigError("trace CSV line " + std::to_string(n + 1) + ": expected 5 fields, got " +
                        std::to_string(f.size()));
    try {
      rows.push_back({parse_int(f[0]), parse_number(f[1]), parse_number(f[2]), parse_number(f[3]),
                      parse_number(f[4])});
    } catch (const ConfigError& e) {
      throw ConfigError("trace CSV line " + std::to_string(n + 1) + ": " + e.what());
    }
  }
  return rows;
}

void write_trace(const std::vector<TraceRow>& rows, const std::string& path) { dump(trace_csv(rows), path); }

std::vector<TraceRow> read_trace(const std::string& path) { return parse_trace_csv(slurp(path)); }

std::string trace_file_name(SweepVar var, double value, Algorithm algorithm, int replicate) {
  return "trace_" + std::string(to_string(var)) + "_" + format_number(value) + "_" + std::string(to_string(algorithm)) +
         "_" + std::to_string(replicate) + ".csv";
}

}  // namespace mecwave
