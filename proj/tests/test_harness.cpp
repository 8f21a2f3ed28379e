#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "mecwave/errors.hpp"
#include "mecwave/harness.hpp"
#include "mecwave/units.hpp"

using namespace mecwave;

namespace {

ExperimentSpec tiny_spec() {
  ExperimentSpec s;
  s.scenario.num_md = 5;
  s.scenario.num_sbs = 3;
  s.scenario.num_clusters = 2;
  s.scenario.num_tasks_per_md = 2;
  s.optimizer.population = 6;
  s.optimizer.iterations = 5;
  s.master_seed = 11;
  return s;
}

EvaluationReport report_with(std::vector<double> delay_violation, std::vector<double> cost_violation) {
  EvaluationReport r;
  r.delay = std::vector<double>(delay_violation.size(), 1.0);
  r.delay_violation = std::move(delay_violation);
  r.cost_violation = std::move(cost_violation);
  return r;
}

}  // namespace

TEST(SupportRatios, CountsMetConstraints) {
  const auto all = support_ratios(report_with({-1.0, 0.0, -3.0, -0.5}, {-1.0, -1.0, 0.0, -2.0}));
  EXPECT_EQ(all.time, 1.0);
  EXPECT_EQ(all.cost, 1.0);
  const auto some = support_ratios(report_with({-1.0, 0.2, -3.0, -0.5}, {5.0, -1.0, 1e-12, -2.0}));
  EXPECT_EQ(some.time, 0.75);
  EXPECT_EQ(some.cost, 0.5);
  const auto none = support_ratios(EvaluationReport{});
  EXPECT_EQ(none.time, 1.0);
  EXPECT_EQ(none.cost, 1.0);
}

TEST(SupportRatios, LocalOnlyNeverBreachesCost) {
  const Scenario sc = build_scenario(ScenarioParams{}, 2);
  EXPECT_EQ(support_ratios(evaluate_local_only(sc)).cost, 1.0);
}

TEST(Sweep, ApplyTouchesOnlyItsField) {
  const ScenarioParams p;
  EXPECT_EQ(apply_sweep(p, SweepVar::md_density, 15.0).num_md, 15);
  EXPECT_DOUBLE_EQ(apply_sweep(p, SweepVar::max_power_dbm, 30.0).md_max_power_w, 1.0);
  EXPECT_EQ(apply_sweep(p, SweepVar::max_cpu_ghz, 1.5).md_cpu_hz, 1.5e9);
  EXPECT_EQ(apply_sweep(p, SweepVar::solitary_v, 7.0), p);
  const OptimizerConfig c;
  EXPECT_EQ(apply_sweep(c, SweepVar::solitary_v, 7.0).solitary_waves, 7);
  EXPECT_EQ(apply_sweep(c, SweepVar::max_height, 9.0).max_height, 9);
  EXPECT_EQ(apply_sweep(c, SweepVar::md_density, 9.0), c);
}

TEST(Sweep, NamesRoundTrip) {
  for (SweepVar v : {SweepVar::none, SweepVar::md_density, SweepVar::max_power_dbm, SweepVar::max_cpu_ghz,
                     SweepVar::solitary_v, SweepVar::max_height})
    EXPECT_EQ(parse_sweep_var(to_string(v)), v);
  EXPECT_EQ(to_string(SweepVar::solitary_v), "solitary_V");
  EXPECT_THROW(parse_sweep_var("density"), ConfigError);
}

TEST(Sweep, ValidationRejectsBadValues) {
  auto bad = [](auto edit) {
    ExperimentSpec s = tiny_spec();
    edit(s);
    EXPECT_THROW(validate(s), ConfigError);
  };
  bad([](ExperimentSpec& s) { s.values.clear(); });
  bad([](ExperimentSpec& s) { s.algorithms.clear(); });
  bad([](ExperimentSpec& s) { s.seeds = 0; });
  bad([](ExperimentSpec& s) { s.parallel = 0; });
  bad([](ExperimentSpec& s) {
    s.sweep = SweepVar::md_density;
    s.values = {10.5};
  });
  bad([](ExperimentSpec& s) {
    s.sweep = SweepVar::max_height;
    s.values = {0.0};
  });
  bad([](ExperimentSpec& s) {
    s.sweep = SweepVar::max_cpu_ghz;
    s.values = {-1.0};
  });
  bad([](ExperimentSpec& s) { s.optimizer.population = 0; });
  EXPECT_NO_THROW(validate(tiny_spec()));
}

TEST(Seeds, ScenarioAndAlgorithmFamiliesDiffer) {
  std::set<std::uint64_t> seen;
  for (int rep = 0; rep < 50; ++rep) {
    seen.insert(scenario_seed(1, rep));
    seen.insert(algorithm_seed(1, rep));
  }
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_NE(scenario_seed(1, 0), scenario_seed(2, 0));
}

TEST(Experiment, RowCountAndOrder) {
  ExperimentSpec s = tiny_spec();
  s.sweep = SweepVar::md_density;
  s.values = {3, 4, 5};
  s.algorithms = {Algorithm::aga, Algorithm::cmt};
  s.seeds = 5;
  std::vector<MetricRow> streamed;
  const ExperimentResult r = run_experiment(s, [&](const MetricRow& row) { streamed.push_back(row); });
  ASSERT_EQ(r.rows.size(), 30u);
  EXPECT_EQ(streamed, r.rows);
  EXPECT_TRUE(r.traces.empty());
  std::size_t c = 0;
  for (double v : s.values)
    for (int rep = 0; rep < 5; ++rep)
      for (const char* algo : {"aga", "cmt"}) {
        const MetricRow& row = r.rows[c++];
        EXPECT_EQ(row.sweep_var, "md_density");
        EXPECT_EQ(row.sweep_value, v);
        EXPECT_EQ(row.seed, rep);
        EXPECT_EQ(row.algorithm, algo);
        EXPECT_EQ(row.wall_time_s, 0.0);
        EXPECT_GE(row.time_support_ratio, 0.0);
        EXPECT_LE(row.time_support_ratio, 1.0);
      }
}

TEST(Experiment, CmtIgnoresThePowerSweep) {
  ExperimentSpec s = tiny_spec();
  s.sweep = SweepVar::max_power_dbm;
  s.values = {18, 23, 28};
  s.algorithms = {Algorithm::cmt};
  s.seeds = 3;
  const auto rows = run_experiment(s).rows;
  for (std::size_t i = 3; i < rows.size(); ++i) {
    const MetricRow& base = rows[i % 3];
    EXPECT_EQ(rows[i].network_energy_j, base.network_energy_j);
    EXPECT_EQ(rows[i].local_energy_j, base.local_energy_j);
    EXPECT_EQ(rows[i].best_fitness, base.best_fitness);
    EXPECT_EQ(rows[i].time_support_ratio, base.time_support_ratio);
  }
}

TEST(Experiment, ByteIdenticalAcrossRerunsAndParallelism) {
  ExperimentSpec s = tiny_spec();
  s.sweep = SweepVar::solitary_v;
  s.values = {1, 3};
  s.seeds = 2;
  s.emit_traces = true;
  const ExperimentResult a = run_experiment(s);
  const ExperimentResult b = run_experiment(s);
  s.parallel = 3;
  const ExperimentResult c = run_experiment(s);
  EXPECT_EQ(results_csv(a.rows), results_csv(b.rows));
  EXPECT_EQ(results_csv(a.rows), results_csv(c.rows));
  ASSERT_EQ(a.traces.size(), 16u);
  for (std::size_t i = 0; i < a.traces.size(); ++i) {
    EXPECT_EQ(a.traces[i].name, c.traces[i].name);
    EXPECT_EQ(trace_csv(a.traces[i].rows), trace_csv(c.traces[i].rows));
  }
  EXPECT_EQ(a.traces[0].name, "trace_solitary_V_1_agwwo_0.csv");
  EXPECT_EQ(a.traces[0].rows.size(), 6u);
  EXPECT_EQ(a.traces[3].rows.size(), 1u);  // cmt
}

TEST(Csv, EmptyRowsGiveHeaderOnly) {
  EXPECT_EQ(results_csv({}), std::string(kResultsHeader) + "\n");
  EXPECT_TRUE(parse_results_csv(results_csv({})).empty());
  EXPECT_EQ(trace_csv({}), std::string(kTraceHeader) + "\n");
}

TEST(Csv, RoundTripIsExact) {
  std::vector<MetricRow> rows{
      {"max_power_dbm", 23.0, "agwwo", 4, 465.12345678901234, 1234.5, 0.95, 1.0, -1.5e21, 0.0},
      {"none", 0.0, "cmt", 0, 1e-300, 0.1 + 0.2, 1.0 / 3.0, 0.0, -0.0, 12.5},
  };
  EXPECT_EQ(parse_results_csv(results_csv(rows)), rows);
  const auto dir = std::filesystem::temp_directory_path() / "mecwave_csv_test";
  std::filesystem::create_directories(dir);
  write_csv(rows, (dir / "results.csv").string());
  EXPECT_EQ(read_csv((dir / "results.csv").string()), rows);

  std::vector<TraceRow> trace{{0, -10.0, -20.0, 10.0, 0.3}, {1, -9.5, -19.0, 9.5, 1.0 / 7.0}};
  EXPECT_EQ(parse_trace_csv(trace_csv(trace)), trace);
  write_trace(trace, (dir / "t.csv").string());
  EXPECT_EQ(read_trace((dir / "t.csv").string()), trace);
  std::filesystem::remove_all(dir);
}

TEST(Csv, MalformedInputNamesTheLine) {
  const std::string head = std::string(kResultsHeader) + "\n";
  EXPECT_THROW(parse_results_csv(""), ConfigError);
  EXPECT_THROW(parse_results_csv("a,b\n"), ConfigError);
  try {
    parse_results_csv(head + "none,0,cmt,0,1,1,1,1,1,0\nnone,0,cmt,x,1,1,1,1,1,0\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_results_csv(head + "none,0,cmt,0,1,1,1,1,1\n"), ConfigError);
  EXPECT_THROW(parse_trace_csv(std::string(kTraceHeader) + "\n0,1,2,3\n"), ConfigError);
  EXPECT_THROW(read_csv("/nonexistent/results.csv"), ConfigError);
  EXPECT_THROW(parse_number("1.5x"), ConfigError);
  EXPECT_THROW(parse_number(""), ConfigError);
}

TEST(Csv, TraceFileNames) {
  EXPECT_EQ(trace_file_name(SweepVar::max_power_dbm, 23.0, Algorithm::wwo, 2), "trace_max_power_dbm_23_wwo_2.csv");
  EXPECT_EQ(trace_file_name(SweepVar::max_cpu_ghz, 1.5, Algorithm::aga, 0), "trace_max_cpu_ghz_1.5_aga_0.csv");
  EXPECT_EQ(trace_file_name(SweepVar::none, 0.0, Algorithm::cmt, 9), "trace_none_0_cmt_9.csv");
}
