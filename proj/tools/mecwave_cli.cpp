// mecwave: run offloading experiments from a config file.
//
//   mecwave run    --config cfg.toml --out results/
//   mecwave sweep  --config sweep.toml --parallel 4
//   mecwave trace  --config cfg.toml --algorithms agwwo,wwo
//   mecwave scenario --config cfg.toml --seed 7 --out snap/

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mecwave/config.hpp"
#include "mecwave/errors.hpp"
#include "mecwave/harness.hpp"

namespace fs = std::filesystem;
using namespace mecwave;

namespace {

struct Common {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::string algorithms;
  std::optional<int> parallel;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "config file (TOML subset); built-in defaults if omitted")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
  cmd->add_option("--seed", c.seed, "master seed, overrides [experiment] master_seed");
  cmd->add_option("--algorithms", c.algorithms, "comma separated subset of agwwo,wwo,aga,cmt");
  cmd->add_option("--parallel", c.parallel, "experiment cells run concurrently")->check(CLI::PositiveNumber);
}

ExperimentSpec load(const Common& c) {
  ExperimentSpec spec = c.config.empty() ? ExperimentSpec{} : load_config(c.config);
  if (c.seed) spec.master_seed = *c.seed;
  if (c.parallel) spec.parallel = *c.parallel;
  if (!c.algorithms.empty()) {
    spec.algorithms.clear();
    std::stringstream ss(c.algorithms);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty()) spec.algorithms.push_back(parse_algorithm(name));
    }
  }
  validate(spec);
  return spec;
}

void print_row(const MetricRow& r) {
  std::fprintf(stderr, "%s=%s %-5s seed %d  E=%.6g J  local=%.6g J  time=%.2f cost=%.2f\n", r.sweep_var.c_str(),
               format_number(r.sweep_value).c_str(), r.algorithm.c_str(), r.seed, r.network_energy_j,
               r.local_energy_j, r.time_support_ratio, r.cost_support_ratio);
}

int execute(ExperimentSpec spec, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const ExperimentResult result = run_experiment(spec, print_row);
  const fs::path csv = fs::path(out_dir) / "results.csv";
  write_csv(result.rows, csv.string());
  for (const auto& t : result.traces) write_trace(t.rows, (fs::path(out_dir) / t.name).string());
  std::fprintf(stderr, "wrote %zu rows to %s", result.rows.size(), csv.string().c_str());
  if (!result.traces.empty()) std::fprintf(stderr, " and %zu traces", result.traces.size());
  std::fprintf(stderr, "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mecwave - multi-step task offloading experiments"};
  app.require_subcommand(1);

  Common run_opts, sweep_opts, trace_opts, scen_opts, cfg_opts;
  auto* run = app.add_subcommand("run", "run every algorithm on a single configuration (sweep ignored)");
  add_common(run, run_opts);
  auto* sweep = app.add_subcommand("sweep", "run the sweep grid declared in [experiment]");
  add_common(sweep, sweep_opts);
  auto* trace = app.add_subcommand("trace", "like sweep, also writing per-run convergence traces");
  add_common(trace, trace_opts);
  auto* scen = app.add_subcommand("scenario", "write the scenario snapshot(s) a config generates as JSON");
  add_common(scen, scen_opts);
  auto* cfg = app.add_subcommand("config", "print the effective configuration");
  add_common(cfg, cfg_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ExperimentSpec spec = load(run_opts);
      spec.sweep = SweepVar::none;
      spec.values = {0.0};
      return execute(spec, run_opts.out);
    }
    if (*sweep) return execute(load(sweep_opts), sweep_opts.out);
    if (*trace) {
      ExperimentSpec spec = load(trace_opts);
      spec.emit_traces = true;
      return execute(spec, trace_opts.out);
    }
    if (*scen) {
      const ExperimentSpec spec = load(scen_opts);
      fs::create_directories(scen_opts.out);
      for (double v : spec.values) {
        for (int rep = 0; rep < spec.seeds; ++rep) {
          const Scenario sc =
              build_scenario(apply_sweep(spec.scenario, spec.sweep, v), scenario_seed(spec.master_seed, rep));
          const fs::path p = fs::path(scen_opts.out) / ("scenario_" + std::string(to_string(spec.sweep)) + "_" +
                                                         format_number(v) + "_" + std::to_string(rep) + ".json");
          save_scenario(sc, p.string());
          std::fprintf(stderr, "wrote %s\n", p.string().c_str());
        }
      }
      return 0;
    }
    if (*cfg) {
      std::cout << dump_config(load(cfg_opts));
      return 0;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "mecwave: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mecwave: %s\n", e.what());
    return 1;
  }
  return 0;
}
