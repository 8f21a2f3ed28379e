#include "mecwave/optimizers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "mecwave/errors.hpp"
#include "mecwave/evaluator.hpp"

namespace mecwave {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid optimizer config: " + what);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double mean_fitness(const std::vector<Score>& scores) {
  double s = 0.0;
  for (const auto& x : scores) s += x.fitness;
  return s / static_cast<double>(scores.size());
}

struct Best {
  Wave wave;
  Score score;
};

// State shared by the wave-based optimizers.
struct Run {
  const OptimizerConfig& cfg;
  Evaluator eval;
  std::uint64_t seed;
  std::vector<Wave> pop;
  std::vector<Score> scores;
  Best historical;

  Run(const Scenario& sc, const OptimizerConfig& c, std::uint64_t s)
      : cfg(c), eval(sc, c.alpha, c.beta, c.mode, c.workers), seed(s) {}

  const Bounds& bounds() const { return eval.bounds(); }
  FitnessMode mode() const { return cfg.mode; }

  void initialize() {
    Rng rng = make_stream(seed, Stream::init);
    pop.clear();
    for (int m = 0; m < cfg.population; ++m) pop.push_back(init_wave(bounds(), rng, cfg.max_height));
    scores = eval.score_all(pop);
    const std::size_t b = best_index(scores, mode());
    historical = {pop[b], scores[b]};
  }

  Best current_best() const {
    const std::size_t b = best_index(scores, mode());
    return {pop[b], scores[b]};
  }

  void update_historical() {
    const std::size_t b = best_index(scores, mode());
    if (better(scores[b], historical.score, mode())) historical = {pop[b], scores[b]};
  }

  TraceRow row(int t) const {
    return {t, historical.score.fitness, mean_fitness(scores), historical.score.energy,
            population_diversity(pop, bounds())};
  }

  // V solitary waves around `around`; the best one if it strictly beats `score`.
  bool try_break(Wave& around, Score& score, int t, Rng& rng) const {
    const double u = breaking_coefficient(t, cfg.iterations, cfg.u_min, cfg.u_max);
    std::vector<Wave> solitary;
    solitary.reserve(static_cast<std::size_t>(cfg.solitary_waves));
    for (int v = 0; v < cfg.solitary_waves; ++v) solitary.push_back(break_wave(around, u, bounds(), rng));
    const std::vector<Score> s = eval.score_all(solitary);
    const std::size_t b = best_index(s, mode());
    if (!better(s[b], score, mode())) return false;
    const int height = around.height;
    around = solitary[b];
    around.height = height;
    score = s[b];
    return true;
  }

  // Propagation block shared by AGWWO and AGA: selection, diversity-guided
  // mutation, adaptive crossover and adaptive mutation. Returns the offspring.
  Selection propagate(Rng& sel_rng, Rng& div_rng, Rng& cx_rng, Rng& mut_rng) const {
    Selection next = tournament_select(pop, scores, historical.wave, historical.score, mode(), sel_rng);
    const std::size_t M = next.waves.size();

    const double D = population_diversity(next.waves, bounds());
    const double p_div = diversity_mutation_probability(D, cfg.a5, cfg.a6, cfg.a7, cfg.d1, cfg.d2);
    for (auto& w : next.waves) mutate_wave(w, p_div, bounds(), div_rng);
    const std::vector<Score> s = eval.score_all(next.waves);

    double f_min = s[0].fitness;
    double f_max = s[0].fitness;
    for (const auto& x : s) {
      f_min = std::min(f_min, x.fitness);
      f_max = std::max(f_max, x.fitness);
    }
    const double f_ave = mean_fitness(s);

    for (std::size_t m = 0; m + 1 < M; m += 2) {
      const double pair_min = std::min(s[m].fitness, s[m + 1].fitness);
      const double pc = crossover_probability(pair_min, f_min, f_ave, cfg.a1, cfg.a2);
      crossover(next.waves[m], next.waves[m + 1], pc, bounds(), cx_rng);
    }
    for (std::size_t m = 0; m < M; ++m) {
      const double pm = mutation_probability(s[m].fitness, f_max, f_ave, cfg.a3, cfg.a4);
      mutate_wave(next.waves[m], pm, bounds(), mut_rng);
    }
    next.scores = eval.score_all(next.waves);
    return next;
  }

  RunTrace finish(std::string name, std::vector<TraceRow> rows, Clock::time_point start) const {
    RunTrace out;
    out.algorithm = std::move(name);
    out.rows = std::move(rows);
    out.best = historical.wave;
    out.best_score = historical.score;
    out.report = eval.report(historical.wave);
    out.wall_time_s = seconds_since(start);
    return out;
  }
};

}  // namespace

void validate(const OptimizerConfig& c) {
  require(c.population >= 1, "population must be >= 1");
  require(c.iterations >= 0, "iterations must be >= 0");
  require(c.solitary_waves >= 1, "solitary_waves must be >= 1");
  require(c.max_height >= 1, "max_height must be >= 1");
  require(0.0 <= c.a1 && c.a1 <= c.a2 && c.a2 <= 1.0, "need 0 <= a1 <= a2 <= 1");
  require(0.0 <= c.a3 && c.a3 <= c.a4 && c.a4 <= 1.0, "need 0 <= a3 <= a4 <= 1");
  const bool diversity_off = c.a5 == 0.0 && c.a6 == 0.0 && c.a7 == 0.0;
  require(diversity_off || (0.0 < c.a6 && c.a6 < c.a5 && c.a5 < 1.0), "need 0 < a6 < a5 < 1");
  require(diversity_off || (0.0 < c.a7 && c.a7 < 1.0), "need 0 < a7 < 1");
  require(0.0 < c.d1 && c.d1 < c.d2 && c.d2 < 1.0, "need 0 < d1 < d2 < 1");
  require(0.0 < c.u_min && c.u_min < c.u_max, "need 0 < u_min < u_max");
  require(c.alpha >= 0.0 && c.beta >= 0.0, "penalty factors must be non-negative");
  require(c.wwo_lambda_init > 0.0 && c.wwo_reduction > 0.0 && c.wwo_epsilon > 0.0, "WWO constants must be positive");
  require(c.workers >= 1, "workers must be >= 1");
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::agwwo: return "agwwo";
    case Algorithm::wwo: return "wwo";
    case Algorithm::aga: return "aga";
    case Algorithm::cmt: return "cmt";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "agwwo") return Algorithm::agwwo;
  if (name == "wwo") return Algorithm::wwo;
  if (name == "aga") return Algorithm::aga;
  if (name == "cmt") return Algorithm::cmt;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected agwwo, wwo, aga or cmt)");
}

RunTrace run_agwwo(const Scenario& sc, const OptimizerConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  const auto start = Clock::now();
  Run run(sc, cfg, seed);
  Rng sel_rng = make_stream(seed, Stream::selection);
  Rng div_rng = make_stream(seed, Stream::diversity);
  Rng cx_rng = make_stream(seed, Stream::crossover);
  Rng mut_rng = make_stream(seed, Stream::mutation);
  Rng ref_rng = make_stream(seed, Stream::refraction);
  Rng brk_rng = make_stream(seed, Stream::breaking);

  run.initialize();
  std::vector<TraceRow> rows{run.row(0)};
  const std::size_t M = run.pop.size();

  for (int t = 1; t <= cfg.iterations; ++t) {
    Selection next = run.propagate(sel_rng, div_rng, cx_rng, mut_rng);
    Best current = run.current_best();
    std::vector<std::size_t> refracted;

    for (std::size_t m = 0; m < M; ++m) {
      if (better(next.scores[m], run.scores[m], run.mode())) {
        Wave& candidate = next.waves[m];
        candidate.height = run.pop[m].height;
        if (better(next.scores[m], current.score, run.mode())) {
          run.try_break(candidate, next.scores[m], t, brk_rng);
          current = {candidate, next.scores[m]};
        }
        run.pop[m] = candidate;
        run.scores[m] = next.scores[m];
      } else if (--run.pop[m].height == 0) {
        refract_wave(run.pop[m], current.wave, run.bounds(), ref_rng);
        run.pop[m].height = cfg.max_height;
        refracted.push_back(m);
      }
    }

    std::vector<Wave> redo;
    for (std::size_t m : refracted) redo.push_back(run.pop[m]);
    const std::vector<Score> s = run.eval.score_all(redo);
    for (std::size_t r = 0; r < refracted.size(); ++r) run.scores[refracted[r]] = s[r];

    run.update_historical();
    rows.push_back(run.row(t));
  }
  return run.finish("agwwo", std::move(rows), start);
}

RunTrace run_aga(const Scenario& sc, const OptimizerConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  const auto start = Clock::now();
  Run run(sc, cfg, seed);
  Rng sel_rng = make_stream(seed, Stream::selection);
  Rng div_rng = make_stream(seed, Stream::diversity);
  Rng cx_rng = make_stream(seed, Stream::crossover);
  Rng mut_rng = make_stream(seed, Stream::mutation);

  run.initialize();
  std::vector<TraceRow> rows{run.row(0)};

  for (int t = 1; t <= cfg.iterations; ++t) {
    Selection next = run.propagate(sel_rng, div_rng, cx_rng, mut_rng);
    for (std::size_t m = 0; m < run.pop.size(); ++m) {
      if (better(next.scores[m], run.scores[m], run.mode())) {
        run.pop[m] = next.waves[m];
        run.scores[m] = next.scores[m];
      }
    }
    run.update_historical();
    rows.push_back(run.row(t));
  }
  return run.finish("aga", std::move(rows), start);
}

RunTrace run_wwo(const Scenario& sc, const OptimizerConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  const auto start = Clock::now();
  Run run(sc, cfg, seed);
  Rng prop_rng = make_stream(seed, Stream::propagation);
  Rng ref_rng = make_stream(seed, Stream::refraction);
  Rng brk_rng = make_stream(seed, Stream::breaking);

  run.initialize();
  std::vector<TraceRow> rows{run.row(0)};
  const std::size_t M = run.pop.size();
  std::vector<double> lambda(M, cfg.wwo_lambda_init);

  for (int t = 1; t <= cfg.iterations; ++t) {
    std::vector<Wave> moved = run.pop;
    for (std::size_t m = 0; m < M; ++m) {
      Wave& w = moved[m];
      for (Gene g : kGroups) {
        for (std::size_t i = 0; i < w[g].size(); ++i) {
          const double step = uniform(prop_rng, -1.0, 1.0) * lambda[m] * gene_range(g, i, run.bounds(), w);
          w[g][i] += step;
        }
      }
      repair_in_place(w, run.bounds());
    }
    std::vector<Score> moved_scores = run.eval.score_all(moved);

    Best current = run.current_best();
    std::vector<std::size_t> refracted;
    for (std::size_t m = 0; m < M; ++m) {
      if (better(moved_scores[m], run.scores[m], run.mode())) {
        Wave& candidate = moved[m];
        if (better(moved_scores[m], current.score, run.mode())) {
          run.try_break(candidate, moved_scores[m], t, brk_rng);
          current = {candidate, moved_scores[m]};
        }
        run.pop[m] = candidate;
        run.pop[m].height = cfg.max_height;
        run.scores[m] = moved_scores[m];
      } else if (--run.pop[m].height == 0) {
        refract_wave(run.pop[m], current.wave, run.bounds(), ref_rng);
        run.pop[m].height = cfg.max_height;
        refracted.push_back(m);
      }
    }
    std::vector<Wave> redo;
    for (std::size_t m : refracted) redo.push_back(run.pop[m]);
    const std::vector<Score> s = run.eval.score_all(redo);
    for (std::size_t r = 0; r < refracted.size(); ++r) run.scores[refracted[r]] = s[r];

    // wavelength shrinks for fitter waves
    double f_min = run.scores[0].fitness;
    double f_max = run.scores[0].fitness;
    for (const auto& x : run.scores) {
      f_min = std::min(f_min, x.fitness);
      f_max = std::max(f_max, x.fitness);
    }
    for (std::size_t m = 0; m < M; ++m) {
      const double e = (run.scores[m].fitness - f_min + cfg.wwo_epsilon) / (f_max - f_min + cfg.wwo_epsilon);
      lambda[m] *= std::pow(cfg.wwo_reduction, -e);
    }

    run.update_historical();
    rows.push_back(run.row(t));
  }
  return run.finish("wwo", std::move(rows), start);
}

RunTrace run_cmt(const Scenario& sc, const OptimizerConfig& cfg) {
  const auto start = Clock::now();
  RunTrace out;
  out.algorithm = "cmt";
  out.report = evaluate_local_only(sc);
  out.best_score = {fitness(out.report, cfg.alpha, cfg.beta), normalized_violation(sc, out.report),
                    out.report.network_energy};
  out.rows.push_back({0, out.best_score.fitness, out.best_score.fitness, out.report.network_energy, 0.0});
  out.wall_time_s = seconds_since(start);
  return out;
}

RunTrace run_algorithm(Algorithm a, const Scenario& sc, const OptimizerConfig& cfg, std::uint64_t seed) {
  switch (a) {
    case Algorithm::agwwo: return run_agwwo(sc, cfg, seed);
    case Algorithm::wwo: return run_wwo(sc, cfg, seed);
    case Algorithm::aga: return run_aga(sc, cfg, seed);
    case Algorithm::cmt: return run_cmt(sc, cfg);
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace mecwave
