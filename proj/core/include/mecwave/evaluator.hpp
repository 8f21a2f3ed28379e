#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mecwave/encoding.hpp"
#include "mecwave/operators.hpp"
#include "mecwave/scenario.hpp"
#include "mecwave/sysmodel.hpp"

namespace mecwave {

// Runs body(i) for i in [0, n) on up to `workers` threads. Items are split
// into contiguous blocks; body must only write to slot i.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

// Wave -> Score over one immutable scenario. Batch scoring is the only place
// work is spread over threads, and it writes one slot per wave, so the result
// is the same for any worker count.
class Evaluator {
 public:
  Evaluator(const Scenario& scenario, double alpha, double beta, FitnessMode mode, int workers);

  const Scenario& scenario() const { return *scenario_; }
  const Bounds& bounds() const { return bounds_; }
  FitnessMode mode() const { return mode_; }

  EvaluationReport report(const Wave& wave) const;
  Score score(const Wave& wave) const;
  Score score(const EvaluationReport& report) const;
  std::vector<Score> score_all(std::span<const Wave> waves) const;

 private:
  const Scenario* scenario_;
  Bounds bounds_;
  double alpha_;
  double beta_;
  FitnessMode mode_;
  int workers_;
};

}  // namespace mecwave
