#include "mecwave/evaluator.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>

namespace mecwave {

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = n * t / threads;
      const std::size_t end = n * (t + 1) / threads;
      pool.emplace_back([&, begin, end] {
        try {
          for (std::size_t i = begin; i < end; ++i) body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

Evaluator::Evaluator(const Scenario& scenario, double alpha, double beta, FitnessMode mode, int workers)
    : scenario_(&scenario),
      bounds_(make_bounds(scenario)),
      alpha_(alpha),
      beta_(beta),
      mode_(mode),
      workers_(workers) {}

EvaluationReport Evaluator::report(const Wave& wave) const {
  return evaluate_solution(*scenario_, decode(wave, bounds_));
}

Score Evaluator::score(const EvaluationReport& r) const {
  return {fitness(r, alpha_, beta_), normalized_violation(*scenario_, r), r.network_energy};
}

Score Evaluator::score(const Wave& wave) const { return score(report(wave)); }

std::vector<Score> Evaluator::score_all(std::span<const Wave> waves) const {
  std::vector<Score> out(waves.size());
  parallel_for(waves.size(), workers_, [&](std::size_t i) { out[i] = score(waves[i]); });
  return out;
}

}  // namespace mecwave
