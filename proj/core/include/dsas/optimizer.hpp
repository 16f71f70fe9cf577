#pragma once

#include <functional>
#include <span>
#include <vector>

#include "dsas/run_record.hpp"

namespace dsas {

// Per-dimension closed box [lo_d, hi_d].
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box uniform(std::size_t dims, double lo, double hi);

  std::size_t dims() const noexcept { return lo.size(); }
  void clamp(std::span<double> x) const;
  bool contains(std::span<const double> x) const;
  // Throws ConfigError unless sizes agree and lo < hi in every dimension.
  void validate() const;
};

using Objective = std::function<double(std::span<const double>)>;

struct OptimizerResult {
  std::vector<double> best_position;
  double best_fitness = 0.0;
  RunRecord record;
};

// Wraps objective evaluation so that any exception surfaces as an
// EvaluationError carrying the offending position.
double evaluate_at(const Objective& objective, std::span<const double> x);

}  // namespace dsas
