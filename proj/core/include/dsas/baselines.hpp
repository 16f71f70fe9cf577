#pragma once

#include <cstdint>
#include <span>

#include "dsas/cost_function.hpp"
#include "dsas/optimizer.hpp"
#include "dsas/scenario.hpp"

namespace dsas::baselines {

struct PenaltyConfig {
  double penalty_value = 100.0;
  double consensus_tolerance = 0.12;  // alpha-weighted km/h

  // penalty 100, tolerance 1e-3 * c_hi of the scenario.
  static PenaltyConfig for_scenario(const Scenario& scenario);
  void validate() const;
};

// sum_i f_i(s_i), plus penalty_value when the alpha-weighted speeds spread
// more than the tolerance.
double penalized_fitness(const Scenario& scenario, const ModelRegistry& registry,
                         std::span<const double> speeds, const PenaltyConfig& penalty);

// Resolves the cost handles once and returns the penalised objective over
// the per-vehicle speed vector.
Objective penalized_objective(const Scenario& scenario, const ModelRegistry& registry,
                              const PenaltyConfig& penalty);

// Per-vehicle [s_min, s_max] box.
Box speed_box(const Scenario& scenario);

struct PsoConfig {
  std::size_t swarm_size = 30;
  std::size_t max_iter = 50;
  std::uint64_t seed = 0;
  Box bounds;
  double inertia = 0.729;
  double cognitive = 1.494;
  double social = 1.494;
};

struct GwoConfig {
  std::size_t pack_size = 30;
  std::size_t max_iter = 50;
  std::uint64_t seed = 0;
  Box bounds;
};

OptimizerResult pso_minimize(const Objective& fitness, const PsoConfig& config);
OptimizerResult gwo_minimize(const Objective& fitness, const GwoConfig& config);

}  // namespace dsas::baselines
