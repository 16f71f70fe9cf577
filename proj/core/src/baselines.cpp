#include "dsas/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "dsas/error.hpp"
#include "dsas/rng.hpp"
#include "dsas/woa.hpp"

namespace dsas::baselines {

PenaltyConfig PenaltyConfig::for_scenario(const Scenario& scenario) {
  PenaltyConfig out;
  out.consensus_tolerance = 1e-3 * feasible_interval(scenario).hi;
  return out;
}

void PenaltyConfig::validate() const {
  if (!(penalty_value > 0.0)) throw ConfigError("penalty value must be positive");
  if (!(consensus_tolerance > 0.0)) throw ConfigError("consensus tolerance must be positive");
}

namespace {

double penalized(const Scenario& scenario, std::span<const CostHandle> costs, std::span<const double> speeds,
                 const PenaltyConfig& penalty) {
  if (speeds.size() != scenario.size()) throw ConfigError("speed vector does not match the fleet size");
  double sum = 0.0;
  for (std::size_t i = 0; i < speeds.size(); ++i) sum += costs[i]->evaluate(speeds[i]);
  if (consensus_spread(scenario, speeds) > penalty.consensus_tolerance) sum += penalty.penalty_value;
  return sum;
}

}  // namespace

double penalized_fitness(const Scenario& scenario, const ModelRegistry& registry, std::span<const double> speeds,
                         const PenaltyConfig& penalty) {
  penalty.validate();
  const auto costs = registry.resolve(scenario);
  return penalized(scenario, costs, speeds, penalty);
}

Objective penalized_objective(const Scenario& scenario, const ModelRegistry& registry,
                              const PenaltyConfig& penalty) {
  penalty.validate();
  return [scenario, costs = registry.resolve(scenario), penalty](std::span<const double> speeds) {
    return penalized(scenario, costs, speeds, penalty);
  };
}

Box speed_box(const Scenario& scenario) {
  Box box;
  for (const auto& v : scenario.vehicles) {
    box.lo.push_back(v.s_min);
    box.hi.push_back(v.s_max);
  }
  return box;
}

OptimizerResult pso_minimize(const Objective& fitness, const PsoConfig& config) {
  config.bounds.validate();
  if (config.swarm_size == 0) throw ConfigError("pso: swarm size must be positive");
  const auto& box = config.bounds;
  const std::size_t dims = box.dims();
  Rng rng(config.seed);

  std::vector<std::vector<double>> x(config.swarm_size, std::vector<double>(dims));
  std::vector<std::vector<double>> v(config.swarm_size, std::vector<double>(dims));
  for (std::size_t i = 0; i < config.swarm_size; ++i) {
    for (std::size_t d = 0; d < dims; ++d) {
      x[i][d] = rng.uniform(box.lo[d], box.hi[d]);
      v[i][d] = 0.5 * (rng.uniform(box.lo[d], box.hi[d]) - x[i][d]);
    }
  }

  std::uint64_t evaluations = 0;
  auto pbest = x;
  std::vector<double> pbest_f(config.swarm_size);
  std::size_t g = 0;
  for (std::size_t i = 0; i < config.swarm_size; ++i) {
    pbest_f[i] = evaluate_at(fitness, x[i]);
    ++evaluations;
    if (pbest_f[i] < pbest_f[g]) g = i;
  }

  OptimizerResult result;
  result.record.algorithm = "pso";
  result.record.seed = config.seed;
  result.record.rows.push_back({0, pbest_f[g], evaluations, false});

  for (std::size_t k = 0; k < config.max_iter; ++k) {
    const auto gbest = pbest[g];
    for (std::size_t i = 0; i < config.swarm_size; ++i) {
      for (std::size_t d = 0; d < dims; ++d) {
        const double vmax = box.hi[d] - box.lo[d];
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        double vel = config.inertia * v[i][d] + config.cognitive * r1 * (pbest[i][d] - x[i][d]) +
                     config.social * r2 * (gbest[d] - x[i][d]);
        vel = std::clamp(vel, -vmax, vmax);
        double pos = x[i][d] + vel;
        if (pos < box.lo[d] || pos > box.hi[d]) {
          pos = std::clamp(pos, box.lo[d], box.hi[d]);
          vel = 0.0;
        }
        x[i][d] = pos;
        v[i][d] = vel;
      }
    }
    for (std::size_t i = 0; i < config.swarm_size; ++i) {
      const double f = evaluate_at(fitness, x[i]);
      ++evaluations;
      if (f < pbest_f[i]) {
        pbest_f[i] = f;
        pbest[i] = x[i];
      }
    }
    for (std::size_t i = 0; i < config.swarm_size; ++i) {
      if (pbest_f[i] < pbest_f[g]) g = i;
    }
    result.record.rows.push_back({k + 1, pbest_f[g], evaluations, false});
  }

  result.best_position = pbest[g];
  result.best_fitness = pbest_f[g];
  return result;
}

namespace {

struct Leader {
  std::vector<double> position;
  double score = std::numeric_limits<double>::infinity();
};

// Alpha, beta and delta are the three best positions seen so far.
void offer(std::array<Leader, 3>& leaders, const std::vector<double>& x, double f) {
  if (f < leaders[0].score) {
    leaders[2] = leaders[1];
    leaders[1] = leaders[0];
    leaders[0] = {x, f};
  } else if (f < leaders[1].score) {
    leaders[2] = leaders[1];
    leaders[1] = {x, f};
  } else if (f < leaders[2].score) {
    leaders[2] = {x, f};
  }
}

}  // namespace

OptimizerResult gwo_minimize(const Objective& fitness, const GwoConfig& config) {
  config.bounds.validate();
  if (config.pack_size == 0) throw ConfigError("gwo: pack size must be positive");
  const auto& box = config.bounds;
  const std::size_t dims = box.dims();
  Rng rng(config.seed);

  std::vector<std::vector<double>> wolves(config.pack_size, std::vector<double>(dims));
  for (auto& w : wolves) {
    for (std::size_t d = 0; d < dims; ++d) w[d] = rng.uniform(box.lo[d], box.hi[d]);
  }

  std::array<Leader, 3> leaders;
  std::uint64_t evaluations = 0;
  for (const auto& w : wolves) {
    offer(leaders, w, evaluate_at(fitness, w));
    ++evaluations;
  }
  // Packs smaller than three reuse the best wolf for the missing ranks.
  for (auto& l : leaders) {
    if (l.position.empty()) l = leaders[0];
  }

  OptimizerResult result;
  result.record.algorithm = "gwo";
  result.record.seed = config.seed;
  result.record.rows.push_back({0, leaders[0].score, evaluations, false});

  for (std::size_t k = 0; k < config.max_iter; ++k) {
    const double a = woa::decay_at(k, config.max_iter);
    for (auto& w : wolves) {
      for (std::size_t d = 0; d < dims; ++d) {
        double sum = 0.0;
        for (const auto& leader : leaders) {
          const double A = 2.0 * a * rng.uniform() - a;
          const double C = 2.0 * rng.uniform();
          const double dist = std::abs(C * leader.position[d] - w[d]);
          sum += leader.position[d] - A * dist;
        }
        w[d] = std::clamp(sum / 3.0, box.lo[d], box.hi[d]);
      }
    }
    for (const auto& w : wolves) {
      offer(leaders, w, evaluate_at(fitness, w));
      ++evaluations;
    }
    result.record.rows.push_back({k + 1, leaders[0].score, evaluations, false});
  }

  result.best_position = leaders[0].position;
  result.best_fitness = leaders[0].score;
  return result;
}

}  // namespace dsas::baselines
