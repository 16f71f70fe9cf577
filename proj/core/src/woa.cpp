#include "dsas/woa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dsas/error.hpp"

namespace dsas::woa {

double decay_at(std::size_t k, std::size_t k_max) {
  if (k_max == 0) return 0.0;
  const double d = 2.0 * (1.0 - static_cast<double>(k) / static_cast<double>(k_max));
  return std::clamp(d, 0.0, 2.0);
}

Coefficients coefficient_vectors(double decay, std::size_t dims, Rng& rng) {
  Coefficients out;
  out.A.resize(dims);
  out.C.resize(dims);
  for (auto& a : out.A) a = 2.0 * decay * rng.uniform() - decay;
  for (auto& c : out.C) c = 2.0 * rng.uniform();
  return out;
}

std::vector<double> encircle_step(std::span<const double> x, std::span<const double> x_star,
                                  std::span<const double> a, std::span<const double> c) {
  std::vector<double> out(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) {
    const double dist = std::abs(c[d] * x_star[d] - x[d]);
    out[d] = x_star[d] - a[d] * dist;
  }
  return out;
}

std::vector<double> spiral_step(std::span<const double> x, std::span<const double> x_star,
                                const SpiralParams& params) {
  const double factor = std::exp(params.b_spiral * params.l) * std::cos(2.0 * std::numbers::pi * params.l);
  std::vector<double> out(x.size());
  for (std::size_t d = 0; d < x.size(); ++d) out[d] = std::abs(x_star[d] - x[d]) * factor + x_star[d];
  return out;
}

std::vector<double> explore_step(std::span<const double> x, std::span<const double> x_rand,
                                 std::span<const double> a, std::span<const double> c) {
  return encircle_step(x, x_rand, a, c);
}

UpdateDraws draw_update(double decay, std::size_t dims, std::size_t population, Rng& rng) {
  UpdateDraws draws;
  draws.coeffs = coefficient_vectors(decay, dims, rng);
  draws.a_scalar = 2.0 * decay * rng.uniform() - decay;
  draws.l = rng.uniform(-1.0, 1.0);
  draws.p = rng.uniform();
  draws.peer = rng.index(std::max<std::size_t>(population, 1));
  return draws;
}

Branch select_branch(const UpdateDraws& draws) {
  if (draws.p >= 0.5) return Branch::Spiral;
  return std::abs(draws.a_scalar) < 1.0 ? Branch::Encircle : Branch::Explore;
}

std::vector<double> update_agent(std::span<const double> x,
                                 std::span<const std::vector<double>> population,
                                 std::span<const double> x_star, const UpdateDraws& draws,
                                 double b_spiral, const Box& bounds, Branch* taken) {
  const Branch branch = select_branch(draws);
  std::vector<double> next;
  switch (branch) {
    case Branch::Encircle:
      next = encircle_step(x, x_star, draws.coeffs.A, draws.coeffs.C);
      break;
    case Branch::Explore:
      next = explore_step(x, population[draws.peer], draws.coeffs.A, draws.coeffs.C);
      break;
    case Branch::Spiral:
      next = spiral_step(x, x_star, SpiralParams{b_spiral, draws.l});
      break;
  }
  bounds.clamp(next);
  if (taken != nullptr) *taken = branch;
  return next;
}

std::vector<double> update_agent(std::span<const double> x, const SwarmState& state,
                                 double b_spiral, const Box& bounds, Rng& rng, Branch* taken) {
  const auto draws = draw_update(state.decay, x.size(), state.positions.size(), rng);
  return update_agent(x, state.positions, state.best_position, draws, b_spiral, bounds, taken);
}

OptimizerResult woa_minimize(const Objective& fitness, const WoaConfig& config) {
  config.bounds.validate();
  if (config.n_whales == 0) throw ConfigError("woa: at least one whale required");
  if (!(config.b_spiral > 0.0)) throw ConfigError("woa: spiral constant must be positive");

  const auto& box = config.bounds;
  const std::size_t dims = box.dims();
  Rng rng(config.seed);

  SwarmState state;
  state.max_iter = config.max_iter;
  state.positions.resize(config.n_whales, std::vector<double>(dims));
  for (auto& x : state.positions) {
    for (std::size_t d = 0; d < dims; ++d) x[d] = rng.uniform(box.lo[d], box.hi[d]);
  }

  std::uint64_t evaluations = 0;
  state.best_fitness = std::numeric_limits<double>::infinity();
  for (const auto& x : state.positions) {
    const double f = evaluate_at(fitness, x);
    ++evaluations;
    if (f < state.best_fitness) {
      state.best_fitness = f;
      state.best_position = x;
    }
  }

  OptimizerResult result;
  result.record.algorithm = "woa";
  result.record.seed = config.seed;
  result.record.rows.push_back({0, state.best_fitness, evaluations, false});

  for (std::size_t k = 0; k < config.max_iter; ++k) {
    state.iteration = k;
    state.decay = decay_at(k, config.max_iter);
    for (auto& x : state.positions) {
      x = update_agent(x, state, config.b_spiral, box, rng);
    }
    for (const auto& x : state.positions) {
      const double f = evaluate_at(fitness, x);
      ++evaluations;
      if (f < state.best_fitness) {
        state.best_fitness = f;
        state.best_position = x;
      }
    }
    result.record.rows.push_back({k + 1, state.best_fitness, evaluations, false});
  }

  result.best_position = state.best_position;
  result.best_fitness = state.best_fitness;
  return result;
}

}  // namespace dsas::woa
