#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dsas/optimizer.hpp"
#include "dsas/rng.hpp"

namespace dsas::woa {

struct SpiralParams {
  double b_spiral = 1.0;
  double l = 0.0;  // in [-1, 1]
};

struct WoaConfig {
  std::size_t n_whales = 3;
  std::size_t max_iter = 50;
  std::uint64_t seed = 0;
  Box bounds;
  double b_spiral = 1.0;
};

struct SwarmState {
  std::vector<std::vector<double>> positions;
  std::vector<double> best_position;
  double best_fitness = 0.0;
  std::size_t iteration = 0;
  std::size_t max_iter = 0;
  double decay = 2.0;
};

// 2 * (1 - k / k_max) clamped to [0, 2]. k_max == 0 yields 0.
double decay_at(std::size_t k, std::size_t k_max);

struct Coefficients {
  std::vector<double> A;
  std::vector<double> C;
};

// A = 2*decay*r - decay, C = 2*r' with r, r' fresh uniform vectors. Draws r
// first (dims values) then r'.
Coefficients coefficient_vectors(double decay, std::size_t dims, Rng& rng);

// D = |C o X* - X|, returns X* - A o D.
std::vector<double> encircle_step(std::span<const double> x, std::span<const double> x_star,
                                  std::span<const double> a, std::span<const double> c);

// |X* - X| * e^(b l) * cos(2 pi l) + X*.
std::vector<double> spiral_step(std::span<const double> x, std::span<const double> x_star,
                                const SpiralParams& params);

// D = |C o X_rand - X|, returns X_rand - A o D.
std::vector<double> explore_step(std::span<const double> x, std::span<const double> x_rand,
                                 std::span<const double> a, std::span<const double> c);

enum class Branch { Encircle, Explore, Spiral };

// Every random quantity one agent update consumes. Drawn in this order:
// r for A (dims), r' for C (dims), u for the scalar branch coefficient,
// l, p, then the random peer index. The peer index is always drawn so that
// stream consumption does not depend on the branch taken.
struct UpdateDraws {
  Coefficients coeffs;
  double a_scalar = 0.0;  // 2*decay*u - decay, used only for the |A| < 1 test
  double l = 0.0;
  double p = 0.0;
  std::size_t peer = 0;
};

UpdateDraws draw_update(double decay, std::size_t dims, std::size_t population, Rng& rng);

Branch select_branch(const UpdateDraws& draws);

// One agent update with explicit draws. p < 0.5 and |A| < 1 encircles X*,
// p < 0.5 and |A| >= 1 explores around population[peer], p >= 0.5 spirals.
// The result is clamped to `bounds`.
std::vector<double> update_agent(std::span<const double> x,
                                 std::span<const std::vector<double>> population,
                                 std::span<const double> x_star, const UpdateDraws& draws,
                                 double b_spiral, const Box& bounds, Branch* taken = nullptr);

std::vector<double> update_agent(std::span<const double> x, const SwarmState& state,
                                 double b_spiral, const Box& bounds, Rng& rng,
                                 Branch* taken = nullptr);

// Centralised WOA. Record row k holds the best fitness after k iterations,
// and evaluations count objective calls.
OptimizerResult woa_minimize(const Objective& fitness, const WoaConfig& config);

}  // namespace dsas::woa
