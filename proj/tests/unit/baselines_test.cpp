#include <gtest/gtest.h>

#include <cmath>

#include "dsas/baselines.hpp"
#include "dsas/emission_model.hpp"
#include "dsas/error.hpp"
#include "test_support.hpp"

namespace dsas::baselines {
namespace {

const ModelRegistry& models() {
  static const ModelRegistry registry = default_model_registry();
  return registry;
}

double raw_sum(const Scenario& s, std::span<const double> speeds) {
  const auto costs = models().resolve(s);
  double total = 0.0;
  for (std::size_t i = 0; i < speeds.size(); ++i) total += costs[i]->evaluate(speeds[i]);
  return total;
}

TEST(Penalty, ConsensusPointIsNotPenalised) {
  const auto s = testing::highway_two_lane(1.5);
  const auto speeds = speeds_from_consensus(s, 120.0);
  const auto p = PenaltyConfig::for_scenario(s);
  EXPECT_DOUBLE_EQ(p.consensus_tolerance, 0.12);
  EXPECT_EQ(penalized_fitness(s, models(), speeds, p), raw_sum(s, speeds));
}

TEST(Penalty, ViolationAddsTheFixedPenalty) {
  const auto s = testing::highway_two_lane(1.0);
  const auto p = PenaltyConfig::for_scenario(s);
  auto speeds = speeds_from_consensus(s, 90.0);
  speeds[0] += 2.0 * p.consensus_tolerance;
  EXPECT_DOUBLE_EQ(penalized_fitness(s, models(), speeds, p), raw_sum(s, speeds) + 100.0);
}

TEST(Penalty, SingleVehicleIsNeverPenalised) {
  const auto s = testing::fleet("one", {{"Type-3", 1, 1.0, 1}});
  const auto p = PenaltyConfig::for_scenario(s);
  Rng rng(3);
  for (int k = 0; k < 100; ++k) {
    const std::vector<double> v{rng.uniform(60.0, 120.0)};
    EXPECT_EQ(penalized_fitness(s, models(), v, p), raw_sum(s, v));
  }
}

TEST(Penalty, JumpsExactlyAtTheTolerance) {
  Rng rng(10);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = testing::random_scenario(rng);
    if (s.size() < 2) continue;
    const auto p = PenaltyConfig::for_scenario(s);
    const auto interval = feasible_interval(s);
    auto speeds = speeds_from_consensus(s, rng.uniform(interval.lo, interval.hi));
    const double base = raw_sum(s, speeds);
    EXPECT_NEAR(penalized_fitness(s, models(), speeds, p), base, 1e-9 * base);
    const double alpha = s.vehicles[0].alpha;
    const double step = 3.0 * p.consensus_tolerance / alpha;
    speeds[0] += speeds[0] + step <= s.vehicles[0].s_max ? step : -step;
    EXPECT_NEAR(penalized_fitness(s, models(), speeds, p), raw_sum(s, speeds) + 100.0, 1e-9 * base);
  }
}

TEST(Penalty, RejectsNonPositiveSettings) {
  const auto s = testing::highway_two_lane();
  const auto speeds = speeds_from_consensus(s, 90.0);
  EXPECT_THROW(penalized_fitness(s, models(), speeds, {0.0, 0.1}), ConfigError);
  EXPECT_THROW(penalized_fitness(s, models(), speeds, {100.0, 0.0}), ConfigError);
}

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

TEST(Pso, SphereSanity) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = pso_minimize(sphere, PsoConfig{20, 200, seed, Box::uniform(2, -100.0, 100.0)});
    EXPECT_LT(r.best_fitness, 1e-2) << seed;
  }
}

TEST(Gwo, SphereSanity) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = gwo_minimize(sphere, GwoConfig{20, 200, seed, Box::uniform(2, -100.0, 100.0)});
    EXPECT_LT(r.best_fitness, 1e-2) << seed;
  }
}

template <typename Run>
void check_common(Run run_with) {
  std::vector<std::vector<double>> seen;
  const Box box{{-2.0, 5.0, 0.0}, {2.0, 9.0, 0.5}};
  auto f = [&](std::span<const double> x) {
    seen.emplace_back(x.begin(), x.end());
    return std::cos(3.0 * x[0]) + (x[1] - 7.0) * (x[1] - 7.0) + x[2];
  };
  const auto a = run_with(f, box, 25);
  EXPECT_TRUE(a.record.is_monotone());
  EXPECT_EQ(a.record.rows.size(), 26u);
  for (const auto& x : seen) EXPECT_TRUE(box.contains(x));
  EXPECT_EQ(a.record.rows.back().evaluations, seen.size());
  const auto b = run_with(f, box, 25);
  EXPECT_EQ(a.best_position, b.best_position);
  EXPECT_EQ(a.best_fitness, b.best_fitness);

  const auto zero = run_with(f, box, 0);
  EXPECT_EQ(zero.record.rows.size(), 1u);
  EXPECT_EQ(zero.best_fitness, a.record.rows[0].best_fitness);
}

TEST(Pso, MonotoneBoundedDeterministic) {
  check_common([](const Objective& f, const Box& box, std::size_t iters) {
    return pso_minimize(f, PsoConfig{7, iters, 13, box});
  });
}

TEST(Gwo, MonotoneBoundedDeterministic) {
  check_common([](const Objective& f, const Box& box, std::size_t iters) {
    return gwo_minimize(f, GwoConfig{7, iters, 13, box});
  });
}

TEST(Baselines, RejectEmptySwarms) {
  EXPECT_THROW(pso_minimize(sphere, PsoConfig{0, 5, 1, Box::uniform(1, 0.0, 1.0)}), ConfigError);
  EXPECT_THROW(gwo_minimize(sphere, GwoConfig{0, 5, 1, Box::uniform(1, 0.0, 1.0)}), ConfigError);
}

}  // namespace
}  // namespace dsas::baselines
