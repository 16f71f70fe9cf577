#include <gtest/gtest.h>

#include <cmath>

#include "dsas/dsas.hpp"
#include "dsas/emission_model.hpp"
#include "dsas/error.hpp"
#include "dsas/oracle.hpp"
#include "test_support.hpp"

namespace dsas::oracle {
namespace {

const ModelRegistry& models() {
  static const ModelRegistry registry = default_model_registry();
  return registry;
}

TEST(GridSearch, DegenerateIntervalReturnsTheOnlyPoint) {
  const auto r = grid_search(testing::highway_two_lane(2.0), models());
  EXPECT_EQ(r.c_star, 120.0);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_EQ(r.speeds[i], 60.0);
  for (std::size_t i = 30; i < 60; ++i) EXPECT_EQ(r.speeds[i], 120.0);
}

TEST(GridSearch, FindsAQuadraticMinimum) {
  ModelRegistry quad;
  quad.add(testing::quadratic_model("q", 85.0));
  const auto s = testing::fleet("q", {{"q", 4, 1.0, 1}});
  for (double resolution : {0.5, 0.1, 0.01}) {
    const auto r = grid_search(s, quad, resolution);
    EXPECT_NEAR(r.c_star, 85.0, resolution);
    EXPECT_LE(r.grid_resolution, resolution);
  }
}

TEST(GridSearch, MinimumAtTheBoundary) {
  ModelRegistry quad;
  quad.add(testing::quadratic_model("q", 50.0, {40.0, 130.0}));
  const auto s = testing::fleet("q", {{"q", 2, 1.0, 1}});
  EXPECT_EQ(grid_search(s, quad).c_star, 60.0);
}

TEST(GridSearch, NeverWorseThanTheProtocol) {
  Rng rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    const auto s = testing::random_scenario(rng, true);
    DsasConfig cfg;
    cfg.seed = rng.next_u64();
    cfg.max_rounds = 30;
    const auto result = run(s, models(), cfg);
    const auto costs = models().resolve(s);
    double dsas_total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) dsas_total += costs[i]->evaluate(result.speeds[i]);
    EXPECT_LE(grid_search(s, models()).total_emission, dsas_total + 1e-9);
  }
}

TEST(GridSearch, RefinesWithResolution) {
  Rng rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = testing::random_scenario(rng, true);
    const auto costs = models().resolve(s);
    const auto coarse = grid_search(s, models(), 1.0);
    const auto fine = grid_search(s, models(), 0.01);
    EXPECT_LE(fine.total_emission, coarse.total_emission + 1e-9);
    // Not beaten by any point of an independent fine scan.
    const auto interval = feasible_interval(s);
    for (double c = interval.lo; c <= interval.hi; c += 0.037) {
      EXPECT_LE(fine.total_emission, total_emission(s, costs, c) + 1e-9);
    }
    EXPECT_NEAR(fine.total_emission, total_emission(s, costs, fine.c_star), 1e-9);
  }
}

TEST(GridSearch, InfeasibleThrows) {
  EXPECT_THROW(grid_search(testing::highway_two_lane(2.5), models()), InfeasibleScenario);
  EXPECT_THROW(grid_search(testing::highway_two_lane(1.0), models(), 0.0), ConfigError);
}

TEST(SavingCurve, VanishesAtRatioTwo) {
  const double ratios[] = {2.0};
  const auto rows = saving_curve(testing::highway_two_lane(), models(), ratios);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_TRUE(rows[0].feasible);
  EXPECT_EQ(rows[0].saving, 0.0);
  EXPECT_EQ(rows[0].lane_speeds, (std::vector<double>{60.0, 120.0}));
}

TEST(SavingCurve, RatioOneIsTheSingleSpeedOptimum) {
  const double ratios[] = {1.0};
  const auto s = testing::highway_two_lane();
  const auto rows = saving_curve(s, models(), ratios);
  const auto costs = models().resolve(s);
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= 60000; ++k) best = std::min(best, total_emission(s, costs, 60.0 + k * 0.001));
  EXPECT_NEAR(rows[0].with_isa, best, 1e-6);
  EXPECT_EQ(rows[0].baseline, total_emission(s, costs, 120.0));
  EXPECT_GT(rows[0].saving, 0.0);
  EXPECT_NEAR(rows[0].lane_speeds[0], rows[0].lane_speeds[1], 1e-9);
}

TEST(SavingCurve, TwoLaneSavingDoesNotIncrease) {
  std::vector<double> ratios;
  for (int k = 0; k <= 20; ++k) ratios.push_back(1.0 + 0.05 * k);
  const auto rows = saving_curve(testing::highway_two_lane(), models(), ratios);
  for (std::size_t k = 1; k < rows.size(); ++k) EXPECT_LE(rows[k].saving, rows[k - 1].saving + 1e-9) << ratios[k];
  for (const auto& r : rows) EXPECT_GE(r.saving, 0.0);
}

TEST(SavingCurve, ThreeLaneBecomesInfeasible) {
  const double ratios[] = {1.4, 1.5};
  const auto rows = saving_curve(testing::highway_three_lane(), models(), ratios);
  EXPECT_TRUE(rows[0].feasible);
  EXPECT_EQ(rows[0].lane_speeds.size(), 3u);
  EXPECT_FALSE(rows[1].feasible);
}

TEST(GreedyBaseline, FastLaneAtTheLimit) {
  const auto speeds = greedy_baseline_speeds(testing::highway_two_lane(1.6));
  EXPECT_EQ(speeds.back(), 120.0);
  EXPECT_EQ(speeds.front(), 75.0);
}

}  // namespace
}  // namespace dsas::oracle
