#include <gtest/gtest.h>

#include <cmath>

#include "dsas/error.hpp"
#include "dsas/woa.hpp"

namespace dsas::woa {
namespace {

using Vec = std::vector<double>;

TEST(CoefficientVectors, ZeroDecayGivesZeroA) {
  Rng rng(1);
  const auto c = coefficient_vectors(0.0, 5, rng);
  for (double a : c.A) EXPECT_EQ(a, 0.0);
  for (double v : c.C) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 2.0);
  }
}

TEST(CoefficientVectors, MonteCarloAtUnitDecay) {
  Rng rng(99);
  double sum = 0.0;
  double lo = 1.0, hi = -1.0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    const auto c = coefficient_vectors(1.0, 1, rng);
    sum += c.A[0];
    lo = std::min(lo, c.A[0]);
    hi = std::max(hi, c.A[0]);
  }
  EXPECT_GE(lo, -1.0);
  EXPECT_LE(hi, 1.0);
  // sigma of U[-1,1] is 1/sqrt(3); 3 sigma bound on the mean.
  EXPECT_LE(std::abs(sum / n), 3.0 / std::sqrt(3.0) / std::sqrt(double(n)));
}

TEST(EncircleStep, HandValues) {
  EXPECT_EQ(encircle_step(Vec{100}, Vec{80}, Vec{0}, Vec{1.3}), Vec{80});
  EXPECT_EQ(encircle_step(Vec{80, 90}, Vec{80, 90}, Vec{0.7, -0.4}, Vec{1, 1}), (Vec{80, 90}));
  // D = |1.2*80 - 100| = 4, result 80 - 0.5*4
  const auto out = encircle_step(Vec{100}, Vec{80}, Vec{0.5}, Vec{1.2});
  const double d = std::abs(1.2 * 80.0 - 100.0);
  EXPECT_NEAR(out[0], 80.0 - 0.5 * d, 1e-12);
  EXPECT_NEAR(out[0], 78.0, 1e-12);
}

TEST(SpiralStep, HandValues) {
  EXPECT_EQ(spiral_step(Vec{85}, Vec{85}, SpiralParams{1.0, 0.3}), Vec{85});
  EXPECT_NEAR(spiral_step(Vec{100}, Vec{80}, SpiralParams{3.0, -0.25})[0], 80.0, 1e-12);
  EXPECT_NEAR(spiral_step(Vec{100}, Vec{80}, SpiralParams{1.0, 0.5})[0], 47.02557458599743, 1e-12);
}

TEST(ExploreStep, HandValues) {
  EXPECT_EQ(explore_step(Vec{60}, Vec{110}, Vec{0}, Vec{0.8}), Vec{110});
  EXPECT_EQ(explore_step(Vec{110}, Vec{110}, Vec{1.5}, Vec{1}), Vec{110});
  // D = |0.8*110 - 60| = 28, result 110 - 1.5*28
  EXPECT_NEAR(explore_step(Vec{60}, Vec{110}, Vec{1.5}, Vec{0.8})[0], 68.0, 1e-12);
}

UpdateDraws forced(double p, double a_scalar, Vec A, Vec C, double l = 0.3, std::size_t peer = 0) {
  UpdateDraws d;
  d.coeffs = {std::move(A), std::move(C)};
  d.a_scalar = a_scalar;
  d.p = p;
  d.l = l;
  d.peer = peer;
  return d;
}

TEST(UpdateAgent, BranchIsolation) {
  const Box box = Box::uniform(1, 0.0, 200.0);
  const std::vector<Vec> population{{100}, {60}, {110}};
  Branch taken{};

  const auto spiral = update_agent(Vec{100}, population, Vec{80}, forced(0.6, 0.2, {0.5}, {1.2}), 1.0, box, &taken);
  EXPECT_EQ(taken, Branch::Spiral);
  EXPECT_EQ(spiral, spiral_step(Vec{100}, Vec{80}, SpiralParams{1.0, 0.3}));

  const auto enc = update_agent(Vec{100}, population, Vec{80}, forced(0.2, 0.0, {0.0}, {1.7}), 1.0, box, &taken);
  EXPECT_EQ(taken, Branch::Encircle);
  EXPECT_EQ(enc, Vec{80});

  const auto exp = update_agent(Vec{60}, population, Vec{80}, forced(0.2, -1.2, {1.5}, {0.8}, 0.0, 2), 1.0, box, &taken);
  EXPECT_EQ(taken, Branch::Explore);
  EXPECT_NEAR(exp[0], 68.0, 1e-12);
}

TEST(UpdateAgent, ClampsEveryComponent) {
  Rng rng(5);
  const Box box{{60.0, -5.0, 0.0}, {120.0, 5.0, 1.0}};
  SwarmState state;
  for (int k = 0; k < 4; ++k) state.positions.push_back({rng.uniform(60, 120), rng.uniform(-5, 5), rng.uniform()});
  state.best_position = state.positions[0];
  for (int trial = 0; trial < 10000; ++trial) {
    state.decay = rng.uniform(0.0, 2.0);
    auto& x = state.positions[rng.index(state.positions.size())];
    x = update_agent(x, state, 1.0, box, rng);
    ASSERT_TRUE(box.contains(x));
  }
}

TEST(UpdateAgent, SpiralBranchFrequency) {
  Rng rng(12345);
  const Box box = Box::uniform(1, 0.0, 1.0);
  SwarmState state;
  state.positions = {{0.2}, {0.5}, {0.9}};
  state.best_position = {0.5};
  state.decay = 1.3;
  int spiral = 0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) {
    Branch taken{};
    update_agent(state.positions[0], state, 1.0, box, rng, &taken);
    if (taken == Branch::Spiral) ++spiral;
  }
  EXPECT_NEAR(double(spiral) / n, 0.5, 0.01);
}

TEST(Decay, LinearScheduleFromTwoToZero) {
  for (std::size_t k_max : {1u, 7u, 50u, 1000u}) {
    for (std::size_t k = 0; k <= k_max; ++k) {
      EXPECT_NEAR(decay_at(k, k_max), 2.0 * (1.0 - double(k) / double(k_max)), 1e-12);
    }
  }
  EXPECT_EQ(decay_at(0, 0), 0.0);
  EXPECT_EQ(decay_at(60, 50), 0.0);
}

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

TEST(WoaMinimize, SphereSanityOverSeeds) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    WoaConfig cfg{10, 200, seed, Box::uniform(1, -100.0, 100.0), 1.0};
    const auto r = woa_minimize(sphere, cfg);
    EXPECT_LT(r.best_fitness, 1e-2) << "seed " << seed;
    EXPECT_TRUE(r.record.is_monotone());
    EXPECT_EQ(r.record.rows.size(), 201u);
    EXPECT_EQ(r.record.rows.back().evaluations, 10u * 201u);
  }
}

TEST(WoaMinimize, ConstantLandscape) {
  WoaConfig cfg{4, 30, 3, Box::uniform(3, 0.0, 1.0), 1.0};
  const auto r = woa_minimize([](std::span<const double>) { return 7.0; }, cfg);
  EXPECT_EQ(r.best_fitness, 7.0);
}

TEST(WoaMinimize, ZeroIterationsReturnsBestOfInitialPopulation) {
  WoaConfig cfg{8, 0, 17, Box::uniform(2, -10.0, 10.0), 1.0};
  const auto r = woa_minimize(sphere, cfg);
  // Replay the documented initialisation draws.
  Rng rng(17);
  double best = std::numeric_limits<double>::infinity();
  for (int h = 0; h < 8; ++h) {
    const Vec x{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
    best = std::min(best, sphere(x));
  }
  EXPECT_EQ(r.best_fitness, best);
  EXPECT_EQ(r.record.rows.size(), 1u);
}

TEST(WoaMinimize, DeterministicAndBounded) {
  const Box box{{-3.0, 10.0}, {4.0, 12.0}};
  std::vector<Vec> seen;
  auto f = [&](std::span<const double> x) {
    seen.emplace_back(x.begin(), x.end());
    return std::sin(x[0]) + (x[1] - 11.0) * (x[1] - 11.0);
  };
  WoaConfig cfg{6, 40, 8, box, 1.0};
  const auto a = woa_minimize(f, cfg);
  for (const auto& x : seen) EXPECT_TRUE(box.contains(x));
  const auto b = woa_minimize(f, cfg);
  ASSERT_EQ(a.record.rows.size(), b.record.rows.size());
  for (std::size_t k = 0; k < a.record.rows.size(); ++k) EXPECT_EQ(a.record.rows[k].best_fitness, b.record.rows[k].best_fitness);
  EXPECT_EQ(a.best_position, b.best_position);
}

TEST(WoaMinimize, FitnessErrorsCarryThePosition) {
  WoaConfig cfg{3, 5, 1, Box::uniform(1, 0.0, 1.0), 1.0};
  try {
    woa_minimize([](std::span<const double>) -> double { throw std::runtime_error("boom"); }, cfg);
    FAIL();
  } catch (const EvaluationError& e) {
    EXPECT_FALSE(e.where().position.empty());
    EXPECT_NE(std::string(e.what()).find("boom"), std::string::npos);
  }
}

TEST(WoaMinimize, RejectsBadConfig) {
  EXPECT_THROW(woa_minimize(sphere, WoaConfig{0, 5, 1, Box::uniform(1, 0.0, 1.0), 1.0}), ConfigError);
  EXPECT_THROW(woa_minimize(sphere, WoaConfig{3, 5, 1, Box::uniform(1, 1.0, 1.0), 1.0}), ConfigError);
}

}  // namespace
}  // namespace dsas::woa
