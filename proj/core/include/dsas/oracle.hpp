#pragma once

#include <span>
#include <vector>

#include "dsas/cost_function.hpp"
#include "dsas/scenario.hpp"

namespace dsas::oracle {

inline constexpr double kDefaultResolution = 0.01;

struct OracleResult {
  double c_star = 0.0;
  std::vector<double> speeds;
  double total_emission = 0.0;  // g/km
  double grid_resolution = 0.0;  // actual spacing in c
};

// sum_i f_i(c / alpha_i) for a consensus value c.
double total_emission(const Scenario& scenario, std::span<const CostHandle> costs, double c);

// Uniform grid over the feasible interval (endpoints included, spacing at
// most `resolution`), then a golden-section pass on the best cell's
// neighbourhood. Ties resolve to the lowest c. Throws InfeasibleScenario.
OracleResult grid_search(const Scenario& scenario, const ModelRegistry& registry,
                         double resolution = kDefaultResolution);

struct SavingRow {
  double ratio = 1.0;
  bool feasible = false;
  double with_isa = 0.0;  // g/km
  double baseline = 0.0;  // g/km
  double saving = 0.0;    // baseline - with_isa
  double c_star = 0.0;
  std::vector<double> lane_speeds;  // slow to fast
};

// Speeds without advice: the fastest lane drives at its speed limit and the
// other lanes follow the alpha ratios.
std::vector<double> greedy_baseline_speeds(const Scenario& scenario);

// For each ratio, alphas are reassigned with with_lane_ratio(); infeasible
// ratios produce rows with feasible == false.
std::vector<SavingRow> saving_curve(const Scenario& scenario_template,
                                    const ModelRegistry& registry, std::span<const double> ratios,
                                    double resolution = kDefaultResolution);

}  // namespace dsas::oracle
