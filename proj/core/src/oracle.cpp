#include "dsas/oracle.hpp"

#include <cmath>
#include <limits>

#include "dsas/error.hpp"

namespace dsas::oracle {

double total_emission(const Scenario& scenario, std::span<const CostHandle> costs, double c) {
  const auto speeds = speeds_from_consensus(scenario, c);
  double sum = 0.0;
  for (std::size_t i = 0; i < speeds.size(); ++i) sum += costs[i]->evaluate(speeds[i]);
  return sum;
}

OracleResult grid_search(const Scenario& scenario, const ModelRegistry& registry, double resolution) {
  if (!(resolution > 0.0)) throw ConfigError("oracle resolution must be positive");
  validate(scenario);
  const auto interval = feasible_interval(scenario);
  const auto costs = registry.resolve(scenario);
  auto total = [&](double c) { return total_emission(scenario, costs, c); };

  const double width = interval.width();
  const auto cells = width > 0.0 ? static_cast<std::size_t>(std::ceil(width / resolution)) : std::size_t{0};
  const double step = cells > 0 ? width / static_cast<double>(cells) : 0.0;
  auto grid = [&](std::size_t k) { return k == cells ? interval.hi : interval.lo + static_cast<double>(k) * step; };

  std::size_t best_k = 0;
  double best_f = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= cells; ++k) {
    const double f = total(grid(k));
    if (f < best_f) {
      best_f = f;
      best_k = k;
    }
  }
  double best_c = grid(best_k);

  if (cells > 0) {
    // Golden-section search over the two cells adjacent to the grid minimum.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = grid(best_k == 0 ? 0 : best_k - 1);
    double b = grid(std::min(best_k + 1, cells));
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = total(x1);
    double f2 = total(x2);
    for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = total(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = total(x2);
      }
    }
    const double xr = f1 <= f2 ? x1 : x2;
    const double fr = std::min(f1, f2);
    if (fr < best_f) {
      best_f = fr;
      best_c = xr;
    }
  }

  OracleResult out;
  out.c_star = best_c;
  out.speeds = speeds_from_consensus(scenario, best_c);
  out.total_emission = best_f;
  out.grid_resolution = step;
  return out;
}

std::vector<double> greedy_baseline_speeds(const Scenario& scenario) {
  return speeds_from_consensus(scenario, feasible_interval(scenario).hi);
}

std::vector<SavingRow> saving_curve(const Scenario& scenario_template, const ModelRegistry& registry,
                                    std::span<const double> ratios, double resolution) {
  const auto lanes = lane_labels(scenario_template);
  const auto costs = registry.resolve(scenario_template);
  std::vector<SavingRow> rows;
  rows.reserve(ratios.size());
  for (const double ratio : ratios) {
    SavingRow row;
    row.ratio = ratio;
    const auto scenario = with_lane_ratio(scenario_template, ratio);
    if (!(ratio >= 1.0) || consensus_interval(scenario).empty()) {
      rows.push_back(row);
      continue;
    }
    row.feasible = true;
    const auto best = grid_search(scenario, registry, resolution);
    row.with_isa = best.total_emission;
    row.c_star = best.c_star;

    const auto baseline = greedy_baseline_speeds(scenario);
    for (std::size_t i = 0; i < baseline.size(); ++i) row.baseline += costs[i]->evaluate(baseline[i]);
    row.saving = row.baseline - row.with_isa;

    for (const int lane : lanes) {
      for (std::size_t i = 0; i < scenario.size(); ++i) {
        if (scenario.vehicles[i].lane == lane) {
          row.lane_speeds.push_back(best.speeds[i]);
          break;
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dsas::oracle
