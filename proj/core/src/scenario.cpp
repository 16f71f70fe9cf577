#include "dsas/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "dsas/error.hpp"

namespace dsas {

void validate(const Scenario& scenario) {
  if (scenario.vehicles.empty()) throw ConfigError("scenario '" + scenario.name + "' has no vehicles");
  std::map<int, double> lane_alpha;
  for (std::size_t k = 0; k < scenario.vehicles.size(); ++k) {
    const auto& v = scenario.vehicles[k];
    const std::string who = "vehicle " + std::to_string(v.id);
    if (v.id != static_cast<int>(k) + 1) {
      throw ConfigError("vehicle ids must be contiguous from 1; position " + std::to_string(k + 1) +
                        " has id " + std::to_string(v.id));
    }
    if (!(v.alpha > 0.0) || !std::isfinite(v.alpha)) throw ConfigError(who + ": alpha must be positive");
    if (!(v.s_min > 0.0) || !(v.s_min < v.s_max) || !std::isfinite(v.s_max)) {
      throw ConfigError(who + ": speed bounds must satisfy 0 < s_min < s_max");
    }
    if (v.vehicle_type.empty()) throw ConfigError(who + ": missing vehicle type");
    auto [it, inserted] = lane_alpha.emplace(v.lane, v.alpha);
    if (!inserted && it->second != v.alpha) {
      throw ConfigError(who + ": alpha differs from other vehicles on lane " + std::to_string(v.lane));
    }
  }
}

ConsensusInterval consensus_interval(const Scenario& scenario) noexcept {
  ConsensusInterval out{0.0, std::numeric_limits<double>::infinity()};
  for (const auto& v : scenario.vehicles) {
    out.lo = std::max(out.lo, v.alpha * v.s_min);
    out.hi = std::min(out.hi, v.alpha * v.s_max);
  }
  return out;
}

ConsensusInterval feasible_interval(const Scenario& scenario) {
  const auto interval = consensus_interval(scenario);
  if (scenario.vehicles.empty() || interval.empty()) {
    throw InfeasibleScenario("scenario '" + scenario.name +
                             "': alpha ratios cannot be met within the speed bounds (c_lo=" +
                             std::to_string(interval.lo) + " > c_hi=" + std::to_string(interval.hi) + ")");
  }
  return interval;
}

std::vector<double> speeds_from_consensus(const Scenario& scenario, double c) {
  const auto interval = feasible_interval(scenario);
  if (!interval.contains(c)) {
    throw OutOfFeasibleRange("consensus value " + std::to_string(c) + " outside [" +
                             std::to_string(interval.lo) + ", " + std::to_string(interval.hi) + "]");
  }
  std::vector<double> speeds;
  speeds.reserve(scenario.size());
  for (const auto& v : scenario.vehicles) {
    // The clamp only absorbs division rounding at the interval ends.
    speeds.push_back(std::clamp(c / v.alpha, v.s_min, v.s_max));
  }
  return speeds;
}

double consensus_spread(const Scenario& scenario, std::span<const double> speeds) {
  if (speeds.empty()) return 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < speeds.size(); ++i) {
    const double c = scenario.vehicles[i].alpha * speeds[i];
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  return hi - lo;
}

std::vector<int> lane_labels(const Scenario& scenario) {
  std::set<int> lanes;
  for (const auto& v : scenario.vehicles) lanes.insert(v.lane);
  return {lanes.begin(), lanes.end()};
}

Scenario with_lane_ratio(const Scenario& scenario, double ratio) {
  const auto lanes = lane_labels(scenario);
  std::map<int, double> alpha;
  const auto n = lanes.size();
  for (std::size_t k = 0; k < n; ++k) {
    double a = 1.0;
    for (std::size_t e = 0; e + k + 1 < n; ++e) a *= ratio;
    alpha[lanes[k]] = a;
  }
  Scenario out = scenario;
  for (auto& v : out.vehicles) v.alpha = alpha.at(v.lane);
  return out;
}

}  // namespace dsas
