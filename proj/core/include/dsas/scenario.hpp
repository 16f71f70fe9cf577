#pragma once

#include <span>
#include <string>
#include <vector>

namespace dsas {

struct VehicleSpec {
  int id = 0;                // 1-based, contiguous within a scenario
  std::string vehicle_type;  // key into the model registry
  double alpha = 1.0;        // recommended-speed parameter
  double s_min = 0.0;        // km/h
  double s_max = 0.0;        // km/h
  int lane = 1;
};

struct Scenario {
  std::string name;
  std::vector<VehicleSpec> vehicles;

  std::size_t size() const noexcept { return vehicles.size(); }
};

// Closed interval of the consensus variable c = alpha_i * s_i.
struct ConsensusInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool empty() const noexcept { return lo > hi; }
  bool contains(double c) const noexcept { return c >= lo && c <= hi; }
  double width() const noexcept { return hi - lo; }
};

// Throws ConfigError on the first violated invariant.
void validate(const Scenario& scenario);

// [max_i alpha_i*s_min_i, min_i alpha_i*s_max_i]. Throws InfeasibleScenario
// when that interval is empty.
ConsensusInterval feasible_interval(const Scenario& scenario);

// Same as feasible_interval but returns the (possibly empty) interval.
ConsensusInterval consensus_interval(const Scenario& scenario) noexcept;

// s_i = c / alpha_i for every vehicle. Throws OutOfFeasibleRange when c is
// outside the feasible interval.
std::vector<double> speeds_from_consensus(const Scenario& scenario, double c);

// max_i alpha_i*s_i - min_i alpha_i*s_i.
double consensus_spread(const Scenario& scenario, std::span<const double> speeds);

// Distinct lane labels in ascending order. Lane order runs slow to fast.
std::vector<int> lane_labels(const Scenario& scenario);

// Re-assigns alpha per lane so adjacent lanes differ by `ratio`: with L
// lanes, lane k (0 = slowest) gets ratio^(L-1-k). The fastest lane keeps 1.
Scenario with_lane_ratio(const Scenario& scenario, double ratio);

}  // namespace dsas
