#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dsas {

struct RunRow {
  std::size_t iteration = 0;
  double best_fitness = 0.0;
  std::uint64_t evaluations = 0;  // cumulative
  bool bounds_binding = false;
};

// Per-iteration convergence trace. Row 0 is the initial population.
struct RunRecord {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::string scenario_digest;
  std::vector<RunRow> rows;

  bool is_monotone() const;
  // First iteration whose best fitness is <= threshold.
  std::optional<std::size_t> first_reaching(double threshold) const;
  // Best fitness after `iteration`, or the last row when the trace is shorter.
  double best_at(std::size_t iteration) const;
};

}  // namespace dsas
