#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dsas/cost_function.hpp"
#include "dsas/run_record.hpp"
#include "dsas/scenario.hpp"

namespace dsas::harness {

enum ExitCode : int { kOk = 0, kConfigError = 2, kInfeasible = 3, kEvaluationError = 4 };

// How baseline swarms are sized against the improved WOA, which spends N*M
// per-vehicle cost evaluations per round.
enum class Parity {
  VehicleEvaluations,  // swarm = M: each candidate costs N vehicle evaluations
  FitnessCalls,        // swarm = N*M candidates per iteration
};

struct ExperimentConfig {
  std::filesystem::path scenario;
  std::optional<std::filesystem::path> models;
  std::vector<std::uint64_t> seeds{42};
  std::filesystem::path output_dir{"out"};
  std::size_t k_max = 50;
  std::size_t whales = 3;
  std::string ratios;  // "start:stop:step" or comma list; empty picks a default per lane count
  std::vector<std::string> optimizers{"improved-woa", "pso", "gwo"};
  std::optional<std::filesystem::path> revisions;
  double resolution = 0.01;
  bool with_dsas = false;
  double tolerance = 0.005;
  Parity parity = Parity::VehicleEvaluations;
  double penalty = 100.0;
  std::size_t jobs = 0;  // 0: hardware concurrency
};

int cmd_run(const ExperimentConfig& config, std::ostream& err);
int cmd_sweep_ratio(const ExperimentConfig& config, std::ostream& err);
int cmd_compare(const ExperimentConfig& config, std::ostream& err);
int cmd_oracle(const ExperimentConfig& config, std::ostream& err);
int cmd_supervise(const ExperimentConfig& config, std::ostream& err);

// Scenario plus the registry it resolves against: --models, else the
// DSAS_MODEL_REGISTRY file, else the built-in defaults, then any models
// declared inline in the scenario.
struct Workspace {
  Scenario scenario;
  ModelRegistry registry;
  std::string source_text;  // scenario and registry bytes, for digests
};

Workspace load_workspace(const ExperimentConfig& config);

std::vector<double> parse_ratio_grid(std::string_view text);
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

// One convergence trace per (algorithm, seed), in optimizer-major order.
// Baseline fitness is the death-penalised sum; improved WOA reports the
// unmasked aggregate. Evaluations are counted in vehicle evaluations.
struct RaceOptions {
  std::vector<std::string> optimizers{"improved-woa", "pso", "gwo"};
  std::vector<std::uint64_t> seeds;
  std::size_t k_max = 50;
  std::size_t whales = 3;
  Parity parity = Parity::VehicleEvaluations;
  double penalty = 100.0;
  std::size_t jobs = 0;
};

struct RaceTrace {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::size_t swarm_size = 0;
  RunRecord record;
};

std::vector<RaceTrace> race(const Scenario& scenario, const ModelRegistry& registry, const RaceOptions& options);

std::size_t baseline_swarm_size(const Scenario& scenario, std::size_t whales, Parity parity);

// Median of iterations-to-threshold where "not reached" sorts last. With an
// even count the median is reached only when both middle values are.
std::optional<double> median_iteration(std::vector<std::optional<std::size_t>> reach);
double median(std::vector<double> values);

// Runs fn(0..n-1) on up to `jobs` threads; the first exception by index is
// rethrown after all jobs join.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace dsas::harness
