#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsas/cost_function.hpp"
#include "dsas/protocol.hpp"
#include "dsas/rng.hpp"
#include "dsas/run_record.hpp"
#include "dsas/scenario.hpp"

namespace dsas {

enum class LeaderSelection { Random, RoundRobin };

struct DsasConfig {
  std::size_t whales = 3;       // M
  std::size_t max_rounds = 50;  // k_max
  std::uint64_t seed = 0;
  bool consensus_init = true;
  LeaderSelection leader = LeaderSelection::Random;
  // Drawn from a stream derived from `seed` when unset.
  std::optional<AffineMask> mask;
  double b_spiral = 1.0;
};

class VehicleAgent {
 public:
  VehicleAgent(VehicleSpec spec, CostHandle model);

  const VehicleSpec& spec() const noexcept { return spec_; }
  const std::vector<double>& whales() const noexcept { return whales_; }
  double best_speed() const noexcept { return best_speed_; }

  void on_mask_sync(const MaskSync& sync);
  void set_whales(std::vector<double> speeds);  // clamped to own bounds

  // Masked fitness of every whale. Throws EvaluationError.
  FitnessReport report() const;

  // Runs one WOA update over the agent's own whales around its best-known
  // speed, clamps into the consensus interval and broadcasts alpha*s.
  SpeedBroadcast lead(double decay, double b_spiral, Rng& rng);

  // s^h <- v^h / alpha, clamped to own bounds. Returns true when the clamp
  // moved any whale by more than 1e-9 relative.
  bool follow(const SpeedBroadcast& broadcast);

  void on_best_index(const BestIndexBroadcast& broadcast);

 private:
  VehicleSpec spec_;
  CostHandle model_;
  AffineMask mask_;
  double c_lo_ = 0.0;
  double c_hi_ = 0.0;
  std::vector<double> whales_;
  double best_speed_ = 0.0;
};

class CentralNode {
 public:
  CentralNode(std::size_t vehicles, std::size_t whales);

  // Barrier: requires exactly one report per vehicle. Sums per whale,
  // re-selects h* only on a strictly smaller aggregate (lowest h on ties).
  BestIndexBroadcast aggregate(std::span<const FitnessReport> reports);

  std::size_t best_index() const noexcept { return best_index_; }
  double best_aggregate() const noexcept { return best_aggregate_; }
  std::size_t round() const noexcept { return round_; }
  void advance_round() noexcept { ++round_; }
  // Masked values of the latest round, [vehicle][whale].
  const std::vector<std::vector<double>>& fitness_table() const noexcept { return table_; }

 private:
  std::size_t vehicles_;
  std::size_t whales_;
  std::size_t best_index_ = 0;
  double best_aggregate_;
  std::size_t round_ = 0;
  bool initialised_ = false;
  std::vector<std::vector<double>> table_;
};

struct DsasState {
  Scenario scenario;
  DsasConfig config;
  ConsensusInterval interval;
  AffineMask mask;
  std::vector<VehicleAgent> agents;
  CentralNode central;
  InProcessChannel channel;
  Rng rng;
  RunRecord record;
  std::size_t next_leader = 0;
};

struct RoundOutcome {
  int leader_id = 0;
  bool bounds_binding = false;
  bool improved = false;
};

// Protocol set-up: whale initialisation, mask sync, initial
// fitness aggregation and first h* broadcast. Throws InfeasibleScenario.
DsasState initialize(const Scenario& scenario, const ModelRegistry& registry,
                     const DsasConfig& config);

// One protocol round. Appends a RunRecord row and the round's messages.
RoundOutcome round_step(DsasState& state);

struct DsasResult {
  std::vector<double> speeds;       // per vehicle, km/h
  std::map<int, double> lane_speed;  // mean final speed per lane
  double aggregate_gpkm = 0.0;      // unmasked best aggregate
  std::size_t rounds = 0;
  std::uint64_t seed = 0;
  AffineMask mask;
  RunRecord record;
  std::vector<Message> log;
};

DsasResult run(const Scenario& scenario, const ModelRegistry& registry, const DsasConfig& config);

// Fitness bookkeeping lives in the coordinator, so the unmasked aggregate is
// recovered with the synchronised mask.
double unmasked_best(const DsasState& state);

struct ScenarioRevision {
  double time = 0.0;
  Scenario scenario;
};

struct SupervisorEvent {
  enum class Kind { Result, Infeasible, Invalid };
  Kind kind = Kind::Result;
  std::size_t revision = 0;
  double time = 0.0;
  std::optional<DsasResult> result;
  std::string message;
};

// Re-runs the protocol from fresh initialisation whenever the scenario
// changes. Infeasible or invalid revisions produce an event and keep the
// previous advisory in force.
class Supervisor {
 public:
  Supervisor(ModelRegistry registry, DsasConfig config);

  SupervisorEvent submit(const ScenarioRevision& revision);
  const std::optional<DsasResult>& current() const noexcept { return current_; }

 private:
  ModelRegistry registry_;
  DsasConfig config_;
  std::size_t count_ = 0;
  std::optional<DsasResult> current_;
};

std::vector<SupervisorEvent> supervise(std::span<const ScenarioRevision> revisions,
                                       const ModelRegistry& registry, const DsasConfig& config);

}  // namespace dsas
