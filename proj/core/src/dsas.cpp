#include "dsas/dsas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dsas/error.hpp"
#include "dsas/woa.hpp"

namespace dsas {

VehicleAgent::VehicleAgent(VehicleSpec spec, CostHandle model) : spec_(std::move(spec)), model_(std::move(model)) {
  if (!model_) throw ConfigError("vehicle " + std::to_string(spec_.id) + " has no emission model");
}

void VehicleAgent::on_mask_sync(const MaskSync& sync) {
  sync.mask.validate();
  mask_ = sync.mask;
  c_lo_ = sync.c_lo;
  c_hi_ = sync.c_hi;
}

void VehicleAgent::set_whales(std::vector<double> speeds) {
  for (auto& s : speeds) s = std::clamp(s, spec_.s_min, spec_.s_max);
  whales_ = std::move(speeds);
  if (!whales_.empty()) best_speed_ = whales_.front();
}

FitnessReport VehicleAgent::report() const {
  FitnessReport out{spec_.id, {}};
  out.masked.reserve(whales_.size());
  for (std::size_t h = 0; h < whales_.size(); ++h) {
    try {
      out.masked.push_back(masked_evaluate(*model_, whales_[h], mask_));
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "vehicle " << spec_.id << ", whale " << h << ", speed " << whales_[h] << ": " << e.what();
      throw EvaluationError(msg.str(), EvaluationError::Location{spec_.id, h, whales_[h], {}});
    }
  }
  return out;
}

SpeedBroadcast VehicleAgent::lead(double decay, double b_spiral, Rng& rng) {
  // The leader bounds its whales into the consensus interval, so that every
  // follower's projection lands inside its own speed range.
  const double lo = std::max(spec_.s_min, c_lo_ / spec_.alpha);
  const double hi = std::max(lo, std::min(spec_.s_max, c_hi_ / spec_.alpha));
  const Box box{{lo}, {hi}};
  const std::vector<double> x_star{best_speed_};

  std::vector<std::vector<double>> population;
  population.reserve(whales_.size());
  for (double s : whales_) population.push_back({s});

  for (std::size_t h = 0; h < whales_.size(); ++h) {
    const auto draws = woa::draw_update(decay, 1, population.size(), rng);
    population[h] = woa::update_agent(population[h], population, x_star, draws, b_spiral, box);
    whales_[h] = population[h][0];
  }

  SpeedBroadcast out{spec_.id, {}};
  out.weighted_speeds.reserve(whales_.size());
  for (double s : whales_) out.weighted_speeds.push_back(spec_.alpha * s);
  return out;
}

bool VehicleAgent::follow(const SpeedBroadcast& broadcast) {
  bool binding = false;
  whales_.resize(broadcast.weighted_speeds.size());
  for (std::size_t h = 0; h < whales_.size(); ++h) {
    const double projected = broadcast.weighted_speeds[h] / spec_.alpha;
    const double clamped = std::clamp(projected, spec_.s_min, spec_.s_max);
    if (std::abs(clamped - projected) > 1e-9 * std::abs(projected)) binding = true;
    whales_[h] = clamped;
  }
  return binding;
}

void VehicleAgent::on_best_index(const BestIndexBroadcast& broadcast) {
  if (broadcast.improved) best_speed_ = whales_.at(broadcast.best_index);
}

CentralNode::CentralNode(std::size_t vehicles, std::size_t whales)
    : vehicles_(vehicles), whales_(whales), best_aggregate_(std::numeric_limits<double>::infinity()) {}

BestIndexBroadcast CentralNode::aggregate(std::span<const FitnessReport> reports) {
  if (reports.size() != vehicles_) {
    throw Error("central node expected " + std::to_string(vehicles_) + " reports, got " +
                std::to_string(reports.size()));
  }
  table_.assign(reports.size(), {});
  std::vector<double> sums(whales_, 0.0);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].masked.size() != whales_) {
      throw Error("fitness report from vehicle " + std::to_string(reports[i].vehicle_id) +
                  " has the wrong number of values");
    }
    table_[i] = reports[i].masked;
    for (std::size_t h = 0; h < whales_; ++h) sums[h] += reports[i].masked[h];
  }

  std::size_t round_best = 0;
  for (std::size_t h = 1; h < whales_; ++h) {
    if (sums[h] < sums[round_best]) round_best = h;
  }

  BestIndexBroadcast out{best_index_, false};
  if (!initialised_ || sums[round_best] < best_aggregate_) {
    initialised_ = true;
    best_index_ = round_best;
    best_aggregate_ = sums[round_best];
    out = {best_index_, true};
  }
  return out;
}

namespace {

std::vector<FitnessReport> collect_reports(DsasState& state, std::size_t round) {
  std::vector<FitnessReport> reports;
  reports.reserve(state.agents.size());
  for (const auto& agent : state.agents) {
    const auto& msg = state.channel.post(round, agent.report());
    reports.push_back(std::get<FitnessReport>(msg.payload));
  }
  return reports;
}

void publish_best(DsasState& state, std::size_t round, std::span<const FitnessReport> reports) {
  const auto& msg = state.channel.post(round, state.central.aggregate(reports));
  const auto& best = std::get<BestIndexBroadcast>(msg.payload);
  for (auto& agent : state.agents) agent.on_best_index(best);
}

}  // namespace

DsasState initialize(const Scenario& scenario, const ModelRegistry& registry, const DsasConfig& config) {
  validate(scenario);
  const auto interval = feasible_interval(scenario);
  if (config.whales == 0) throw ConfigError("at least one whale per vehicle is required");
  if (!(config.b_spiral > 0.0)) throw ConfigError("spiral constant must be positive");

  const auto costs = registry.resolve(scenario);
  AffineMask mask;
  if (config.mask) {
    mask = *config.mask;
  } else {
    Rng mask_rng(derive_seed(config.seed, 1));
    mask = AffineMask::draw(mask_rng);
  }
  mask.validate();
  mask = mask.snapped();

  DsasState state{scenario,
                  config,
                  interval,
                  mask,
                  {},
                  CentralNode(scenario.size(), config.whales),
                  InProcessChannel{},
                  Rng(config.seed),
                  RunRecord{},
                  0};
  state.agents.reserve(scenario.size());
  for (std::size_t i = 0; i < scenario.size(); ++i) state.agents.emplace_back(scenario.vehicles[i], costs[i]);

  if (config.consensus_init) {
    std::vector<double> shared(config.whales);
    for (auto& c : shared) c = state.rng.uniform(interval.lo, interval.hi);
    for (auto& agent : state.agents) {
      std::vector<double> speeds(shared.size());
      for (std::size_t h = 0; h < shared.size(); ++h) speeds[h] = shared[h] / agent.spec().alpha;
      agent.set_whales(std::move(speeds));
    }
  } else {
    for (auto& agent : state.agents) {
      std::vector<double> speeds(config.whales);
      for (auto& s : speeds) s = state.rng.uniform(agent.spec().s_min, agent.spec().s_max);
      agent.set_whales(std::move(speeds));
    }
  }

  const auto& sync = state.channel.post(0, MaskSync{mask, interval.lo, interval.hi});
  for (auto& agent : state.agents) agent.on_mask_sync(std::get<MaskSync>(sync.payload));

  const auto reports = collect_reports(state, 0);
  publish_best(state, 0, reports);

  state.record.algorithm = "improved-woa";
  state.record.seed = config.seed;
  state.record.rows.push_back(
      {0, unmasked_best(state), static_cast<std::uint64_t>(scenario.size() * config.whales), false});
  return state;
}

RoundOutcome round_step(DsasState& state) {
  state.central.advance_round();
  const std::size_t round = state.central.round();
  const double decay = woa::decay_at(round - 1, state.config.max_rounds);
  const std::size_t n = state.agents.size();

  std::size_t leader = 0;
  if (state.config.leader == LeaderSelection::Random) {
    leader = state.rng.index(n);
  } else {
    leader = state.next_leader++ % n;
  }

  RoundOutcome outcome;
  outcome.leader_id = state.agents[leader].spec().id;

  const auto& sent = state.channel.post(round, state.agents[leader].lead(decay, state.config.b_spiral, state.rng));
  const SpeedBroadcast broadcast = std::get<SpeedBroadcast>(sent.payload);
  for (std::size_t i = 0; i < n; ++i) {
    if (i != leader && state.agents[i].follow(broadcast)) outcome.bounds_binding = true;
  }

  const double before = state.central.best_aggregate();
  const auto reports = collect_reports(state, round);
  publish_best(state, round, reports);
  outcome.improved = state.central.best_aggregate() < before;

  const auto& last = state.record.rows.back();
  state.record.rows.push_back(
      {round, unmasked_best(state), last.evaluations + n * state.config.whales, outcome.bounds_binding});
  return outcome;
}

double unmasked_best(const DsasState& state) {
  return state.mask.unmask_sum(state.central.best_aggregate(), state.agents.size());
}

DsasResult run(const Scenario& scenario, const ModelRegistry& registry, const DsasConfig& config) {
  auto state = initialize(scenario, registry, config);
  for (std::size_t k = 0; k < config.max_rounds; ++k) round_step(state);

  DsasResult result;
  std::map<int, std::pair<double, int>> lanes;
  for (const auto& agent : state.agents) {
    result.speeds.push_back(agent.best_speed());
    auto& [sum, count] = lanes[agent.spec().lane];
    sum += agent.best_speed();
    ++count;
  }
  for (const auto& [lane, acc] : lanes) result.lane_speed[lane] = acc.first / acc.second;
  result.aggregate_gpkm = unmasked_best(state);
  result.rounds = state.central.round();
  result.seed = config.seed;
  result.mask = state.mask;
  result.record = std::move(state.record);
  result.log = state.channel.take_log();
  return result;
}

Supervisor::Supervisor(ModelRegistry registry, DsasConfig config)
    : registry_(std::move(registry)), config_(std::move(config)) {}

SupervisorEvent Supervisor::submit(const ScenarioRevision& revision) {
  SupervisorEvent event;
  event.revision = count_++;
  event.time = revision.time;
  try {
    validate(revision.scenario);
    feasible_interval(revision.scenario);
    event.result = run(revision.scenario, registry_, config_);
    event.kind = SupervisorEvent::Kind::Result;
    current_ = event.result;
  } catch (const InfeasibleScenario& e) {
    event.kind = SupervisorEvent::Kind::Infeasible;
    event.message = e.what();
  } catch (const Error& e) {
    event.kind = SupervisorEvent::Kind::Invalid;
    event.message = e.what();
  }
  return event;
}

std::vector<SupervisorEvent> supervise(std::span<const ScenarioRevision> revisions,
                                       const ModelRegistry& registry, const DsasConfig& config) {
  Supervisor supervisor(registry, config);
  std::vector<SupervisorEvent> events;
  events.reserve(revisions.size());
  for (const auto& revision : revisions) events.push_back(supervisor.submit(revision));
  return events;
}

}  // namespace dsas
