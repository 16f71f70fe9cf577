#include "dsas/cost_function.hpp"

#include <algorithm>
#include <cmath>

#include "dsas/error.hpp"
#include "dsas/rng.hpp"
#include "dsas/scenario.hpp"

namespace dsas {

namespace {

double snap(double value, double quantum) { return std::nearbyint(value / quantum) * quantum; }

}  // namespace

double quantize_fitness(double value) { return snap(value, kFitnessQuantum); }

AffineMask AffineMask::draw(Rng& rng) {
  AffineMask mask;
  mask.scale = rng.uniform(0.5, 2.0);
  mask.offset = rng.uniform(1.0, 100.0);
  return mask.snapped();
}

AffineMask AffineMask::snapped() const {
  return {std::max(0x1p-8, snap(scale, 0x1p-8)), snap(offset, kFitnessQuantum)};
}

void AffineMask::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(offset)) {
    throw ConfigError("affine mask requires a finite scale > 0");
  }
}

double masked_evaluate(const BlackBoxCost& cost, double speed_kmh, const AffineMask& mask) {
  return mask.scale * quantize_fitness(cost.evaluate(speed_kmh)) + mask.offset;
}

void ModelRegistry::add(CostHandle model) {
  if (!model) throw ConfigError("null model handle");
  const std::string label = model->label();
  models_[label] = std::move(model);
}

const CostHandle& ModelRegistry::at(const std::string& label) const {
  auto it = models_.find(label);
  if (it == models_.end()) throw ConfigError("unknown vehicle type '" + label + "'");
  return it->second;
}

std::vector<std::string> ModelRegistry::labels() const {
  std::vector<std::string> out;
  for (const auto& [label, _] : models_) out.push_back(label);
  return out;
}

std::vector<CostHandle> ModelRegistry::resolve(const Scenario& scenario) const {
  std::vector<CostHandle> out;
  out.reserve(scenario.size());
  for (const auto& v : scenario.vehicles) out.push_back(at(v.vehicle_type));
  return out;
}

}  // namespace dsas
