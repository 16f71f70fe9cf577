#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace dsas {

class Rng;
struct Scenario;

struct SpeedRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Pointwise-only view of a per-vehicle emission curve (g CO2 per km).
// Optimizers see nothing else: no derivatives, no coefficients.
class BlackBoxCost {
 public:
  virtual ~BlackBoxCost() = default;

  virtual const std::string& label() const = 0;
  virtual SpeedRange valid_range() const = 0;
  // Throws SpeedOutOfModelRange outside valid_range().
  virtual double evaluate(double speed_kmh) const = 0;
};

// Reported fitness is rounded to this grid (g/km) before masking.
inline constexpr double kFitnessQuantum = 0x1p-16;
double quantize_fitness(double value);

// Shared affine transform a*f + b applied before fitness values leave a
// vehicle. a > 0 keeps the aggregate argmin unchanged. This hides raw values
// from the aggregator; it is not a cryptographic protection.
//
// With a on a 2^-8 grid, b and f on a 2^-16 grid, every masked value and
// every per-whale sum is exact in double precision (for per-vehicle values
// below 2^14 and fleets up to 8192), so the coordinator's comparisons give
// the same answers for every mask.
struct AffineMask {
  double scale = 1.0;
  double offset = 0.0;

  static AffineMask draw(Rng& rng);  // scale ~ U[0.5, 2], offset ~ U[1, 100], snapped
  void validate() const;             // throws ConfigError unless scale > 0
  AffineMask snapped() const;        // nearest grid point, scale at least 2^-8
  bool operator==(const AffineMask&) const = default;

  // Recovers sum_i f_i from sum_i (a*f_i + b) over n terms.
  double unmask_sum(double masked_sum, std::size_t n) const {
    return (masked_sum - static_cast<double>(n) * offset) / scale;
  }
};

double masked_evaluate(const BlackBoxCost& cost, double speed_kmh, const AffineMask& mask);

using CostHandle = std::shared_ptr<const BlackBoxCost>;

class ModelRegistry {
 public:
  void add(CostHandle model);  // replaces an existing label
  const CostHandle& at(const std::string& label) const;  // throws ConfigError
  bool contains(const std::string& label) const { return models_.count(label) != 0; }
  std::size_t size() const noexcept { return models_.size(); }
  std::vector<std::string> labels() const;

  // One handle per vehicle, in vehicle order.
  std::vector<CostHandle> resolve(const Scenario& scenario) const;

  auto begin() const { return models_.begin(); }
  auto end() const { return models_.end(); }

 private:
  std::map<std::string, CostHandle> models_;
};

}  // namespace dsas
