#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include "dsas/cost_function.hpp"

namespace dsas {

// Average-speed emission curve f(v) = (b0 + b1 v + b2 v^2 + b3 v^3) / v in
// g/km, defined on a closed speed range.
class EmissionModel final : public BlackBoxCost {
 public:
  EmissionModel(std::string label, std::array<double, 4> coefficients, SpeedRange range);

  const std::string& label() const override { return label_; }
  SpeedRange valid_range() const override { return range_; }
  double evaluate(double speed_kmh) const override;

  const std::array<double, 4>& coefficients() const noexcept { return coefficients_; }

 private:
  std::string label_;
  std::array<double, 4> coefficients_;
  SpeedRange range_;
};

// Registry JSON:
//   {"models": [{"label": "Type-1", "coefficients": [b0, b1, b2, b3],
//                "valid_range": [60, 120]}, ...]}
// Every model is scanned on a 1 km/h grid and must be finite and positive.
// Throws ConfigError naming the offending model.
ModelRegistry load_model_registry(std::string_view json_text);
ModelRegistry load_model_registry_file(const std::filesystem::path& path);

// Representative Type 1-4 passenger-car curves with minima near 72, 81, 89
// and 95 km/h. Not fitted to measured data.
std::string_view default_model_registry_json();
ModelRegistry default_model_registry();

// Environment variable that overrides the default registry path.
inline constexpr const char* kModelRegistryEnv = "DSAS_MODEL_REGISTRY";

// Registry named by kModelRegistryEnv when set, else the built-in defaults.
ModelRegistry registry_from_environment();

}  // namespace dsas
