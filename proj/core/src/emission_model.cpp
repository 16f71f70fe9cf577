#include "dsas/emission_model.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dsas/error.hpp"

namespace dsas {

namespace {

constexpr std::string_view kDefaultRegistry = R"json({
  "models": [
    {"label": "Type-1", "coefficients": [1400.0, 115.031, -0.449938, 0.005],    "valid_range": [60.0, 120.0]},
    {"label": "Type-2", "coefficients": [1700.0, 133.644, -0.324093, 0.0036],   "valid_range": [60.0, 120.0]},
    {"label": "Type-3", "coefficients": [2100.0, 165.493, -0.446882, 0.004],    "valid_range": [60.0, 120.0]},
    {"label": "Type-4", "coefficients": [2600.0, 200.778, -0.585911, 0.0046],   "valid_range": [60.0, 120.0]}
  ]
}
)json";

void check_positive_on_grid(const EmissionModel& model) {
  const auto range = model.valid_range();
  for (double v = range.lo;; v += 1.0) {
    const double speed = std::min(v, range.hi);
    const double f = model.evaluate(speed);
    if (!std::isfinite(f) || !(f > 0.0)) {
      std::ostringstream msg;
      msg << "model '" << model.label() << "' is not positive at " << speed << " km/h (value " << f << ")";
      throw ConfigError(msg.str());
    }
    if (speed >= range.hi) break;
  }
}

}  // namespace

EmissionModel::EmissionModel(std::string label, std::array<double, 4> coefficients, SpeedRange range)
    : label_(std::move(label)), coefficients_(coefficients), range_(range) {
  if (label_.empty()) throw ConfigError("emission model without a label");
  if (!(range_.lo > 0.0) || !(range_.lo < range_.hi)) {
    throw ConfigError("model '" + label_ + "': valid_range must satisfy 0 < lo < hi");
  }
}

double EmissionModel::evaluate(double v) const {
  if (!(v >= range_.lo && v <= range_.hi)) {
    std::ostringstream msg;
    msg << "speed " << v << " km/h outside the range [" << range_.lo << ", " << range_.hi
        << "] of model '" << label_ << "'";
    throw SpeedOutOfModelRange(msg.str(), v);
  }
  const auto& b = coefficients_;
  return (b[0] + v * (b[1] + v * (b[2] + v * b[3]))) / v;
}

ModelRegistry load_model_registry(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("model registry: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("models") || !doc["models"].is_array()) {
    throw ConfigError("model registry: expected an object with a 'models' array");
  }
  if (doc["models"].empty()) throw ConfigError("model registry: no models declared");

  ModelRegistry registry;
  std::size_t index = 0;
  for (const auto& entry : doc["models"]) {
    std::string label = "#" + std::to_string(index++);
    try {
      label = entry.at("label").get<std::string>();
      const auto coeffs = entry.at("coefficients").get<std::vector<double>>();
      if (coeffs.size() != 4) throw ConfigError("model '" + label + "': expected 4 coefficients");
      const auto range = entry.at("valid_range").get<std::vector<double>>();
      if (range.size() != 2) throw ConfigError("model '" + label + "': valid_range needs 2 values");
      if (registry.contains(label)) throw ConfigError("model '" + label + "' declared twice");
      auto model = std::make_shared<EmissionModel>(
          label, std::array<double, 4>{coeffs[0], coeffs[1], coeffs[2], coeffs[3]},
          SpeedRange{range[0], range[1]});
      check_positive_on_grid(*model);
      registry.add(std::move(model));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("model '" + label + "': " + e.what());
    }
  }
  return registry;
}

ModelRegistry load_model_registry_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model registry " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return load_model_registry(text.str());
}

std::string_view default_model_registry_json() { return kDefaultRegistry; }

ModelRegistry default_model_registry() { return load_model_registry(kDefaultRegistry); }

ModelRegistry registry_from_environment() {
  if (const char* path = std::getenv(kModelRegistryEnv); path != nullptr && *path != '\0') {
    return load_model_registry_file(path);
  }
  return default_model_registry();
}

}  // namespace dsas
