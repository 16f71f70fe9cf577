#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dsas {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested alpha ratios cannot be met inside the vehicles' speed bounds.
class InfeasibleScenario : public Error {
 public:
  using Error::Error;
};

class OutOfFeasibleRange : public Error {
 public:
  using Error::Error;
};

class SpeedOutOfModelRange : public Error {
 public:
  SpeedOutOfModelRange(const std::string& what, double speed) : Error(what), speed_(speed) {}
  double speed() const noexcept { return speed_; }

 private:
  double speed_;
};

// Parse or validation failure of a scenario, registry or revision file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A cost evaluation failed inside an optimizer. Carries as much location
// information as the failing layer knows about.
class EvaluationError : public Error {
 public:
  struct Location {
    std::optional<int> vehicle_id;
    std::optional<std::size_t> whale;
    std::optional<double> speed;
    std::string position;
  };

  EvaluationError(const std::string& what, Location where) : Error(what), where_(std::move(where)) {}
  const Location& where() const noexcept { return where_; }

 private:
  Location where_;
};

}  // namespace dsas
