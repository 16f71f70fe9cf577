#pragma once

#include <cstdint>
#include <ostream>
#include <string_view>
#include <variant>
#include <vector>

#include "dsas/cost_function.hpp"

namespace dsas {

// Coordinator -> all vehicles, once per run. Carries the shared mask and the
// consensus interval every leader clamps into.
struct MaskSync {
  AffineMask mask;
  double c_lo = 0.0;
  double c_hi = 0.0;
};

// Vehicle -> coordinator: a*f_i(s_i^h) + b for every whale h.
struct FitnessReport {
  int vehicle_id = 0;
  std::vector<double> masked;
};

// Leader -> all vehicles: alpha_j * s_j^h for every whale h.
struct SpeedBroadcast {
  int vehicle_id = 0;
  std::vector<double> weighted_speeds;
};

// Coordinator -> all vehicles. `improved` is set when h* was re-selected
// this round; vehicles then snapshot whale h* as their best-known speed.
struct BestIndexBroadcast {
  std::size_t best_index = 0;
  bool improved = false;
};

using Payload = std::variant<MaskSync, FitnessReport, SpeedBroadcast, BestIndexBroadcast>;

struct Message {
  std::size_t round = 0;
  std::uint64_t sequence = 0;
  Payload payload;
};

std::string_view variant_name(const Payload& payload);

// Ordered delivery between the agents and the coordinator. post() stamps the
// sequence number and returns the message as delivered.
class Channel {
 public:
  virtual ~Channel() = default;
  virtual const Message& post(std::size_t round, Payload payload) = 0;
};

// Lossless in-process channel; the log is the ground truth of the exchange.
class InProcessChannel final : public Channel {
 public:
  const Message& post(std::size_t round, Payload payload) override;
  const std::vector<Message>& log() const noexcept { return log_; }
  std::vector<Message> take_log() { return std::move(log_); }

 private:
  std::vector<Message> log_;
};

// One record per line: {"round":..,"sequence":..,"variant":..,"payload":{..}}
void write_message_log(std::ostream& out, const std::vector<Message>& log);
std::string to_json_line(const Message& message);

}  // namespace dsas
