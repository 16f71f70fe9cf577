#include "dsas/protocol.hpp"

#include <json.hpp>

namespace dsas {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

nlohmann::ordered_json payload_json(const Payload& payload) {
  return std::visit(
      Overloaded{
          [](const MaskSync& m) {
            return nlohmann::ordered_json{
                {"scale", m.mask.scale}, {"offset", m.mask.offset}, {"c_lo", m.c_lo}, {"c_hi", m.c_hi}};
          },
          [](const FitnessReport& m) {
            return nlohmann::ordered_json{{"vehicle_id", m.vehicle_id}, {"masked", m.masked}};
          },
          [](const SpeedBroadcast& m) {
            return nlohmann::ordered_json{{"vehicle_id", m.vehicle_id}, {"weighted_speeds", m.weighted_speeds}};
          },
          [](const BestIndexBroadcast& m) {
            return nlohmann::ordered_json{{"best_index", m.best_index}, {"improved", m.improved}};
          },
      },
      payload);
}

}  // namespace

std::string_view variant_name(const Payload& payload) {
  return std::visit(Overloaded{
                        [](const MaskSync&) { return std::string_view{"MaskSync"}; },
                        [](const FitnessReport&) { return std::string_view{"FitnessReport"}; },
                        [](const SpeedBroadcast&) { return std::string_view{"SpeedBroadcast"}; },
                        [](const BestIndexBroadcast&) { return std::string_view{"BestIndexBroadcast"}; },
                    },
                    payload);
}

const Message& InProcessChannel::post(std::size_t round, Payload payload) {
  log_.push_back(Message{round, static_cast<std::uint64_t>(log_.size()), std::move(payload)});
  return log_.back();
}

std::string to_json_line(const Message& message) {
  nlohmann::ordered_json j;
  j["round"] = message.round;
  j["sequence"] = message.sequence;
  j["variant"] = variant_name(message.payload);
  j["payload"] = payload_json(message.payload);
  return j.dump();
}

void write_message_log(std::ostream& out, const std::vector<Message>& log) {
  for (const auto& m : log) out << to_json_line(m) << '\n';
}

}  // namespace dsas
