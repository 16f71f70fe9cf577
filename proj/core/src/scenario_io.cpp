#include "dsas/scenario_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dsas/emission_model.hpp"
#include "dsas/error.hpp"

namespace dsas {

namespace {

using nlohmann::json;

std::pair<double, double> read_bounds(const json& j, const char* key, std::pair<double, double> fallback) {
  if (!j.contains(key)) return fallback;
  const auto v = j.at(key).get<std::vector<double>>();
  if (v.size() != 2) throw ConfigError(std::string(key) + " must hold [s_min, s_max]");
  return {v[0], v[1]};
}

void renumber(Scenario& scenario) {
  for (std::size_t k = 0; k < scenario.vehicles.size(); ++k) scenario.vehicles[k].id = static_cast<int>(k) + 1;
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

ScenarioFile parse_scenario(std::string_view json_text) {
  const json doc = parse_json(json_text, "scenario");
  ScenarioFile out;
  try {
    out.scenario.name = doc.value("name", std::string("scenario"));
    const auto bounds = read_bounds(doc, "speed_bounds", {60.0, 120.0});

    if (doc.contains("lanes")) {
      for (const auto& lane : doc.at("lanes")) {
        const int label = lane.at("lane").get<int>();
        const double alpha = lane.value("alpha", 1.0);
        const auto lane_bounds = read_bounds(lane, "speed_bounds", bounds);
        for (const auto& entry : lane.at("fleet")) {
          const auto type = entry.at("type").get<std::string>();
          const int count = entry.at("count").get<int>();
          if (count < 0) throw ConfigError("negative vehicle count for " + type);
          for (int k = 0; k < count; ++k) {
            out.scenario.vehicles.push_back({0, type, alpha, lane_bounds.first, lane_bounds.second, label});
          }
        }
      }
    }
    if (doc.contains("vehicles")) {
      for (const auto& v : doc.at("vehicles")) {
        out.scenario.vehicles.push_back({0, v.at("type").get<std::string>(), v.value("alpha", 1.0),
                                         v.value("s_min", bounds.first), v.value("s_max", bounds.second),
                                         v.value("lane", 1)});
      }
    }
    if (doc.contains("models")) {
      const auto inline_registry = load_model_registry(json{{"models", doc.at("models")}}.dump());
      for (const auto& [label, model] : inline_registry) out.inline_models.push_back(model);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  renumber(out.scenario);
  validate(out.scenario);
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

ScenarioFile load_scenario_file(const std::filesystem::path& path) { return parse_scenario(read_text_file(path)); }

std::vector<Revision> parse_revisions(std::string_view json_text) {
  const json doc = parse_json(json_text, "revisions");
  std::vector<Revision> out;
  try {
    for (const auto& r : doc.at("revisions")) {
      Revision rev;
      rev.time = r.at("time").get<double>();
      for (const auto& e : r.at("edits")) {
        Edit edit;
        edit.op = e.at("op").get<std::string>();
        if (edit.op == "set_alpha") {
          edit.lane = e.at("lane").get<int>();
          edit.alpha = e.at("alpha").get<double>();
        } else if (edit.op == "set_bounds") {
          edit.lane = e.at("lane").get<int>();
          edit.s_min = e.at("s_min").get<double>();
          edit.s_max = e.at("s_max").get<double>();
        } else if (edit.op == "add" || edit.op == "remove") {
          edit.lane = e.at("lane").get<int>();
          edit.type = e.at("type").get<std::string>();
          edit.count = e.at("count").get<int>();
          if (edit.count < 0) throw ConfigError("revision edit count must be non-negative");
        } else if (edit.op == "remove_lane") {
          edit.lane = e.at("lane").get<int>();
        } else if (edit.op != "clear") {
          throw ConfigError("unknown revision op '" + edit.op + "'");
        }
        rev.edits.push_back(std::move(edit));
      }
      out.push_back(std::move(rev));
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("revisions: ") + e.what());
  }
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (out[k].time < out[k - 1].time) throw ConfigError("revision times must be non-decreasing");
  }
  return out;
}

Scenario apply_revision(const Scenario& scenario, const Revision& revision) {
  Scenario out = scenario;
  auto& vs = out.vehicles;
  for (const auto& e : revision.edits) {
    if (e.op == "set_alpha") {
      for (auto& v : vs) {
        if (v.lane == e.lane) v.alpha = e.alpha;
      }
    } else if (e.op == "set_bounds") {
      for (auto& v : vs) {
        if (v.lane == e.lane) {
          v.s_min = e.s_min;
          v.s_max = e.s_max;
        }
      }
    } else if (e.op == "add") {
      // New vehicles inherit the lane's alpha and bounds.
      VehicleSpec proto{0, e.type, 1.0, 60.0, 120.0, e.lane};
      auto it = std::find_if(vs.begin(), vs.end(), [&](const VehicleSpec& v) { return v.lane == e.lane; });
      if (it != vs.end()) {
        proto.alpha = it->alpha;
        proto.s_min = it->s_min;
        proto.s_max = it->s_max;
      } else if (!vs.empty()) {
        proto.s_min = vs.front().s_min;
        proto.s_max = vs.front().s_max;
      }
      vs.insert(vs.end(), static_cast<std::size_t>(e.count), proto);
    } else if (e.op == "remove") {
      int remaining = e.count;
      for (auto it = vs.end(); it != vs.begin() && remaining > 0;) {
        --it;
        if (it->lane == e.lane && it->vehicle_type == e.type) {
          it = vs.erase(it);
          --remaining;
        }
      }
    } else if (e.op == "remove_lane") {
      std::erase_if(vs, [&](const VehicleSpec& v) { return v.lane == e.lane; });
    } else if (e.op == "clear") {
      vs.clear();
    }
  }
  renumber(out);
  return out;
}

std::vector<ScenarioRevision> expand_revisions(const Scenario& base, std::span<const Revision> revisions) {
  std::vector<ScenarioRevision> out{{0.0, base}};
  Scenario current = base;
  for (const auto& r : revisions) {
    current = apply_revision(current, r);
    out.push_back({r.time, current});
  }
  return out;
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace dsas
