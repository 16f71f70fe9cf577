#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dsas/cost_function.hpp"
#include "dsas/dsas.hpp"
#include "dsas/scenario.hpp"

namespace dsas {

// Scenario JSON:
//   {"name": "...", "speed_bounds": [60, 120],
//    "lanes": [{"lane": 1, "alpha": 1.0, "speed_bounds": [..]?,
//               "fleet": [{"type": "Type-1", "count": 10}, ...]}, ...],
//    "vehicles": [{"type": .., "lane": .., "alpha": .., "s_min": .., "s_max": ..}]?,
//    "models": [ registry entries ]?}
// Lanes expand in listed order, fleet entries in listed order, then
// explicit vehicles. Ids are assigned 1..N in that order.
struct ScenarioFile {
  Scenario scenario;
  std::vector<CostHandle> inline_models;
};

ScenarioFile parse_scenario(std::string_view json_text);
ScenarioFile load_scenario_file(const std::filesystem::path& path);

// Revision JSON:
//   {"revisions": [{"time": 60.0, "edits": [
//       {"op": "set_alpha", "lane": 1, "alpha": 1.5},
//       {"op": "set_bounds", "lane": 1, "s_min": 60, "s_max": 110},
//       {"op": "add", "lane": 1, "type": "Type-1", "count": 5},
//       {"op": "remove", "lane": 1, "type": "Type-1", "count": 5},
//       {"op": "remove_lane", "lane": 2},
//       {"op": "clear"}]}]}
struct Edit {
  std::string op;
  int lane = 0;
  double alpha = 0.0;
  double s_min = 0.0;
  double s_max = 0.0;
  std::string type;
  int count = 0;
};

struct Revision {
  double time = 0.0;
  std::vector<Edit> edits;
};

std::vector<Revision> parse_revisions(std::string_view json_text);

// Applies edits in order and renumbers ids 1..N. The result is not
// validated; an empty fleet is reported by the supervisor as invalid.
Scenario apply_revision(const Scenario& scenario, const Revision& revision);

// Revision 0 is the base scenario at time 0, followed by one cumulative
// scenario per revision.
std::vector<ScenarioRevision> expand_revisions(const Scenario& base,
                                               std::span<const Revision> revisions);

std::string read_text_file(const std::filesystem::path& path);

// 64-bit FNV-1a, hex encoded.
std::string digest(std::string_view text);

}  // namespace dsas
