#include <gtest/gtest.h>

#include "dsas/error.hpp"
#include "dsas/scenario_io.hpp"

namespace dsas {
namespace {

const std::filesystem::path kData = std::filesystem::path(DSAS_SOURCE_DIR) / "data";

TEST(ScenarioIo, ParsesLanesInOrder) {
  const auto file = parse_scenario(R"({"name": "x", "speed_bounds": [62, 118],
    "lanes": [{"lane": 2, "alpha": 1.0, "fleet": [{"type": "Type-4", "count": 2}]},
              {"lane": 1, "alpha": 1.5, "speed_bounds": [60, 100],
               "fleet": [{"type": "Type-1", "count": 1}, {"type": "Type-2", "count": 1}]}],
    "vehicles": [{"type": "Type-3", "lane": 3, "alpha": 0.9, "s_min": 70, "s_max": 110}]})");
  const auto& v = file.scenario.vehicles;
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(file.scenario.name, "x");
  EXPECT_EQ(v[0].vehicle_type, "Type-4");
  EXPECT_EQ(v[0].s_min, 62.0);
  EXPECT_EQ(v[2].vehicle_type, "Type-1");
  EXPECT_EQ(v[2].alpha, 1.5);
  EXPECT_EQ(v[2].s_max, 100.0);
  EXPECT_EQ(v[4].lane, 3);
  EXPECT_EQ(v[4].s_min, 70.0);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(v[i].id, int(i) + 1);
}

TEST(ScenarioIo, RejectsMalformedInput) {
  EXPECT_THROW(parse_scenario("{"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"lanes": [{"lane": 1, "fleet": []}]})"), ConfigError);
  EXPECT_THROW(parse_scenario(R"({"lanes": [{"lane": 1, "alpha": -1, "fleet": [{"type": "Type-1", "count": 1}]}]})"),
               ConfigError);
  EXPECT_THROW(parse_scenario(R"({"lanes": [{"lane": 1, "alpha": 1, "fleet": [{"type": "Type-1", "count": -2}]}]})"),
               ConfigError);
  EXPECT_THROW(load_scenario_file(kData / "no_such_file.json"), ConfigError);
}

TEST(ScenarioIo, ShippedScenariosLoad) {
  const auto two = load_scenario_file(kData / "scenarios" / "two_lane.json").scenario;
  EXPECT_EQ(two.size(), 60u);
  const auto three = load_scenario_file(kData / "scenarios" / "three_lane.json").scenario;
  EXPECT_EQ(three.size(), 60u);
  EXPECT_EQ(lane_labels(three).size(), 3u);
  EXPECT_THROW(feasible_interval(load_scenario_file(kData / "scenarios" / "infeasible.json").scenario),
               InfeasibleScenario);
}

TEST(ScenarioIo, RevisionsApplyCumulatively) {
  const auto base = load_scenario_file(kData / "scenarios" / "two_lane.json").scenario;
  const auto revisions = parse_revisions(read_text_file(kData / "scenarios" / "revisions.json"));
  ASSERT_EQ(revisions.size(), 4u);
  const auto expanded = expand_revisions(base, revisions);
  ASSERT_EQ(expanded.size(), 5u);
  EXPECT_EQ(expanded[0].time, 0.0);
  EXPECT_EQ(expanded[1].time, 300.0);
  EXPECT_EQ(expanded[1].scenario.vehicles[0].alpha, 1.5);
  EXPECT_EQ(expanded[3].scenario.size(), 65u);
  EXPECT_EQ(expanded[3].scenario.vehicles.back().id, 65);
  EXPECT_EQ(expanded[4].scenario.size(), 0u);
}

TEST(ScenarioIo, RemoveEdits) {
  const auto base = load_scenario_file(kData / "scenarios" / "two_lane.json").scenario;
  const auto fewer = apply_revision(base, {0.0, {{"remove", 1, 0, 0, 0, "Type-2", 5}}});
  EXPECT_EQ(fewer.size(), 55u);
  const auto one_lane = apply_revision(base, {0.0, {{"remove_lane", 2, 0, 0, 0, "", 0}}});
  EXPECT_EQ(one_lane.size(), 30u);
  EXPECT_THROW(parse_revisions(R"({"revisions": [{"time": 1, "edits": [{"op": "teleport"}]}]})"), ConfigError);
}

TEST(ScenarioIo, DigestIsStable) {
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_EQ(digest("a"), "af63dc4c8601ec8c");
}

}  // namespace
}  // namespace dsas
