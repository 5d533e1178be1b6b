#include <gtest/gtest.h>

#include <json.hpp>

#include "trade/errors.hpp"
#include "trade/problem_io.hpp"
#include "trade/scenario_io.hpp"

using namespace trade;
using json = nlohmann::json;

namespace {

std::filesystem::path scenario_dir() { return TRADE_SCENARIO_DIR; }

json tiny_json() { return json::parse(read_text_file(scenario_dir() / "tiny_problem.json")); }

std::string error_path(const json& j) {
  try {
    parse_problem(j.dump());
  } catch (const ValidationError& e) {
    return e.path();
  }
  return "<none>";
}

}  // namespace

TEST(ProblemIo, TinyProblemRoundTrips) {
  const auto p = load_problem(scenario_dir() / "tiny_problem.json");
  EXPECT_EQ(p.service_names, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(p.node_names.size(), 2u);
  EXPECT_DOUBLE_EQ(p.traffic(0, 1), 10.0);
  EXPECT_DOUBLE_EQ(p.delay(1, 0), 2.0);
  EXPECT_EQ(p.initial, Placement({0, 1, 0}, 2));
  EXPECT_TRUE(p.penalty_given);
  EXPECT_DOUBLE_EQ(p.weights.penalty_factor, 1000.0);
}

TEST(ProblemIo, DefaultsWhenOptionalFieldsMissing) {
  json j = tiny_json();
  j.erase("initial_placement");
  j["weights"].erase("penalty_factor");
  const auto p = parse_problem(j.dump());
  EXPECT_FALSE(p.penalty_given);
  EXPECT_GT(p.weights.penalty_factor, 0.0);
  EXPECT_EQ(p.initial.size(), 3u);
}

TEST(ProblemIo, ObjectFormPlacement) {
  json j = tiny_json();
  j["initial_placement"] = {{"a", "n1"}, {"b", "n1"}, {"c", "n0"}};
  EXPECT_EQ(parse_problem(j.dump()).initial, Placement({1, 1, 0}, 2));
}

TEST(ProblemIo, ValidationPaths) {
  json j = tiny_json();
  j["schema_version"] = 9;
  EXPECT_EQ(error_path(j), "schema_version");

  j = tiny_json();
  j["traffic"]["data"].erase(0);
  EXPECT_EQ(error_path(j).rfind("traffic", 0), 0u);

  j = tiny_json();
  j["traffic"]["dim"] = 2;
  EXPECT_EQ(error_path(j).rfind("traffic", 0), 0u);

  j = tiny_json();
  j["delay"]["units"] = "s";
  EXPECT_EQ(error_path(j).rfind("delay", 0), 0u);

  j = tiny_json();
  j["delay"]["data"][0] = 1.0;
  EXPECT_EQ(error_path(j).rfind("delay", 0), 0u);

  j = tiny_json();
  j["initial_placement"][1] = "n7";
  EXPECT_EQ(error_path(j).rfind("initial_placement", 0), 0u);

  j = tiny_json();
  j["services"][1]["demand"]["gpu"] = 1.0;
  EXPECT_EQ(error_path(j).rfind("services[1]", 0), 0u);

  EXPECT_THROW(parse_problem("{not json"), ValidationError);
  EXPECT_THROW(load_problem(scenario_dir() / "missing.json"), ValidationError);
}

TEST(MetricsIo, CounterDump) {
  const auto d = load_metrics(scenario_dir() / "counter_dump.json");
  EXPECT_EQ(d.service_names.size(), 4u);
  EXPECT_DOUBLE_EQ(d.window_s, 60.0);
  EXPECT_FALSE(d.samples.empty());
}

TEST(MetricsIo, UnknownServicesReportedTogether) {
  json j = {{"schema_version", 1},
            {"services", {"a", "b"}},
            {"samples",
             {{{"upstream", "a"}, {"downstream", "x"}, {"sent_bytes_total", 0}, {"received_bytes_total", 0}, {"timestamp", 0}},
              {{"upstream", "y"}, {"downstream", "b"}, {"sent_bytes_total", 0}, {"received_bytes_total", 0}, {"timestamp", 1}}}}};
  try {
    parse_metrics(j.dump());
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.path(), "samples");
    EXPECT_NE(std::string(e.what()).find("x"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("y"), std::string::npos);
  }
}

TEST(MetricsIo, EmptyDump) {
  const auto d = parse_metrics(R"({"schema_version": 1, "services": ["a"], "samples": []})");
  EXPECT_TRUE(d.samples.empty());
  EXPECT_DOUBLE_EQ(d.window_s, 0.0);
}

TEST(ScenarioIo, BundledScenariosLoad) {
  for (const char* name : {"social_network_four_phase.json", "delay_step.json", "zero_delay.json"}) {
    SCOPED_TRACE(name);
    const auto sc = load_scenario(scenario_dir() / name);
    EXPECT_EQ(sc.service_names.size(), sc.spec.services.size());
    EXPECT_EQ(sc.node_names.size(), sc.spec.nodes.size());
    EXPECT_FALSE(sc.spec.request_types.empty());
    if (sc.spec.initial_placement) EXPECT_EQ(sc.spec.initial_placement->size(), sc.spec.services.size());
  }
  const auto four = load_scenario(scenario_dir() / "social_network_four_phase.json");
  EXPECT_EQ(four.spec.delays.phases().size(), 4u);
  EXPECT_DOUBLE_EQ(four.spec.control.qos.target_ms, 300.0);
}

TEST(ScenarioIo, ValidationPaths) {
  const json base = json::parse(read_text_file(scenario_dir() / "delay_step.json"));
  const auto path_of = [](const json& j) {
    try {
      parse_scenario(j.dump());
    } catch (const ValidationError& e) {
      return e.path();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(path_of(base), "<none>");

  json j = base;
  j["schema_version"] = 2;
  EXPECT_EQ(path_of(j), "schema_version");

  j = base;
  j["workload"]["mix"][0]["ratio"] = 5.0;
  EXPECT_EQ(path_of(j).rfind("workload", 0), 0u);

  j = base;
  j["delay"]["schedule"][1]["injected"]["dim"] = 3;
  EXPECT_EQ(path_of(j).rfind("delay", 0), 0u);

  j = base;
  j["request_types"][0]["root"] = "nope";
  EXPECT_EQ(path_of(j).rfind("request_types[0]", 0), 0u);
}
