#pragma once

// Offline inputs: a placement problem for `solve`/`oracle` and a counter
// dump for `analyze`.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trade/model.hpp"
#include "trade/traffic.hpp"

namespace trade {

inline constexpr int kProblemSchemaVersion = 1;

struct PlacementProblem {
  ResourceKindsPtr kinds;
  std::vector<ServiceSpec> services;
  std::vector<NodeSpec> nodes;
  std::vector<std::string> service_names;
  std::vector<std::string> node_names;
  TrafficStressGraph traffic;
  DelayMatrix delay;
  Placement initial;  // default spread when the file has none
  CostWeights weights;
  bool penalty_given = false;  // otherwise weights.penalty_factor is the default

  std::vector<ResourceVector> demands() const;
  std::vector<ResourceVector> capacities() const;
};

PlacementProblem parse_problem(const std::string& json_text);
PlacementProblem load_problem(const std::filesystem::path& path);

struct MetricsDump {
  std::vector<std::string> service_names;
  std::vector<CounterSample> samples;
  double window_s = 0.0;  // 0 for an empty dump
};

/// Samples name services by string. Every unknown name is collected into a
/// single ValidationError.
MetricsDump parse_metrics(const std::string& json_text);
MetricsDump load_metrics(const std::filesystem::path& path);

}  // namespace trade
