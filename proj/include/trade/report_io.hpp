#pragma once

// Result files. JSON is pretty-printed with a trailing newline; numbers use
// shortest round-trip formatting so reruns compare byte for byte.

#include <span>
#include <string>
#include <vector>

#include "trade/pga.hpp"
#include "trade/problem_io.hpp"
#include "trade/scenario_io.hpp"
#include "trade/simulator.hpp"
#include "trade/traffic.hpp"

namespace trade {

inline constexpr int kOutputSchemaVersion = 1;

struct SolveSummary {
  std::size_t workers = 1;
  Execution execution = Execution::openmp;
  CostBreakdown initial_cost;
  bool include_timing = false;
};

std::string placement_json(const PlacementProblem& problem, const PlacementResult& result, const SolveSummary& summary);
std::string oracle_json(const PlacementProblem& problem, const PlacementResult& result, bool include_timing);

std::string stress_json(const MetricsDump& dump, const StressGraphBuild& build, const SortedPairs& pairs);
std::string stress_csv(const MetricsDump& dump, const SortedPairs& pairs);

std::string report_json(const SimulationReport& report, const LoadedScenario& scenario);
std::string timeseries_csv(const SimulationReport& report);
std::string decisions_jsonl(const SimulationReport& report, const LoadedScenario& scenario);

/// Side-by-side windows of several runs of one scenario.
std::string compare_json(std::span<const SimulationReport> reports, const LoadedScenario& scenario);
/// One row per (policy, window).
std::string compare_csv(std::span<const SimulationReport> reports);

}  // namespace trade
