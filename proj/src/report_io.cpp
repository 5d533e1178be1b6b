#include "trade/report_io.hpp"

#include <fmt/format.h>
#include <json.hpp>

namespace trade {

using json = nlohmann::json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string csv_opt(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); }

json cost_json(const CostBreakdown& c) {
  return {{"communication_cost", c.communication_cost}, {"penalty", c.penalty}, {"total", c.total}};
}

json named_placement(const Placement& p, const std::vector<std::string>& services,
                     const std::vector<std::string>& nodes) {
  json out = json::array();
  for (std::size_t s = 0; s < p.size(); ++s) out.push_back({{"service", services[s]}, {"node", nodes[p[s]]}});
  return out;
}

json index_list(std::span<const std::size_t> a) { return json(std::vector<std::size_t>(a.begin(), a.end())); }

std::string_view execution_name(Execution e) { return e == Execution::serial ? "serial" : "openmp"; }

json decision_json(const ControlDecision& d, const LoadedScenario& sc) {
  json steps = json::array();
  for (const auto& st : d.plan.steps) {
    steps.push_back({{"service", sc.service_names[st.service]},
                     {"from", sc.node_names[st.from]},
                     {"to", sc.node_names[st.to]}});
  }
  auto names = [&](const std::vector<std::size_t>& ids) {
    json a = json::array();
    for (std::size_t s : ids) a.push_back(sc.service_names[s]);
    return a;
  };
  json out = {{"time_s", d.time_s},
              {"trigger", to_string(d.trigger.reason)},
              {"observed_mean_ms", opt(d.trigger.observed_mean_ms)},
              {"suppressed", d.suppressed},
              {"policy_ran", d.policy_ran},
              {"plan", steps},
              {"pinned", names(d.pinned)},
              {"skipped_busy", names(d.skipped_busy)}};
  out["cost_before"] = d.cost_before ? cost_json(*d.cost_before) : json(nullptr);
  out["cost_after"] = d.cost_after ? cost_json(*d.cost_after) : json(nullptr);
  return out;
}

json window_json(const WindowStats& w) {
  return {{"start_s", w.start_s},
          {"end_s", w.end_s},
          {"phase", w.phase},
          {"requests", w.requests},
          {"successes", w.successes},
          {"mean_ms", opt(w.mean_ms)},
          {"mean_all_ms", opt(w.mean_all_ms)},
          {"p50_ms", opt(w.p50_ms)},
          {"p99_ms", opt(w.p99_ms)},
          {"throughput_rps", w.throughput_rps},
          {"goodput", w.goodput},
          {"migrations", w.migrations}};
}

json summary_json(const SimulationReport& r) {
  json phases = json::array();
  for (const auto& ph : r.phases) {
    phases.push_back({{"label", ph.label},
                      {"start_s", ph.start_s},
                      {"end_s", ph.end_s},
                      {"requests", ph.requests},
                      {"successes", ph.successes},
                      {"mean_ms", opt(ph.mean_ms)},
                      {"mean_all_ms", opt(ph.mean_all_ms)},
                      {"goodput", ph.goodput}});
  }
  std::size_t launches = 0;
  for (const auto& m : r.migrations) launches += m.phase == MigrationPhase::launch ? 1 : 0;
  return {{"requests", r.requests},
          {"successes", r.successes},
          {"failures", r.failures},
          {"goodput", r.goodput},
          {"mean_ms", opt(r.mean_ms)},
          {"throughput_rps", r.throughput_rps},
          {"migrations", launches},
          {"min_ready_instances", r.min_ready_instances},
          {"capacity_warnings", r.capacity_warnings},
          {"phases", phases}};
}

}  // namespace

std::string placement_json(const PlacementProblem& problem, const PlacementResult& result, const SolveSummary& summary) {
  json out = {{"schema_version", kOutputSchemaVersion},
              {"kind", "placement"},
              {"workers", summary.workers},
              {"execution", execution_name(summary.execution)},
              {"penalty_factor", problem.weights.penalty_factor},
              {"initial_cost", cost_json(summary.initial_cost)},
              {"cost", cost_json(result.cost)},
              {"rounds", result.iterations},
              {"assignment", index_list(result.placement.assignment())},
              {"placement", named_placement(result.placement, problem.service_names, problem.node_names)}};
  if (summary.include_timing) out["elapsed_ms"] = result.elapsed_s * 1000.0;
  return dump(out);
}

std::string oracle_json(const PlacementProblem& problem, const PlacementResult& result, bool include_timing) {
  json out = {{"schema_version", kOutputSchemaVersion},
              {"kind", "oracle"},
              {"penalty_factor", problem.weights.penalty_factor},
              {"cost", cost_json(result.cost)},
              {"candidates", result.iterations},
              {"assignment", index_list(result.placement.assignment())},
              {"placement", named_placement(result.placement, problem.service_names, problem.node_names)}};
  if (include_timing) out["elapsed_ms"] = result.elapsed_s * 1000.0;
  return dump(out);
}

std::string stress_json(const MetricsDump& dump_in, const StressGraphBuild& build, const SortedPairs& pairs) {
  const auto& names = dump_in.service_names;
  json pair_list = json::array();
  for (const auto& p : pairs) {
    pair_list.push_back({{"upstream", names[p.upstream]}, {"downstream", names[p.downstream]}, {"stress", p.stress}});
  }
  json resets = json::array();
  for (const auto& r : build.resets) {
    resets.push_back({{"upstream", names[r.upstream]}, {"downstream", names[r.downstream]}, {"timestamp", r.timestamp}});
  }
  json single = json::array();
  for (const auto& [u, v] : build.single_sample_pairs) single.push_back({{"upstream", names[u]}, {"downstream", names[v]}});
  const auto data = build.graph.matrix().data();
  json out = {{"schema_version", kOutputSchemaVersion},
              {"kind", "stress_graph"},
              {"services", names},
              {"window_s", dump_in.window_s},
              {"matrix",
               {{"dim", names.size()}, {"units", "bytes/s"}, {"data", std::vector<double>(data.begin(), data.end())}}},
              {"sorted_pairs", pair_list},
              {"counter_resets", resets},
              {"single_sample_pairs", single}};
  return dump(out);
}

std::string stress_csv(const MetricsDump& dump_in, const SortedPairs& pairs) {
  std::string out = "rank,upstream,downstream,stress_bytes_per_s\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out += fmt::format("{},{},{},{}\n", i + 1, dump_in.service_names[pairs[i].upstream],
                       dump_in.service_names[pairs[i].downstream], pairs[i].stress);
  }
  return out;
}

std::string report_json(const SimulationReport& r, const LoadedScenario& sc) {
  json windows = json::array();
  for (const auto& w : r.windows) windows.push_back(window_json(w));
  json trace = json::array();
  for (const auto& m : r.migrations) {
    trace.push_back({{"time_s", m.time_s},
                     {"service", sc.service_names[m.service]},
                     {"from", sc.node_names[m.from]},
                     {"to", sc.node_names[m.to]},
                     {"phase", to_string(m.phase)},
                     {"ready_instances", m.ready_instances}});
  }
  json counters = json::array();
  for (const auto& c : r.final_counters) {
    counters.push_back({{"upstream", sc.service_names[c.upstream]},
                        {"downstream", sc.service_names[c.downstream]},
                        {"sent_bytes_total", c.sent_bytes_total},
                        {"received_bytes_total", c.received_bytes_total},
                        {"timestamp", c.timestamp}});
  }
  json out = {{"schema_version", kOutputSchemaVersion},
              {"kind", "simulation_report"},
              {"scenario", r.scenario},
              {"policy", to_string(r.policy)},
              {"seed", r.seed},
              {"duration_s", r.duration_s},
              {"summary", summary_json(r)},
              {"windows", windows},
              {"migrations", trace},
              {"initial_placement", named_placement(r.initial_placement, sc.service_names, sc.node_names)},
              {"final_placement", named_placement(r.final_placement, sc.service_names, sc.node_names)},
              {"final_counters", counters}};
  return dump(out);
}

std::string timeseries_csv(const SimulationReport& r) {
  std::string out =
      "start_s,end_s,phase,requests,successes,mean_ms,mean_all_ms,p50_ms,p99_ms,throughput_rps,goodput,migrations\n";
  for (const auto& w : r.windows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", w.start_s, w.end_s, w.phase, w.requests, w.successes,
                       csv_opt(w.mean_ms), csv_opt(w.mean_all_ms), csv_opt(w.p50_ms), csv_opt(w.p99_ms),
                       w.throughput_rps, w.goodput, w.migrations);
  }
  return out;
}

std::string decisions_jsonl(const SimulationReport& r, const LoadedScenario& sc) {
  std::string out;
  for (const auto& d : r.decisions) out += decision_json(d, sc).dump() + "\n";
  return out;
}

std::string compare_json(std::span<const SimulationReport> reports, const LoadedScenario& sc) {
  json runs = json::array();
  for (const auto& r : reports) {
    json windows = json::array();
    for (const auto& w : r.windows) windows.push_back(window_json(w));
    runs.push_back({{"policy", to_string(r.policy)}, {"summary", summary_json(r)}, {"windows", windows}});
  }
  json out = {{"schema_version", kOutputSchemaVersion},
              {"kind", "comparison"},
              {"scenario", sc.spec.name},
              {"seed", sc.spec.seed},
              {"runs", runs}};
  return dump(out);
}

std::string compare_csv(std::span<const SimulationReport> reports) {
  std::string out =
      "policy,start_s,end_s,phase,requests,successes,mean_ms,mean_all_ms,p50_ms,p99_ms,throughput_rps,goodput,"
      "migrations\n";
  for (const auto& r : reports) {
    for (const auto& w : r.windows) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.policy), w.start_s, w.end_s, w.phase,
                         w.requests, w.successes, csv_opt(w.mean_ms), csv_opt(w.mean_all_ms), csv_opt(w.p50_ms),
                         csv_opt(w.p99_ms), w.throughput_rps, w.goodput, w.migrations);
    }
  }
  return out;
}

}  // namespace trade
