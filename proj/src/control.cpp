#include "trade/control.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "trade/baselines.hpp"
#include "trade/errors.hpp"

namespace trade {

void validate_qos(const QoSConfig& cfg) {
  if (!(cfg.target_ms > 0.0)) throw ArgumentError("QoS target must be > 0 ms");
  if (!(cfg.poll_period_s > 0.0)) throw ArgumentError("poll period must be > 0 s");
  if (!(cfg.window_s > 0.0)) throw ArgumentError("latency window must be > 0 s");
  if (cfg.window_s < cfg.poll_period_s) {
    spdlog::warn("latency window {} s is shorter than the poll period {} s", cfg.window_s, cfg.poll_period_s);
  }
}

std::string_view to_string(TriggerReason r) {
  switch (r) {
    case TriggerReason::above_target: return "above_target";
    case TriggerReason::no_data: return "no_data";
    case TriggerReason::below_target: return "below_target";
  }
  return "unknown";
}

TriggerDecision evaluate_trigger(const LatencyWindow& window, const QoSConfig& cfg) {
  if (!(window.count > 0.0)) return {false, std::nullopt, TriggerReason::no_data};
  const double mean = window.sum_ms / window.count;
  if (mean > cfg.target_ms) return {true, mean, TriggerReason::above_target};
  return {false, mean, TriggerReason::below_target};
}

std::string_view to_string(MigrationPhase p) {
  switch (p) {
    case MigrationPhase::launch: return "launch";
    case MigrationPhase::ready: return "ready";
    case MigrationPhase::evict: return "evict";
  }
  return "unknown";
}

FilterResult filter_placement(const Placement& current, const Placement& proposed,
                              std::span<const ServiceSpec> services, const TrafficStressGraph* graph) {
  if (current.size() != proposed.size() || current.size() != services.size()) {
    throw StructuralError(fmt::format("placements of size {} and {} for {} services", current.size(), proposed.size(),
                                      services.size()));
  }
  if (graph && graph->size() != services.size()) {
    throw StructuralError("stress graph dimension does not match the service list");
  }
  FilterResult out;
  std::vector<std::pair<double, std::size_t>> moved;
  for (std::size_t s = 0; s < current.size(); ++s) {
    if (current[s] == proposed[s]) continue;
    if (!services[s].migratable) {
      out.pinned.push_back(s);
      continue;
    }
    moved.emplace_back(graph ? graph->degree(s) : 0.0, s);
  }
  std::stable_sort(moved.begin(), moved.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [deg, s] : moved) out.plan.steps.push_back({s, current[s], proposed[s]});
  return out;
}

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::kdefault: return "kdefault";
    case Policy::netmarks: return "netmarks";
    case Policy::trade: return "trade";
  }
  return "unknown";
}

Policy parse_policy(std::string_view name) {
  if (name == "kdefault") return Policy::kdefault;
  if (name == "netmarks") return Policy::netmarks;
  if (name == "trade") return Policy::trade;
  throw ArgumentError(fmt::format("unknown policy '{}' (expected kdefault, netmarks or trade)", name));
}

ControlLoop::ControlLoop(Policy policy, ControlConfig config, std::vector<ServiceSpec> services,
                         std::vector<NodeSpec> nodes)
    : policy_(policy), config_(std::move(config)), services_(std::move(services)), nodes_(std::move(nodes)) {
  validate_qos(config_.qos);
  if (config_.launch_s < 0.0) throw ArgumentError("launch time must be >= 0");
  for (const auto& s : services_) demands_.push_back(s.placement_demand());
  for (const auto& n : nodes_) capacities_.push_back(n.capacity);
}

Placement ControlLoop::propose(const PollContext& ctx, const TrafficStressGraph& graph, ControlDecision& decision) {
  switch (policy_) {
    case Policy::kdefault:
      return ctx.current;
    case Policy::netmarks: {
      const auto targets = netmarks_targets(sort_pairs(graph), config_.netmarks_top_pairs);
      return netmarks_reschedule(targets, graph, ctx.current, capacities_, demands_);
    }
    case Policy::trade: {
      const DelayMatrix delays = ctx.measured_delays();
      CostWeights w = config_.weights;
      w.penalty_factor = config_.fixed_penalty.value_or(default_penalty_factor(graph, delays, capacities_));
      const auto result = solve_placement(graph, delays, ctx.current, demands_, capacities_, w, config_.pga);
      decision.cost_before = calc_cost(graph, ctx.current, delays, demands_, capacities_, w);
      decision.cost_after = result.cost;
      return result.placement;
    }
  }
  return ctx.current;
}

ControlDecision ControlLoop::on_poll(const PollContext& ctx) {
  ControlDecision d;
  d.time_s = ctx.time_s;
  d.trigger = evaluate_trigger(ctx.window, config_.qos);
  if (ctx.time_s < cooldown_until_) {
    d.suppressed = true;
    return d;
  }
  if (!d.trigger.triggered || policy_ == Policy::kdefault) return d;

  d.policy_ran = true;
  const TrafficStressGraph graph = ctx.stress_graph();
  const Placement proposed = propose(ctx, graph, d);
  FilterResult filtered = filter_placement(ctx.current, proposed, services_, &graph);
  d.pinned = std::move(filtered.pinned);
  for (const auto& step : filtered.plan.steps) {
    if (ctx.busy && ctx.busy(step.service)) {
      d.skipped_busy.push_back(step.service);
    } else {
      d.plan.steps.push_back(step);
    }
  }
  if (!d.plan.empty()) cooldown_until_ = ctx.time_s + config_.cooldown();
  spdlog::debug("poll t={} policy={} mean={} plan={} pinned={}", ctx.time_s, to_string(policy_),
                d.trigger.observed_mean_ms.value_or(-1.0), d.plan.size(), d.pinned.size());
  return d;
}

}  // namespace trade
