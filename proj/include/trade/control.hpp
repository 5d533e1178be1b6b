#pragma once

// QoS-triggered rescheduling: windowed latency check, policy dispatch and
// the migratable-only migration plan handed to the cluster.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trade/cost.hpp"
#include "trade/model.hpp"
#include "trade/pga.hpp"
#include "trade/traffic.hpp"

namespace trade {

struct QoSConfig {
  double target_ms = 300.0;
  double poll_period_s = 30.0;
  double window_s = 60.0;
};

void validate_qos(const QoSConfig& cfg);

/// Sums over successful requests in the trailing window.
struct LatencyWindow {
  double sum_ms = 0.0;
  double count = 0.0;
};

enum class TriggerReason { above_target, no_data, below_target };
std::string_view to_string(TriggerReason r);

struct TriggerDecision {
  bool triggered = false;
  std::optional<double> observed_mean_ms;
  TriggerReason reason = TriggerReason::no_data;
};

TriggerDecision evaluate_trigger(const LatencyWindow& window, const QoSConfig& cfg);

enum class MigrationPhase { launch, ready, evict };
std::string_view to_string(MigrationPhase p);

struct MigrationStep {
  std::size_t service = 0;
  std::size_t from = 0;
  std::size_t to = 0;
};

struct MigrationPlan {
  std::vector<MigrationStep> steps;

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
};

struct FilterResult {
  MigrationPlan plan;
  // Non-migratable services the proposal wanted to move.
  std::vector<std::size_t> pinned;
};

/// Steps for every migratable service whose node changes, ordered by
/// descending stress degree in `graph` (when given) then by index.
FilterResult filter_placement(const Placement& current, const Placement& proposed,
                              std::span<const ServiceSpec> services, const TrafficStressGraph* graph = nullptr);

enum class Policy { kdefault, netmarks, trade };
std::string_view to_string(Policy p);
Policy parse_policy(std::string_view name);

struct ControlConfig {
  QoSConfig qos;
  double launch_s = 10.0;
  std::optional<double> cooldown_s;  // defaults to qos.window_s
  std::size_t netmarks_top_pairs = 5;
  SolveOptions pga;
  CostWeights weights;                    // penalty_factor ignored unless fixed_penalty
  std::optional<double> fixed_penalty;    // overrides the per-instance default

  double cooldown() const { return cooldown_s.value_or(qos.window_s); }
};

struct ControlDecision {
  double time_s = 0.0;
  TriggerDecision trigger;
  bool suppressed = false;  // inside the post-migration cooldown
  bool policy_ran = false;
  MigrationPlan plan;
  std::vector<std::size_t> pinned;
  std::vector<std::size_t> skipped_busy;  // already mid-migration
  std::optional<CostBreakdown> cost_before;
  std::optional<CostBreakdown> cost_after;
};

/// What a poll can see. Graph and delay readers are only called when the
/// trigger fires.
struct PollContext {
  double time_s = 0.0;
  LatencyWindow window;
  Placement current;
  std::function<TrafficStressGraph()> stress_graph;
  std::function<DelayMatrix()> measured_delays;
  std::function<bool(std::size_t)> busy;
};

class ControlLoop {
 public:
  ControlLoop(Policy policy, ControlConfig config, std::vector<ServiceSpec> services, std::vector<NodeSpec> nodes);

  ControlDecision on_poll(const PollContext& ctx);

  Policy policy() const { return policy_; }
  const ControlConfig& config() const { return config_; }

 private:
  Placement propose(const PollContext& ctx, const TrafficStressGraph& graph, ControlDecision& decision);

  Policy policy_;
  ControlConfig config_;
  std::vector<ServiceSpec> services_;
  std::vector<NodeSpec> nodes_;
  std::vector<ResourceVector> demands_;
  std::vector<ResourceVector> capacities_;
  double cooldown_until_ = -1.0;
};

}  // namespace trade
