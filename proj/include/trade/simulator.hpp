#pragma once

// Discrete-event cluster model. Requests walk a call tree whose latency comes
// from the current placement, the true delay matrix and message sizes; every
// call bumps the per-pair byte counters the traffic analyzer reads. A control
// loop polls the latency window and hands migration plans back to the
// cluster, which launches the new instance before evicting the old one.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "trade/control.hpp"
#include "trade/dynamics.hpp"
#include "trade/model.hpp"
#include "trade/traffic.hpp"

namespace trade {

struct CallEdge {
  std::size_t parent = 0;
  std::size_t child = 0;
  double request_bytes = 0.0;
  double response_bytes = 0.0;
};

/// Rooted call tree. Children of one parent are called in edge-list order.
struct RequestType {
  std::string name;
  std::size_t root = 0;
  std::vector<CallEdge> edges;
  std::vector<double> processing_ms;  // per service, 0 where unused
};

/// Throws StructuralError unless `rt` is a tree rooted at `root` over
/// `num_services` services.
void validate_request_type(const RequestType& rt, std::size_t num_services);

inline constexpr double kDefaultBandwidthBps = 16e9 / 8.0;  // 16 Gbit/s

struct LatencyModel {
  double bandwidth_Bps = kDefaultBandwidthBps;
  bool parallel_fanout = false;  // max over siblings instead of sum
  double sidecar_ms = 0.0;       // additive per call edge
};

/// Sum over edges (u, v) of D[P(u)][P(v)] + D[P(v)][P(u)] + bytes / bandwidth,
/// plus processing time of every visited service.
double request_latency(const RequestType& rt, const Placement& placement, const DelayMatrix& delay,
                       const LatencyModel& model);
double request_latency(const RequestType& rt, const Placement& placement, const DelayMatrix& delay,
                       double bandwidth_Bps);

struct WorkloadMix {
  std::size_t request_type = 0;
  double ratio = 1.0;
};

enum class Arrival { poisson, uniform };

struct WorkloadSpec {
  double total_qps = 100.0;
  std::vector<WorkloadMix> mix;
  Arrival arrival = Arrival::poisson;
  double jitter_ms = 0.0;  // mean of an exponential per-request extra delay
};

struct ScenarioSpec {
  std::string name;
  std::uint64_t seed = 1;
  double duration_s = 600.0;
  ResourceKindsPtr kinds;
  std::vector<NodeSpec> nodes;
  std::vector<ServiceSpec> services;
  std::vector<RequestType> request_types;
  WorkloadSpec workload;
  DelaySchedule delays;
  double base_delay_ms = kDefaultBaseDelayMs;
  ReservedDestinations reserved;
  MeasurementNoise noise;
  ControlConfig control;
  LatencyModel latency;
  double timeout_ms = 1000.0;
  std::optional<Placement> initial_placement;
};

/// Cross-field checks; throws ValidationError with a field path.
void validate_scenario(const ScenarioSpec& s);

struct RequestRecord {
  double start_s = 0.0;
  std::size_t request_type = 0;
  double latency_ms = 0.0;
  bool success = true;
};

struct MigrationEvent {
  double time_s = 0.0;
  std::size_t service = 0;
  std::size_t from = 0;
  std::size_t to = 0;
  MigrationPhase phase = MigrationPhase::launch;
  std::size_t ready_instances = 0;  // for `service`, after the event
};

struct WindowStats {
  double start_s = 0.0;
  double end_s = 0.0;
  std::string phase;
  std::size_t requests = 0;
  std::size_t successes = 0;
  std::optional<double> mean_ms;  // successful requests only
  std::optional<double> mean_all_ms;
  std::optional<double> p50_ms;
  std::optional<double> p99_ms;
  double throughput_rps = 0.0;
  double goodput = 1.0;
  std::size_t migrations = 0;  // steps launched in this window
};

struct PhaseStats {
  std::string label;
  double start_s = 0.0;
  double end_s = 0.0;
  std::size_t requests = 0;
  std::size_t successes = 0;
  std::optional<double> mean_ms;
  std::optional<double> mean_all_ms;
  double goodput = 1.0;
};

struct SimulationReport {
  std::string scenario;
  Policy policy = Policy::kdefault;
  std::uint64_t seed = 0;
  double duration_s = 0.0;
  std::vector<WindowStats> windows;
  std::vector<PhaseStats> phases;
  std::vector<ControlDecision> decisions;
  std::vector<MigrationEvent> migrations;
  std::size_t requests = 0;
  std::size_t successes = 0;
  std::size_t failures = 0;
  double goodput = 1.0;
  std::optional<double> mean_ms;
  double throughput_rps = 0.0;
  std::size_t min_ready_instances = 0;
  std::size_t capacity_warnings = 0;
  std::vector<CounterSample> final_counters;
  Placement initial_placement;
  Placement final_placement;
};

enum class InstanceState { launching, ready, evicted };

struct Instance {
  std::size_t node = 0;
  InstanceState state = InstanceState::ready;
  std::int64_t ready_ms = 0;
};

/// Per-service instance sets. The serving node is the most recently readied
/// live instance.
class ClusterState {
 public:
  ClusterState() = default;
  ClusterState(const Placement& initial, std::span<const ServiceSpec> services, std::span<const NodeSpec> nodes);

  std::size_t num_services() const { return instances_.size(); }
  std::size_t serving_node(std::size_t service) const;
  Placement serving_placement() const;
  std::size_t ready_instances(std::size_t service) const;
  bool migrating(std::size_t service) const;

  // Returns false (and changes nothing) when the transition is not valid.
  bool launch(std::size_t service, std::size_t node);
  bool make_ready(std::size_t service, std::size_t node, std::int64_t now_ms);
  bool evict(std::size_t service, std::size_t node);

  // Demands of launching and ready instances on `node`.
  ResourceVector node_load(std::size_t node) const;
  bool overloaded(std::size_t node) const;

 private:
  std::vector<std::vector<Instance>> instances_;
  std::vector<ResourceVector> demands_;
  std::vector<ResourceVector> capacities_;
  std::size_t num_nodes_ = 0;
};

class Simulator {
 public:
  Simulator(const ScenarioSpec& scenario, Policy policy);

  /// Processes every event strictly before `t_s`.
  void run_until(double t_s);
  /// Runs to the end of the scenario.
  void run();

  /// Launches each step now; readiness follows after the configured launch
  /// time and the old instance is evicted right after. Steps naming an
  /// unknown service or node throw StructuralError; steps for services
  /// already migrating are skipped and returned.
  std::vector<std::size_t> apply_migration(const MigrationPlan& plan);

  double now() const { return static_cast<double>(now_ms_) / 1000.0; }
  const ClusterState& cluster() const { return cluster_; }
  const std::vector<RequestRecord>& requests() const { return records_; }
  const std::vector<MigrationEvent>& migration_trace() const { return trace_; }
  const std::vector<ControlDecision>& decisions() const { return decisions_; }
  std::size_t min_ready_instances() const { return min_ready_; }

  /// True delay matrix (base plus injected) at time t.
  const DelayMatrix& true_delays(double t_s) const;

  /// Counter scrape of every declared pair at the current time.
  std::vector<CounterSample> scrape() const;

  SimulationReport report() const;

 private:
  enum class EventKind { ready = 1, evict = 2, poll = 3 };
  struct Event {
    std::int64_t time_ms;
    EventKind kind;
    std::uint64_t seq;
    std::size_t service;
    std::size_t from;
    std::size_t to;
    bool operator>(const Event& o) const {
      if (time_ms != o.time_ms) return time_ms > o.time_ms;
      if (kind != o.kind) return kind > o.kind;
      return seq > o.seq;
    }
  };

  void push(Event e);
  void handle(const Event& e);
  void poll();
  void serve_next_request();
  void schedule_next_arrival();
  std::size_t pick_request_type();
  LatencyWindow latency_window(double from_s, double to_s) const;
  TrafficStressGraph window_graph(double t_s) const;
  void record_trace(std::size_t service, std::size_t from, std::size_t to, MigrationPhase phase);

  ScenarioSpec scenario_;
  Policy policy_;
  ControlLoop loop_;
  ClusterState cluster_;
  Placement initial_placement_;
  Placement serving_;
  std::vector<DelayMatrix> truths_;
  DelayMeasurer measurer_;

  std::mt19937_64 arrival_rng_;
  std::mt19937_64 jitter_rng_;
  std::vector<double> smooth_weights_;  // weighted round-robin state for uniform arrivals
  double next_arrival_s_ = 0.0;
  std::int64_t next_arrival_ms_ = 0;

  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  std::uint64_t seq_ = 0;
  std::int64_t now_ms_ = 0;
  std::int64_t end_ms_ = 0;

  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::unordered_map<std::size_t, std::size_t> pair_index_;  // u * k + v -> index
  std::vector<double> sent_;
  std::vector<double> received_;
  std::vector<std::pair<std::int64_t, std::vector<CounterSample>>> snapshots_;

  std::vector<RequestRecord> records_;
  std::vector<MigrationEvent> trace_;
  std::vector<ControlDecision> decisions_;
  std::vector<double> launch_times_s_;
  std::size_t min_ready_ = 0;
  std::size_t capacity_warnings_ = 0;
};

SimulationReport run_simulation(const ScenarioSpec& scenario, Policy policy);

/// Decision log of a full run.
std::vector<ControlDecision> run_control_loop(const ScenarioSpec& scenario, Policy policy);

}  // namespace trade
