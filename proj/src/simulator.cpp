#include "trade/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "trade/baselines.hpp"
#include "trade/errors.hpp"

namespace trade {

// ---------------------------------------------------------------------------
// Request model

void validate_request_type(const RequestType& rt, std::size_t num_services) {
  if (rt.root >= num_services) {
    throw StructuralError(fmt::format("request type '{}' root {} is not a service", rt.name, rt.root));
  }
  if (!rt.processing_ms.empty() && rt.processing_ms.size() != num_services) {
    throw StructuralError(fmt::format("request type '{}' lists {} processing times for {} services", rt.name,
                                      rt.processing_ms.size(), num_services));
  }
  for (double p : rt.processing_ms) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw StructuralError(fmt::format("request type '{}' has a negative processing time", rt.name));
    }
  }
  std::vector<int> parents(num_services, 0);
  for (const auto& e : rt.edges) {
    if (e.parent >= num_services || e.child >= num_services) {
      throw StructuralError(fmt::format("request type '{}' edge references an unknown service", rt.name));
    }
    if (e.parent == e.child) throw StructuralError(fmt::format("request type '{}' has a self call", rt.name));
    if (!(e.request_bytes >= 0.0) || !(e.response_bytes >= 0.0)) {
      throw StructuralError(fmt::format("request type '{}' has negative message sizes", rt.name));
    }
    if (e.child == rt.root) throw StructuralError(fmt::format("request type '{}' calls back into its root", rt.name));
    if (++parents[e.child] > 1) {
      throw StructuralError(fmt::format("request type '{}' service {} has two callers", rt.name, e.child));
    }
  }
  // With one caller per child, every edge is reachable from the root iff the
  // graph has no cycle.
  std::vector<bool> seen(num_services, false);
  std::vector<std::size_t> stack{rt.root};
  seen[rt.root] = true;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const std::size_t n = stack.back();
    stack.pop_back();
    for (const auto& e : rt.edges) {
      if (e.parent == n && !seen[e.child]) {
        seen[e.child] = true;
        ++reached;
        stack.push_back(e.child);
      }
    }
  }
  if (reached != rt.edges.size()) {
    throw StructuralError(fmt::format("request type '{}' is not a tree rooted at service {}", rt.name, rt.root));
  }
}

namespace {

double subtree_latency(const RequestType& rt, std::size_t node, const Placement& placement, const DelayMatrix& delay,
                       const LatencyModel& model) {
  double fan = 0.0;
  for (const auto& e : rt.edges) {
    if (e.parent != node) continue;
    const std::size_t a = placement[e.parent];
    const std::size_t b = placement[e.child];
    const double wire = (e.request_bytes + e.response_bytes) / model.bandwidth_Bps * 1000.0;
    const double call = delay(a, b) + delay(b, a) + wire + model.sidecar_ms +
                        subtree_latency(rt, e.child, placement, delay, model);
    fan = model.parallel_fanout ? std::max(fan, call) : fan + call;
  }
  const double own = rt.processing_ms.empty() ? 0.0 : rt.processing_ms[node];
  return own + fan;
}

}  // namespace

double request_latency(const RequestType& rt, const Placement& placement, const DelayMatrix& delay,
                       const LatencyModel& model) {
  if (!(model.bandwidth_Bps > 0.0)) throw ArgumentError("bandwidth must be > 0");
  if (placement.num_nodes() != delay.size()) {
    throw StructuralError("placement and delay matrix disagree on the node count");
  }
  return subtree_latency(rt, rt.root, placement, delay, model);
}

double request_latency(const RequestType& rt, const Placement& placement, const DelayMatrix& delay,
                       double bandwidth_Bps) {
  LatencyModel m;
  m.bandwidth_Bps = bandwidth_Bps;
  return request_latency(rt, placement, delay, m);
}

// ---------------------------------------------------------------------------
// Scenario validation

void validate_scenario(const ScenarioSpec& s) {
  if (s.nodes.empty()) throw ValidationError("nodes", "at least one node is required");
  if (s.services.empty()) throw ValidationError("services", "at least one service is required");
  if (!(s.duration_s > 0.0)) throw ValidationError("duration_s", "must be > 0");
  if (!(s.timeout_ms > 0.0)) throw ValidationError("simulation.timeout_ms", "must be > 0");
  if (!(s.latency.bandwidth_Bps > 0.0)) throw ValidationError("simulation.bandwidth_gbps", "must be > 0");
  if (s.latency.sidecar_ms < 0.0) throw ValidationError("simulation.sidecar_ms", "must be >= 0");

  std::set<std::string> names;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    if (s.nodes[i].id.index != i) throw ValidationError(fmt::format("nodes[{}]", i), "index out of order");
    if (!names.insert(s.nodes[i].id.name).second) {
      throw ValidationError(fmt::format("nodes[{}].name", i), "duplicate node name");
    }
  }
  names.clear();
  for (std::size_t i = 0; i < s.services.size(); ++i) {
    const auto& svc = s.services[i];
    if (svc.id.index != i) throw ValidationError(fmt::format("services[{}]", i), "index out of order");
    if (!names.insert(svc.id.name).second) {
      throw ValidationError(fmt::format("services[{}].name", i), "duplicate service name");
    }
    if (svc.replicas < 1) throw ValidationError(fmt::format("services[{}].replicas", i), "must be >= 1");
  }

  if (s.delays.dimension() != s.nodes.size()) {
    throw ValidationError("delay.schedule", fmt::format("matrices have dimension {} but the scenario has {} nodes",
                                                        s.delays.dimension(), s.nodes.size()));
  }
  for (std::size_t r : s.reserved) {
    if (r >= s.nodes.size()) throw ValidationError("delay.reserved", "references an unknown node");
  }
  if (!(s.base_delay_ms >= 0.0)) throw ValidationError("delay.base_ms", "must be >= 0");

  if (s.request_types.empty()) throw ValidationError("request_types", "at least one request type is required");
  for (std::size_t i = 0; i < s.request_types.size(); ++i) {
    try {
      validate_request_type(s.request_types[i], s.services.size());
    } catch (const StructuralError& e) {
      throw ValidationError(fmt::format("request_types[{}]", i), e.what());
    }
  }

  if (!(s.workload.total_qps > 0.0)) throw ValidationError("workload.qps", "must be > 0");
  if (s.workload.mix.empty()) throw ValidationError("workload.mix", "needs at least one entry");
  double total = 0.0;
  for (std::size_t i = 0; i < s.workload.mix.size(); ++i) {
    const auto& m = s.workload.mix[i];
    if (m.request_type >= s.request_types.size()) {
      throw ValidationError(fmt::format("workload.mix[{}].request_type", i), "unknown request type");
    }
    if (!(m.ratio > 0.0)) throw ValidationError(fmt::format("workload.mix[{}].ratio", i), "must be > 0");
    total += m.ratio;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("workload.mix", fmt::format("ratios sum to {}, expected 1", total));
  }
  if (s.workload.jitter_ms < 0.0) throw ValidationError("workload.jitter_ms", "must be >= 0");

  try {
    validate_qos(s.control.qos);
  } catch (const ArgumentError& e) {
    throw ValidationError("qos", e.what());
  }
  if (s.control.launch_s < 0.0) throw ValidationError("control.launch_s", "must be >= 0");
  if (s.control.pga.workers < 1) throw ValidationError("control.workers", "must be >= 1");
  if (s.initial_placement) {
    if (s.initial_placement->size() != s.services.size() || s.initial_placement->num_nodes() != s.nodes.size()) {
      throw ValidationError("initial_placement", "must assign every service to a known node");
    }
  }
}

// ---------------------------------------------------------------------------
// Cluster state

ClusterState::ClusterState(const Placement& initial, std::span<const ServiceSpec> services,
                           std::span<const NodeSpec> nodes)
    : num_nodes_(nodes.size()) {
  if (initial.size() != services.size() || initial.num_nodes() != nodes.size()) {
    throw StructuralError("initial placement does not match services and nodes");
  }
  for (std::size_t s = 0; s < services.size(); ++s) {
    instances_.push_back({Instance{initial[s], InstanceState::ready, 0}});
    demands_.push_back(services[s].placement_demand());
  }
  for (const auto& n : nodes) capacities_.push_back(n.capacity);
}

std::size_t ClusterState::serving_node(std::size_t service) const {
  const Instance* best = nullptr;
  for (const auto& inst : instances_.at(service)) {
    if (inst.state == InstanceState::ready && (!best || inst.ready_ms >= best->ready_ms)) best = &inst;
  }
  if (!best) throw StructuralError(fmt::format("service {} has no ready instance", service));
  return best->node;
}

Placement ClusterState::serving_placement() const {
  std::vector<std::size_t> a(instances_.size());
  for (std::size_t s = 0; s < a.size(); ++s) a[s] = serving_node(s);
  return Placement(std::move(a), num_nodes_);
}

std::size_t ClusterState::ready_instances(std::size_t service) const {
  const auto& list = instances_.at(service);
  return static_cast<std::size_t>(
      std::count_if(list.begin(), list.end(), [](const Instance& i) { return i.state == InstanceState::ready; }));
}

bool ClusterState::migrating(std::size_t service) const {
  const auto& list = instances_.at(service);
  return std::any_of(list.begin(), list.end(), [](const Instance& i) { return i.state == InstanceState::launching; });
}

bool ClusterState::launch(std::size_t service, std::size_t node) {
  if (service >= instances_.size() || node >= num_nodes_) {
    throw StructuralError(fmt::format("cannot launch service {} on node {}", service, node));
  }
  if (migrating(service) || serving_node(service) == node) return false;
  instances_[service].push_back({node, InstanceState::launching, 0});
  return true;
}

bool ClusterState::make_ready(std::size_t service, std::size_t node, std::int64_t now_ms) {
  for (auto& inst : instances_.at(service)) {
    if (inst.node == node && inst.state == InstanceState::launching) {
      inst.state = InstanceState::ready;
      inst.ready_ms = now_ms;
      return true;
    }
  }
  return false;
}

bool ClusterState::evict(std::size_t service, std::size_t node) {
  if (ready_instances(service) < 2) return false;
  for (auto& inst : instances_.at(service)) {
    if (inst.node == node && inst.state == InstanceState::ready) {
      inst.state = InstanceState::evicted;
      return true;
    }
  }
  return false;
}

ResourceVector ClusterState::node_load(std::size_t node) const {
  ResourceVector load = ResourceVector::zeros(capacities_.at(node).kinds_ptr());
  for (std::size_t s = 0; s < instances_.size(); ++s) {
    for (const auto& inst : instances_[s]) {
      if (inst.node == node && inst.state != InstanceState::evicted) load = load + demands_[s];
    }
  }
  return load;
}

bool ClusterState::overloaded(std::size_t node) const { return !leq_elementwise(node_load(node), capacities_.at(node)); }

// ---------------------------------------------------------------------------
// Simulator

namespace {

std::int64_t to_ms(double s) { return static_cast<std::int64_t>(std::llround(s * 1000.0)); }

std::optional<double> mean_of(double sum, std::size_t n) {
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

// Nearest-rank percentile of a sorted list.
std::optional<double> percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::nullopt;
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

std::vector<DelayMatrix> true_matrices(const ScenarioSpec& s) {
  const DelayMatrix base = DelayMatrix::constant(s.nodes.size(), s.base_delay_ms);
  std::vector<DelayMatrix> out;
  for (const auto& ph : s.delays.phases()) out.push_back(inject(base, ph.injected, s.reserved));
  return out;
}

const ScenarioSpec& validated(const ScenarioSpec& s) {
  validate_scenario(s);
  return s;
}

}  // namespace

Simulator::Simulator(const ScenarioSpec& scenario, Policy policy)
    : scenario_(validated(scenario)),
      policy_(policy),
      loop_(policy, scenario.control, scenario.services, scenario.nodes),
      initial_placement_(scenario.initial_placement ? *scenario.initial_placement
                                                    : default_spread(scenario.services, scenario.nodes)),
      truths_(true_matrices(scenario)),
      measurer_(scenario.noise) {
  cluster_ = ClusterState(initial_placement_, scenario_.services, scenario_.nodes);
  serving_ = initial_placement_;
  end_ms_ = to_ms(scenario_.duration_s);
  min_ready_ = 1;

  std::seed_seq arrival_seed{scenario_.seed, std::uint64_t{1}};
  std::seed_seq jitter_seed{scenario_.seed, std::uint64_t{2}};
  arrival_rng_.seed(arrival_seed);
  jitter_rng_.seed(jitter_seed);
  smooth_weights_.assign(scenario_.workload.mix.size(), 0.0);

  const std::size_t k = scenario_.services.size();
  std::set<std::pair<std::size_t, std::size_t>> declared;
  for (const auto& rt : scenario_.request_types) {
    for (const auto& e : rt.edges) declared.insert({e.parent, e.child});
  }
  for (const auto& pr : declared) {
    pair_index_[pr.first * k + pr.second] = pairs_.size();
    pairs_.push_back(pr);
  }
  sent_.assign(pairs_.size(), 0.0);
  received_.assign(pairs_.size(), 0.0);
  snapshots_.emplace_back(0, scrape());

  const std::int64_t period = to_ms(scenario_.control.qos.poll_period_s);
  for (std::int64_t t = period; t < end_ms_; t += period) push({t, EventKind::poll, 0, 0, 0, 0});

  next_arrival_s_ = 0.0;
  schedule_next_arrival();
}

void Simulator::push(Event e) {
  e.seq = seq_++;
  events_.push(e);
}

void Simulator::schedule_next_arrival() {
  const double qps = scenario_.workload.total_qps;
  if (scenario_.workload.arrival == Arrival::poisson) {
    next_arrival_s_ += std::exponential_distribution<double>(qps)(arrival_rng_);
  } else {
    next_arrival_s_ += 1.0 / qps;
  }
  next_arrival_ms_ = static_cast<std::int64_t>(std::floor(next_arrival_s_ * 1000.0));
}

std::size_t Simulator::pick_request_type() {
  const auto& mix = scenario_.workload.mix;
  if (mix.size() == 1) return mix.front().request_type;
  if (scenario_.workload.arrival == Arrival::uniform) {
    // Smooth weighted round-robin keeps exact long-run ratios.
    std::size_t best = 0;
    for (std::size_t i = 0; i < mix.size(); ++i) {
      smooth_weights_[i] += mix[i].ratio;
      if (smooth_weights_[i] > smooth_weights_[best]) best = i;
    }
    smooth_weights_[best] -= 1.0;
    return mix[best].request_type;
  }
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(arrival_rng_);
  for (const auto& m : mix) {
    if (u < m.ratio) return m.request_type;
    u -= m.ratio;
  }
  return mix.back().request_type;
}

const DelayMatrix& Simulator::true_delays(double t_s) const { return truths_[scenario_.delays.phase_index(t_s)]; }

void Simulator::serve_next_request() {
  now_ms_ = next_arrival_ms_;
  const double t = static_cast<double>(now_ms_) / 1000.0;
  const std::size_t type = pick_request_type();
  const RequestType& rt = scenario_.request_types[type];
  double latency = request_latency(rt, serving_, true_delays(t), scenario_.latency);
  if (scenario_.workload.jitter_ms > 0.0) {
    latency += std::exponential_distribution<double>(1.0 / scenario_.workload.jitter_ms)(jitter_rng_);
  }
  records_.push_back({t, type, latency, latency < scenario_.timeout_ms});

  const std::size_t k = scenario_.services.size();
  for (const auto& e : rt.edges) {
    const std::size_t idx = pair_index_.at(e.parent * k + e.child);
    received_[idx] += e.request_bytes;
    sent_[idx] += e.response_bytes;
  }
  schedule_next_arrival();
}

std::vector<CounterSample> Simulator::scrape() const {
  std::vector<CounterSample> out;
  out.reserve(pairs_.size());
  const double t = static_cast<double>(now_ms_) / 1000.0;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    out.push_back({pairs_[i].first, pairs_[i].second, sent_[i], received_[i], t});
  }
  return out;
}

LatencyWindow Simulator::latency_window(double from_s, double to_s) const {
  LatencyWindow w;
  auto it = std::lower_bound(records_.begin(), records_.end(), from_s,
                             [](const RequestRecord& r, double t) { return r.start_s < t; });
  for (; it != records_.end() && it->start_s < to_s; ++it) {
    if (!it->success) continue;
    w.sum_ms += it->latency_ms;
    w.count += 1.0;
  }
  return w;
}

TrafficStressGraph Simulator::window_graph(double t_s) const {
  const std::int64_t end_ms = snapshots_.back().first;
  const std::int64_t want = std::max<std::int64_t>(0, to_ms(t_s - scenario_.control.qos.window_s));
  const auto* start = &snapshots_.front();
  for (const auto& snap : snapshots_) {
    if (snap.first <= want) start = &snap;
  }
  std::vector<CounterSample> samples = start->second;
  samples.insert(samples.end(), snapshots_.back().second.begin(), snapshots_.back().second.end());
  const double dt = static_cast<double>(end_ms - start->first) / 1000.0;
  return build_stress_graph(samples, scenario_.services.size(), dt).graph;
}

void Simulator::record_trace(std::size_t service, std::size_t from, std::size_t to, MigrationPhase phase) {
  const std::size_t ready = cluster_.ready_instances(service);
  trace_.push_back({now(), service, from, to, phase, ready});
  min_ready_ = std::min(min_ready_, ready);
  if (ready == 0) spdlog::error("service {} lost every ready instance at t={}", service, now());
}

std::vector<std::size_t> Simulator::apply_migration(const MigrationPlan& plan) {
  std::vector<std::size_t> skipped;
  const std::int64_t launch_ms = to_ms(scenario_.control.launch_s);
  for (const auto& step : plan.steps) {
    if (step.service >= scenario_.services.size() || step.to >= scenario_.nodes.size()) {
      throw StructuralError(fmt::format("migration of unknown service {} to node {}", step.service, step.to));
    }
    const std::size_t from = cluster_.serving_node(step.service);
    if (!cluster_.launch(step.service, step.to)) {
      skipped.push_back(step.service);
      continue;
    }
    launch_times_s_.push_back(now());
    record_trace(step.service, from, step.to, MigrationPhase::launch);
    if (cluster_.overloaded(step.to)) {
      ++capacity_warnings_;
      spdlog::warn("node {} over capacity while service {} launches there", step.to, step.service);
    }
    push({now_ms_ + launch_ms, EventKind::ready, 0, step.service, from, step.to});
    push({now_ms_ + launch_ms, EventKind::evict, 0, step.service, from, step.to});
  }
  return skipped;
}

void Simulator::poll() {
  const double t = now();
  snapshots_.emplace_back(now_ms_, scrape());
  PollContext ctx;
  ctx.time_s = t;
  ctx.window = latency_window(t - scenario_.control.qos.window_s, t);
  ctx.current = serving_;
  ctx.stress_graph = [this, t] { return window_graph(t); };
  ctx.measured_delays = [this, t] { return measurer_.measure(true_delays(t)); };
  ctx.busy = [this](std::size_t s) { return cluster_.migrating(s); };

  ControlDecision d = loop_.on_poll(ctx);
  if (!d.plan.empty()) {
    const auto skipped = apply_migration(d.plan);
    d.skipped_busy.insert(d.skipped_busy.end(), skipped.begin(), skipped.end());
  }
  decisions_.push_back(std::move(d));
}

void Simulator::handle(const Event& e) {
  now_ms_ = e.time_ms;
  switch (e.kind) {
    case EventKind::ready:
      if (cluster_.make_ready(e.service, e.to, now_ms_)) {
        serving_ = cluster_.serving_placement();
        record_trace(e.service, e.from, e.to, MigrationPhase::ready);
      }
      break;
    case EventKind::evict:
      if (cluster_.evict(e.service, e.from)) {
        record_trace(e.service, e.from, e.to, MigrationPhase::evict);
      } else {
        spdlog::warn("eviction of service {} on node {} refused at t={}", e.service, e.from, now());
      }
      break;
    case EventKind::poll:
      poll();
      break;
  }
}

void Simulator::run_until(double t_s) {
  const std::int64_t limit = to_ms(t_s);
  for (;;) {
    const std::int64_t next_event = events_.empty() ? std::numeric_limits<std::int64_t>::max() : events_.top().time_ms;
    const std::int64_t next_req =
        next_arrival_ms_ < end_ms_ ? next_arrival_ms_ : std::numeric_limits<std::int64_t>::max();
    const std::int64_t next = std::min(next_event, next_req);
    if (next >= limit) break;
    if (next_event <= next_req) {
      const Event e = events_.top();
      events_.pop();
      handle(e);
    } else {
      serve_next_request();
    }
  }
  now_ms_ = std::max(now_ms_, std::min(limit, end_ms_));
}

void Simulator::run() { run_until(scenario_.duration_s); }

SimulationReport Simulator::report() const {
  SimulationReport r;
  r.scenario = scenario_.name;
  r.policy = policy_;
  r.seed = scenario_.seed;
  r.duration_s = scenario_.duration_s;
  r.decisions = decisions_;
  r.migrations = trace_;
  r.min_ready_instances = min_ready_;
  r.capacity_warnings = capacity_warnings_;
  r.final_counters = scrape();
  r.initial_placement = initial_placement_;
  r.final_placement = serving_;

  auto summarize = [&](double from, double to, std::size_t& n, std::size_t& ok, std::optional<double>& mean,
                       std::optional<double>& mean_all, std::vector<double>* sorted) {
    double sum_ok = 0.0;
    double sum_all = 0.0;
    n = ok = 0;
    auto it = std::lower_bound(records_.begin(), records_.end(), from,
                               [](const RequestRecord& rec, double t) { return rec.start_s < t; });
    for (; it != records_.end() && it->start_s < to; ++it) {
      ++n;
      sum_all += it->latency_ms;
      if (sorted) sorted->push_back(it->latency_ms);
      if (it->success) {
        ++ok;
        sum_ok += it->latency_ms;
      }
    }
    mean = mean_of(sum_ok, ok);
    mean_all = mean_of(sum_all, n);
  };

  const double period = scenario_.control.qos.poll_period_s;
  for (double start = 0.0; start < scenario_.duration_s - 1e-9; start += period) {
    WindowStats w;
    w.start_s = start;
    w.end_s = std::min(start + period, scenario_.duration_s);
    w.phase = scenario_.delays.phases()[scenario_.delays.phase_index(start)].label;
    std::vector<double> lat;
    summarize(w.start_s, w.end_s, w.requests, w.successes, w.mean_ms, w.mean_all_ms, &lat);
    std::sort(lat.begin(), lat.end());
    w.p50_ms = percentile(lat, 0.50);
    w.p99_ms = percentile(lat, 0.99);
    w.throughput_rps = static_cast<double>(w.requests) / (w.end_s - w.start_s);
    w.goodput = w.requests ? static_cast<double>(w.successes) / static_cast<double>(w.requests) : 1.0;
    w.migrations = static_cast<std::size_t>(std::count_if(launch_times_s_.begin(), launch_times_s_.end(),
                                                          [&](double t) { return t >= w.start_s && t < w.end_s; }));
    r.windows.push_back(std::move(w));
  }

  const auto& phases = scenario_.delays.phases();
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (phases[i].activation_s >= scenario_.duration_s) break;
    PhaseStats ph;
    ph.label = phases[i].label;
    ph.start_s = phases[i].activation_s;
    ph.end_s = i + 1 < phases.size() ? std::min(phases[i + 1].activation_s, scenario_.duration_s) : scenario_.duration_s;
    summarize(ph.start_s, ph.end_s, ph.requests, ph.successes, ph.mean_ms, ph.mean_all_ms, nullptr);
    ph.goodput = ph.requests ? static_cast<double>(ph.successes) / static_cast<double>(ph.requests) : 1.0;
    r.phases.push_back(std::move(ph));
  }

  std::optional<double> mean_all;
  summarize(0.0, scenario_.duration_s, r.requests, r.successes, r.mean_ms, mean_all, nullptr);
  r.failures = r.requests - r.successes;
  r.goodput = r.requests ? static_cast<double>(r.successes) / static_cast<double>(r.requests) : 1.0;
  r.throughput_rps = static_cast<double>(r.requests) / scenario_.duration_s;
  return r;
}

SimulationReport run_simulation(const ScenarioSpec& scenario, Policy policy) {
  Simulator sim(scenario, policy);
  sim.run();
  return sim.report();
}

std::vector<ControlDecision> run_control_loop(const ScenarioSpec& scenario, Policy policy) {
  Simulator sim(scenario, policy);
  sim.run();
  return sim.decisions();
}

}  // namespace trade
