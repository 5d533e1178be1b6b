#include "trade/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace trade {

using detail::as_array;
using detail::as_bool;
using detail::as_number;
using detail::as_string;
using detail::as_uint;
using detail::find;
using detail::index_path;
using detail::join_path;
using detail::json;
using detail::NameIndex;
using detail::number_or;
using detail::require;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("", fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::vector<RequestType> parse_request_types(const json& root, const NameIndex& services, NameIndex& names) {
  const json& arr = as_array(require(root, "request_types", ""), "request_types");
  std::vector<RequestType> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = index_path("request_types", i);
    RequestType rt;
    rt.name = as_string(require(arr[i], "name", path), join_path(path, "name"));
    names.add(rt.name, join_path(path, "name"));
    rt.root = services.lookup(as_string(require(arr[i], "root", path), join_path(path, "root")), join_path(path, "root"));
    rt.processing_ms.assign(services.size(), 0.0);
    if (const json* proc = find(arr[i], "processing_ms")) {
      if (!proc->is_object()) throw ValidationError(join_path(path, "processing_ms"), "expected an object");
      for (const auto& [svc, v] : proc->items()) {
        const std::string p = join_path(join_path(path, "processing_ms"), svc);
        const double ms = as_number(v, p);
        if (ms < 0.0) throw ValidationError(p, "must be >= 0");
        rt.processing_ms[services.lookup(svc, p)] = ms;
      }
    }
    if (const json* calls = find(arr[i], "calls")) {
      as_array(*calls, join_path(path, "calls"));
      for (std::size_t c = 0; c < calls->size(); ++c) {
        const std::string cp = index_path(join_path(path, "calls"), c);
        const json& call = (*calls)[c];
        CallEdge e;
        e.parent = services.lookup(as_string(require(call, "from", cp), join_path(cp, "from")), join_path(cp, "from"));
        e.child = services.lookup(as_string(require(call, "to", cp), join_path(cp, "to")), join_path(cp, "to"));
        e.request_bytes = number_or(call, "request_bytes", cp, 0.0);
        e.response_bytes = number_or(call, "response_bytes", cp, 0.0);
        if (e.request_bytes < 0.0) throw ValidationError(join_path(cp, "request_bytes"), "must be >= 0");
        if (e.response_bytes < 0.0) throw ValidationError(join_path(cp, "response_bytes"), "must be >= 0");
        rt.edges.push_back(e);
      }
    }
    try {
      validate_request_type(rt, services.size());
    } catch (const StructuralError& e) {
      throw ValidationError(path, e.what());
    }
    out.push_back(std::move(rt));
  }
  return out;
}

WorkloadSpec parse_workload(const json& root, const NameIndex& types) {
  const json& w = require(root, "workload", "");
  WorkloadSpec spec;
  if (const json* a = find(w, "arrival")) {
    const std::string arrival = as_string(*a, "workload.arrival");
    if (arrival == "poisson") {
      spec.arrival = Arrival::poisson;
    } else if (arrival == "uniform") {
      spec.arrival = Arrival::uniform;
    } else {
      throw ValidationError("workload.arrival", "expected \"poisson\" or \"uniform\"");
    }
  }
  spec.jitter_ms = number_or(w, "jitter_ms", "workload", 0.0);
  if (spec.jitter_ms < 0.0) throw ValidationError("workload.jitter_ms", "must be >= 0");

  const json* mix = find(w, "mix");
  const json* qps = find(w, "qps");
  if (!mix) {
    if (types.size() != 1) throw ValidationError("workload.mix", "required when there is more than one request type");
    if (!qps) throw ValidationError("workload.qps", "missing");
    spec.total_qps = as_number(*qps, "workload.qps");
    spec.mix.push_back({0, 1.0});
  } else {
    as_array(*mix, "workload.mix");
    if (mix->empty()) throw ValidationError("workload.mix", "needs at least one entry");
    // Entries carry either a ratio of the total qps or their own qps.
    double qps_sum = 0.0;
    bool per_type_qps = false;
    for (std::size_t i = 0; i < mix->size(); ++i) {
      const std::string p = index_path("workload.mix", i);
      const json& m = (*mix)[i];
      WorkloadMix entry;
      entry.request_type = types.lookup(as_string(require(m, "request_type", p), join_path(p, "request_type")),
                                        join_path(p, "request_type"));
      if (const json* q = find(m, "qps")) {
        if (i > 0 && !per_type_qps) throw ValidationError(join_path(p, "qps"), "mixes qps and ratio entries");
        per_type_qps = true;
        entry.ratio = as_number(*q, join_path(p, "qps"));
        if (!(entry.ratio > 0.0)) throw ValidationError(join_path(p, "qps"), "must be > 0");
        qps_sum += entry.ratio;
      } else {
        if (per_type_qps) throw ValidationError(join_path(p, "ratio"), "mixes qps and ratio entries");
        entry.ratio = as_number(require(m, "ratio", p), join_path(p, "ratio"));
        if (!(entry.ratio > 0.0)) throw ValidationError(join_path(p, "ratio"), "must be > 0");
      }
      spec.mix.push_back(entry);
    }
    if (per_type_qps) {
      if (qps) throw ValidationError("workload.qps", "must be omitted when mix entries carry qps");
      spec.total_qps = qps_sum;
      for (auto& m : spec.mix) m.ratio /= qps_sum;
    } else {
      if (!qps) throw ValidationError("workload.qps", "missing");
      spec.total_qps = as_number(*qps, "workload.qps");
    }
  }
  if (!(spec.total_qps > 0.0)) throw ValidationError("workload.qps", "must be > 0");
  return spec;
}

void parse_delay(const json& root, const NameIndex& nodes, ScenarioSpec& spec) {
  const json& d = require(root, "delay", "");
  spec.base_delay_ms = number_or(d, "base_ms", "delay", kDefaultBaseDelayMs);
  if (spec.base_delay_ms < 0.0) throw ValidationError("delay.base_ms", "must be >= 0");
  const double update_period = number_or(d, "update_period_s", "delay", 300.0);
  if (const json* reserved = find(d, "reserved")) {
    as_array(*reserved, "delay.reserved");
    for (std::size_t i = 0; i < reserved->size(); ++i) {
      const std::string p = index_path("delay.reserved", i);
      spec.reserved.insert(nodes.lookup(as_string((*reserved)[i], p), p));
    }
  }
  const json& sched = as_array(require(d, "schedule", "delay"), "delay.schedule");
  if (sched.empty()) throw ValidationError("delay.schedule", "needs at least one phase");
  std::vector<DelayPhase> phases;
  for (std::size_t i = 0; i < sched.size(); ++i) {
    const std::string p = index_path("delay.schedule", i);
    DelayPhase ph;
    ph.activation_s = as_number(require(sched[i], "at_s", p), join_path(p, "at_s"));
    if (const json* label = find(sched[i], "label")) {
      ph.label = as_string(*label, join_path(p, "label"));
    } else {
      ph.label = fmt::format("phase{}", i);
    }
    if (const json* m = find(sched[i], "injected")) {
      ph.injected = DelayMatrix(detail::parse_matrix(*m, join_path(p, "injected"), "ms", nodes.size()));
    } else {
      ph.injected = DelayMatrix::zeros(nodes.size());
    }
    phases.push_back(std::move(ph));
  }
  try {
    spec.delays = DelaySchedule(std::move(phases), update_period);
  } catch (const Error& e) {
    throw ValidationError("delay.schedule", e.what());
  }
}

MeasurementNoise parse_noise(const json& root, std::uint64_t seed) {
  MeasurementNoise noise;
  noise.seed = seed;
  const json* n = find(root, "noise");
  if (!n) return noise;
  if (const json* dist = find(*n, "distribution")) {
    const std::string s = as_string(*dist, "noise.distribution");
    if (s == "uniform") {
      noise.distribution = NoiseDistribution::uniform;
    } else if (s == "gaussian") {
      noise.distribution = NoiseDistribution::gaussian;
    } else {
      throw ValidationError("noise.distribution", "expected \"uniform\" or \"gaussian\"");
    }
  }
  noise.magnitude_ms = number_or(*n, "magnitude_ms", "noise", noise.magnitude_ms);
  if (noise.magnitude_ms < 0.0) throw ValidationError("noise.magnitude_ms", "must be >= 0");
  if (const json* s = find(*n, "seed")) noise.seed = as_uint(*s, "noise.seed");
  return noise;
}

ControlConfig parse_control(const json& root) {
  ControlConfig c;
  if (const json* q = find(root, "qos")) {
    c.qos.target_ms = number_or(*q, "target_ms", "qos", c.qos.target_ms);
    c.qos.poll_period_s = number_or(*q, "poll_period_s", "qos", c.qos.poll_period_s);
    c.qos.window_s = number_or(*q, "window_s", "qos", c.qos.window_s);
  }
  const json* ctl = find(root, "control");
  if (!ctl) return c;
  c.launch_s = number_or(*ctl, "launch_s", "control", c.launch_s);
  if (const json* v = find(*ctl, "cooldown_s")) c.cooldown_s = as_number(*v, "control.cooldown_s");
  if (const json* v = find(*ctl, "workers")) c.pga.workers = as_uint(*v, "control.workers");
  if (const json* v = find(*ctl, "max_rounds")) c.pga.max_rounds = static_cast<int>(as_uint(*v, "control.max_rounds"));
  if (const json* v = find(*ctl, "netmarks_top_pairs")) c.netmarks_top_pairs = as_uint(*v, "control.netmarks_top_pairs");
  if (const json* v = find(*ctl, "execution")) {
    const std::string e = as_string(*v, "control.execution");
    if (e == "serial") {
      c.pga.execution = Execution::serial;
    } else if (e == "openmp") {
      c.pga.execution = Execution::openmp;
    } else {
      throw ValidationError("control.execution", "expected \"serial\" or \"openmp\"");
    }
  }
  if (const json* w = find(*ctl, "weights")) {
    c.weights.forward = number_or(*w, "forward", "control.weights", c.weights.forward);
    c.weights.backward = number_or(*w, "backward", "control.weights", c.weights.backward);
  }
  if (const json* pf = find(*ctl, "penalty_factor")) c.fixed_penalty = as_number(*pf, "control.penalty_factor");
  try {
    CostWeights w = c.weights;
    w.penalty_factor = c.fixed_penalty.value_or(1.0);
    validate_weights(w);
  } catch (const Error& e) {
    throw ValidationError("control.weights", e.what());
  }
  if (c.cooldown_s && *c.cooldown_s < 0.0) throw ValidationError("control.cooldown_s", "must be >= 0");
  if (c.pga.max_rounds < 1) throw ValidationError("control.max_rounds", "must be >= 1");
  return c;
}

LatencyModel parse_latency(const json& root, double& timeout_ms) {
  LatencyModel m;
  const json* sim = find(root, "simulation");
  if (!sim) return m;
  timeout_ms = number_or(*sim, "timeout_ms", "simulation", timeout_ms);
  m.bandwidth_Bps = number_or(*sim, "bandwidth_gbps", "simulation", m.bandwidth_Bps * 8.0 / 1e9) * 1e9 / 8.0;
  if (const json* v = find(*sim, "parallel_fanout")) m.parallel_fanout = as_bool(*v, "simulation.parallel_fanout");
  m.sidecar_ms = number_or(*sim, "sidecar_ms", "simulation", m.sidecar_ms);
  return m;
}

}  // namespace

LoadedScenario parse_scenario(const std::string& json_text) {
  const json root = detail::parse_text(json_text);
  if (!root.is_object()) throw ValidationError("", "expected a JSON object");
  detail::check_schema_version(root, kScenarioSchemaVersion);

  LoadedScenario out;
  ScenarioSpec& s = out.spec;
  NameIndex nodes;
  NameIndex services;
  NameIndex types;
  if (const json* n = find(root, "name")) s.name = as_string(*n, "name");
  if (const json* v = find(root, "seed")) s.seed = as_uint(*v, "seed");
  s.duration_s = as_number(require(root, "duration_s", ""), "duration_s");
  s.kinds = detail::parse_kinds(root);
  s.nodes = detail::parse_nodes(root, s.kinds, nodes);
  s.services = detail::parse_services(root, s.kinds, services);
  s.request_types = parse_request_types(root, services, types);
  s.workload = parse_workload(root, types);
  parse_delay(root, nodes, s);
  s.noise = parse_noise(root, s.seed);
  s.control = parse_control(root);
  s.latency = parse_latency(root, s.timeout_ms);
  if (const json* p = find(root, "initial_placement")) {
    s.initial_placement = detail::parse_placement(*p, "initial_placement", services, nodes);
  }
  validate_scenario(s);

  out.service_names = services.names();
  out.node_names = nodes.names();
  out.request_type_names = types.names();
  return out;
}

LoadedScenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_text_file(path)); }

}  // namespace trade
