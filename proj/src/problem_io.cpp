#include "trade/problem_io.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "json_util.hpp"
#include "trade/baselines.hpp"
#include "trade/cost.hpp"
#include "trade/scenario_io.hpp"

namespace trade {

using detail::as_array;
using detail::as_number;
using detail::as_string;
using detail::find;
using detail::index_path;
using detail::join_path;
using detail::json;
using detail::NameIndex;
using detail::number_or;
using detail::require;

std::vector<ResourceVector> PlacementProblem::demands() const {
  std::vector<ResourceVector> out;
  for (const auto& s : services) out.push_back(s.placement_demand());
  return out;
}

std::vector<ResourceVector> PlacementProblem::capacities() const {
  std::vector<ResourceVector> out;
  for (const auto& n : nodes) out.push_back(n.capacity);
  return out;
}

PlacementProblem parse_problem(const std::string& json_text) {
  const json root = detail::parse_text(json_text);
  if (!root.is_object()) throw ValidationError("", "expected a JSON object");
  detail::check_schema_version(root, kProblemSchemaVersion);

  PlacementProblem p;
  NameIndex services;
  NameIndex nodes;
  p.kinds = detail::parse_kinds(root);
  p.nodes = detail::parse_nodes(root, p.kinds, nodes);
  p.services = detail::parse_services(root, p.kinds, services);
  p.service_names = services.names();
  p.node_names = nodes.names();

  const json& traffic = require(root, "traffic", "");
  const double window_s = number_or(traffic, "window_s", "traffic", 1.0);
  if (!(window_s > 0.0)) throw ValidationError("traffic.window_s", "must be > 0");
  p.traffic = TrafficStressGraph(detail::parse_matrix(traffic, "traffic", "bytes/s", services.size()), window_s);
  p.delay = DelayMatrix(detail::parse_matrix(require(root, "delay", ""), "delay", "ms", nodes.size()));

  if (const json* w = find(root, "weights")) {
    p.weights.forward = number_or(*w, "forward", "weights", p.weights.forward);
    p.weights.backward = number_or(*w, "backward", "weights", p.weights.backward);
    if (const json* pf = find(*w, "penalty_factor")) {
      p.weights.penalty_factor = as_number(*pf, "weights.penalty_factor");
      p.penalty_given = true;
    }
  }
  if (!p.penalty_given) p.weights.penalty_factor = default_penalty_factor(p.traffic, p.delay, p.capacities());
  try {
    validate_weights(p.weights);
  } catch (const Error& e) {
    throw ValidationError("weights", e.what());
  }

  if (const json* init = find(root, "initial_placement")) {
    p.initial = detail::parse_placement(*init, "initial_placement", services, nodes);
  } else {
    p.initial = default_spread(p.services, p.nodes);
  }
  return p;
}

PlacementProblem load_problem(const std::filesystem::path& path) { return parse_problem(read_text_file(path)); }

MetricsDump parse_metrics(const std::string& json_text) {
  const json root = detail::parse_text(json_text);
  if (!root.is_object()) throw ValidationError("", "expected a JSON object");
  detail::check_schema_version(root, kProblemSchemaVersion);

  MetricsDump dump;
  NameIndex services;
  const json& names = as_array(require(root, "services", ""), "services");
  for (std::size_t i = 0; i < names.size(); ++i) {
    services.add(as_string(names[i], index_path("services", i)), index_path("services", i));
  }
  dump.service_names = services.names();

  const json& samples = as_array(require(root, "samples", ""), "samples");
  std::set<std::string> unknown;
  double t_min = std::numeric_limits<double>::infinity();
  double t_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::string path = index_path("samples", i);
    const json& s = samples[i];
    const std::string up = as_string(require(s, "upstream", path), join_path(path, "upstream"));
    const std::string down = as_string(require(s, "downstream", path), join_path(path, "downstream"));
    if (!services.contains(up)) unknown.insert(up);
    if (!services.contains(down)) unknown.insert(down);
    CounterSample c;
    c.sent_bytes_total = as_number(require(s, "sent_bytes_total", path), join_path(path, "sent_bytes_total"));
    c.received_bytes_total =
        as_number(require(s, "received_bytes_total", path), join_path(path, "received_bytes_total"));
    if (c.sent_bytes_total < 0.0) throw ValidationError(join_path(path, "sent_bytes_total"), "must be >= 0");
    if (c.received_bytes_total < 0.0) throw ValidationError(join_path(path, "received_bytes_total"), "must be >= 0");
    c.timestamp = as_number(require(s, "timestamp", path), join_path(path, "timestamp"));
    if (services.contains(up) && services.contains(down)) {
      c.upstream = services.lookup(up, path);
      c.downstream = services.lookup(down, path);
      if (c.upstream == c.downstream) throw ValidationError(path, "upstream and downstream are the same service");
    }
    t_min = std::min(t_min, c.timestamp);
    t_max = std::max(t_max, c.timestamp);
    dump.samples.push_back(c);
  }
  if (!unknown.empty()) {
    std::string list;
    for (const auto& u : unknown) list += (list.empty() ? "" : ", ") + u;
    throw ValidationError("samples", fmt::format("unknown services: {}", list));
  }

  if (const json* w = find(root, "window_s")) {
    dump.window_s = as_number(*w, "window_s");
    if (!(dump.window_s > 0.0)) throw ValidationError("window_s", "must be > 0");
  } else if (!dump.samples.empty()) {
    dump.window_s = t_max - t_min;
    if (!(dump.window_s > 0.0)) {
      throw ValidationError("window_s", "required when every sample has the same timestamp");
    }
  }
  return dump;
}

MetricsDump load_metrics(const std::filesystem::path& path) { return parse_metrics(read_text_file(path)); }

}  // namespace trade
