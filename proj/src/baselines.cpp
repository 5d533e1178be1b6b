#include "trade/baselines.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "trade/errors.hpp"

namespace trade {

double normalized_load(const ResourceVector& load, const ResourceVector& capacity) {
  double s = 0.0;
  for (std::size_t r = 0; r < load.size(); ++r) {
    if (capacity[r] > 0.0) s += load[r] / capacity[r];
  }
  return s;
}

namespace {

std::size_t least_loaded(std::span<const std::size_t> candidates, std::span<const ResourceVector> loads,
                         std::span<const ResourceVector> capacities) {
  std::size_t best = candidates.front();
  double best_load = std::numeric_limits<double>::infinity();
  for (std::size_t n : candidates) {
    const double l = normalized_load(loads[n], capacities[n]);
    if (l < best_load) {
      best_load = l;
      best = n;
    }
  }
  return best;
}

}  // namespace

Placement default_spread(std::span<const ServiceSpec> services, std::span<const NodeSpec> nodes) {
  if (nodes.empty()) throw ArgumentError("default spread needs at least one node");
  std::vector<ResourceVector> caps;
  std::vector<ResourceVector> loads;
  for (const auto& n : nodes) {
    caps.push_back(n.capacity);
    loads.push_back(ResourceVector::zeros(n.capacity.kinds_ptr()));
  }
  std::vector<std::size_t> all(nodes.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

  std::vector<std::size_t> assignment;
  assignment.reserve(services.size());
  std::vector<std::size_t> fitting;
  for (const auto& s : services) {
    const ResourceVector demand = s.placement_demand();
    fitting.clear();
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      if (leq_elementwise(loads[n] + demand, caps[n])) fitting.push_back(n);
    }
    const std::size_t chosen = least_loaded(fitting.empty() ? std::span<const std::size_t>(all) : fitting, loads, caps);
    loads[chosen] = loads[chosen] + demand;
    assignment.push_back(chosen);
  }
  return Placement(std::move(assignment), nodes.size());
}

std::vector<NodeScore> netmarks_score(std::size_t target, const TrafficStressGraph& traffic, const Placement& placement) {
  if (target >= placement.size() || traffic.size() != placement.size()) {
    throw StructuralError(fmt::format("target {} outside a {}-service instance", target, placement.size()));
  }
  std::vector<NodeScore> scores(placement.num_nodes());
  for (std::size_t n = 0; n < scores.size(); ++n) scores[n].node = n;
  for (std::size_t s = 0; s < placement.size(); ++s) {
    if (s == target) continue;
    scores[placement[s]].score += traffic(target, s) + traffic(s, target);
  }
  return scores;
}

std::size_t netmarks_place(std::size_t target, const TrafficStressGraph& traffic, const Placement& placement,
                           std::span<const ResourceVector> capacities, std::span<const ResourceVector> demands) {
  if (capacities.size() != placement.num_nodes() || demands.size() != placement.size()) {
    throw StructuralError("capacity or demand lists do not match the placement");
  }
  std::vector<ResourceVector> loads(placement.num_nodes(), ResourceVector::zeros(capacities.front().kinds_ptr()));
  for (std::size_t s = 0; s < placement.size(); ++s) {
    if (s != target) loads[placement[s]] = loads[placement[s]] + demands[s];
  }
  std::vector<std::size_t> feasible;
  for (std::size_t n = 0; n < placement.num_nodes(); ++n) {
    if (leq_elementwise(loads[n] + demands[target], capacities[n])) feasible.push_back(n);
  }
  if (feasible.empty()) {
    throw InfeasibleError(fmt::format("no node has room for service {}", target));
  }

  const auto scores = netmarks_score(target, traffic, placement);
  double best_score = 0.0;
  for (std::size_t n : feasible) best_score = std::max(best_score, scores[n].score);
  if (best_score == 0.0) return least_loaded(feasible, loads, capacities);

  const std::size_t current = placement[target];
  if (std::find(feasible.begin(), feasible.end(), current) != feasible.end() && scores[current].score == best_score) {
    return current;
  }
  for (std::size_t n : feasible) {
    if (scores[n].score == best_score) return n;
  }
  return current;  // unreachable: best_score came from a feasible node
}

std::vector<std::size_t> netmarks_targets(const SortedPairs& pairs, std::size_t top_pairs) {
  std::vector<std::size_t> out;
  const std::size_t n = std::min(top_pairs, pairs.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t s : {pairs[i].upstream, pairs[i].downstream}) {
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
  }
  return out;
}

Placement netmarks_reschedule(std::span<const std::size_t> targets, const TrafficStressGraph& traffic,
                              const Placement& placement, std::span<const ResourceVector> capacities,
                              std::span<const ResourceVector> demands) {
  Placement p = placement;
  for (std::size_t t : targets) {
    try {
      p = p.with(t, netmarks_place(t, traffic, p, capacities, demands));
    } catch (const InfeasibleError&) {
    }
  }
  return p;
}

}  // namespace trade
