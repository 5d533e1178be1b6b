#pragma once

// Comparison schedulers: Kubernetes-style default spread and NetMARKS
// traffic-sum node scoring.

#include <cstddef>
#include <span>
#include <vector>

#include "trade/model.hpp"
#include "trade/traffic.hpp"

namespace trade {

/// Scalar load used for "least loaded": sum over kinds of load / capacity,
/// skipping kinds with zero capacity.
double normalized_load(const ResourceVector& load, const ResourceVector& capacity);

/// Services in index order each go to the node with the smallest normalized
/// load among nodes that still fit them (all nodes when none fit); ties go
/// to the lower node index. No later rebalancing.
Placement default_spread(std::span<const ServiceSpec> services, std::span<const NodeSpec> nodes);

struct NodeScore {
  std::size_t node = 0;
  double score = 0.0;
};

/// Per node: sum of T[target][s] + T[s][target] over services s != target
/// placed on it.
std::vector<NodeScore> netmarks_score(std::size_t target, const TrafficStressGraph& traffic, const Placement& placement);

/// Highest-scoring node that can host `target` (loads exclude the target
/// itself). The current node is kept when it ties for best; other ties go to
/// the lower index. All-zero scores fall back to the least-loaded feasible
/// node. Throws InfeasibleError when no node fits.
std::size_t netmarks_place(std::size_t target, const TrafficStressGraph& traffic, const Placement& placement,
                           std::span<const ResourceVector> capacities, std::span<const ResourceVector> demands);

/// Distinct services incident to the `top_pairs` most stressed pairs, in
/// order of first appearance.
std::vector<std::size_t> netmarks_targets(const SortedPairs& pairs, std::size_t top_pairs);

/// Re-places each target in turn, feeding every move into the next decision.
/// Targets with no feasible node stay where they are.
Placement netmarks_reschedule(std::span<const std::size_t> targets, const TrafficStressGraph& traffic,
                              const Placement& placement, std::span<const ResourceVector> capacities,
                              std::span<const ResourceVector> demands);

}  // namespace trade
