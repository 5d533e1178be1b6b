#pragma once

// Penalized placement objective: bidirectional communication cost plus a
// per-node overflow penalty.

#include <cstddef>
#include <span>
#include <vector>

#include "trade/model.hpp"

namespace trade {

struct CostBreakdown {
  double communication_cost = 0.0;
  double penalty = 0.0;
  double total = 0.0;
};

/// w_f * T[i][j] * D[P(i)][P(j)] + w_b * T[j][i] * D[P(j)][P(i)]
double pair_cost(std::size_t i, std::size_t j, const TrafficStressGraph& traffic, const DelayMatrix& delay,
                 const Placement& placement, const CostWeights& w);

/// Flattened, immutable view of one placement instance. Worker threads share
/// one model; each caller passes its own scratch buffer.
///
/// Communication cost sums over all ordered pairs (i, j) of pair_cost(i, j),
/// which collapses to (w_f + w_b) * sum_uv T[u][v] * D[P(u)][P(v)]; with the
/// default weights (0.5, 0.5) that is exactly sum_uv T[u][v] * D[P(u)][P(v)].
/// Penalty is pf * sum over nodes and resource kinds of max(0, load - cap).
class CostModel {
 public:
  CostModel(const TrafficStressGraph& traffic, const DelayMatrix& delay, std::span<const ResourceVector> demands,
            std::span<const ResourceVector> capacities, const CostWeights& weights);

  std::size_t num_services() const { return k_; }
  std::size_t num_nodes() const { return p_; }
  std::size_t num_resources() const { return r_; }

  CostBreakdown evaluate(std::span<const std::size_t> assignment, std::vector<double>& scratch) const;
  CostBreakdown evaluate(const Placement& placement) const;

 private:
  struct Edge {
    std::size_t u;
    std::size_t v;
    double stress;
  };

  std::size_t k_ = 0;
  std::size_t p_ = 0;
  std::size_t r_ = 0;
  std::vector<Edge> edges_;  // positive cells of T in row-major order
  std::vector<double> delay_;
  std::vector<double> demand_;
  std::vector<double> capacity_;
  double direction_scale_ = 1.0;
  double penalty_factor_ = 1.0;
};

CostBreakdown calc_cost(const TrafficStressGraph& traffic, const Placement& placement, const DelayMatrix& delay,
                        std::span<const ResourceVector> demands, std::span<const ResourceVector> capacities,
                        const CostWeights& weights);

/// 1e6 * max(T) * max(D) / min positive capacity amount, so any overflow
/// outweighs any communication saving. Falls back to 1e6 / min capacity
/// when T or D is all zero.
double default_penalty_factor(const TrafficStressGraph& traffic, const DelayMatrix& delay,
                              std::span<const ResourceVector> capacities);

}  // namespace trade
