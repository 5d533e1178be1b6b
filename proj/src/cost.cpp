#include "trade/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "trade/errors.hpp"

namespace trade {

double pair_cost(std::size_t i, std::size_t j, const TrafficStressGraph& traffic, const DelayMatrix& delay,
                 const Placement& placement, const CostWeights& w) {
  const std::size_t a = placement[i];
  const std::size_t b = placement[j];
  return w.forward * traffic(i, j) * delay(a, b) + w.backward * traffic(j, i) * delay(b, a);
}

CostModel::CostModel(const TrafficStressGraph& traffic, const DelayMatrix& delay,
                     std::span<const ResourceVector> demands, std::span<const ResourceVector> capacities,
                     const CostWeights& weights)
    : k_(traffic.size()), p_(delay.size()) {
  validate_weights(weights);
  if (demands.size() != k_) {
    throw StructuralError(fmt::format("{} demand vectors for {} services", demands.size(), k_));
  }
  if (capacities.size() != p_) {
    throw StructuralError(fmt::format("{} capacity vectors for {} nodes", capacities.size(), p_));
  }
  if (p_ == 0) throw StructuralError("placement instance has no nodes");
  r_ = capacities.front().size();
  for (const auto& d : demands) {
    if (!d.same_kinds(capacities.front())) throw StructuralError("demand and capacity kind lists differ");
  }
  for (const auto& c : capacities) {
    if (!c.same_kinds(capacities.front())) throw StructuralError("capacity kind lists differ between nodes");
  }

  for (std::size_t u = 0; u < k_; ++u) {
    for (std::size_t v = 0; v < k_; ++v) {
      if (traffic(u, v) > 0.0) edges_.push_back({u, v, traffic(u, v)});
    }
  }
  delay_.assign(delay.matrix().data().begin(), delay.matrix().data().end());
  demand_.reserve(k_ * r_);
  for (const auto& d : demands) demand_.insert(demand_.end(), d.amounts().begin(), d.amounts().end());
  capacity_.reserve(p_ * r_);
  for (const auto& c : capacities) capacity_.insert(capacity_.end(), c.amounts().begin(), c.amounts().end());
  direction_scale_ = weights.forward + weights.backward;
  penalty_factor_ = weights.penalty_factor;
}

CostBreakdown CostModel::evaluate(std::span<const std::size_t> assignment, std::vector<double>& scratch) const {
  double comm = 0.0;
  for (const auto& e : edges_) comm += e.stress * delay_[assignment[e.u] * p_ + assignment[e.v]];
  comm *= direction_scale_;

  scratch.assign(p_ * r_, 0.0);
  for (std::size_t s = 0; s < k_; ++s) {
    double* load = scratch.data() + assignment[s] * r_;
    const double* dem = demand_.data() + s * r_;
    for (std::size_t r = 0; r < r_; ++r) load[r] += dem[r];
  }
  double penalty = 0.0;
  for (std::size_t j = 0; j < p_ * r_; ++j) {
    if (scratch[j] > capacity_[j]) penalty += (scratch[j] - capacity_[j]) * penalty_factor_;
  }
  return {comm, penalty, comm + penalty};
}

CostBreakdown CostModel::evaluate(const Placement& placement) const {
  if (placement.size() != k_ || placement.num_nodes() != p_) {
    throw StructuralError(fmt::format("placement of {} services over {} nodes does not match a {}x{} instance",
                                      placement.size(), placement.num_nodes(), k_, p_));
  }
  std::vector<double> scratch;
  return evaluate(placement.assignment(), scratch);
}

CostBreakdown calc_cost(const TrafficStressGraph& traffic, const Placement& placement, const DelayMatrix& delay,
                        std::span<const ResourceVector> demands, std::span<const ResourceVector> capacities,
                        const CostWeights& weights) {
  return CostModel(traffic, delay, demands, capacities, weights).evaluate(placement);
}

double default_penalty_factor(const TrafficStressGraph& traffic, const DelayMatrix& delay,
                              std::span<const ResourceVector> capacities) {
  double min_cap = std::numeric_limits<double>::infinity();
  for (const auto& c : capacities) {
    for (double a : c.amounts()) {
      if (a > 0.0) min_cap = std::min(min_cap, a);
    }
  }
  if (!std::isfinite(min_cap)) min_cap = 1.0;
  const double scale = traffic.matrix().max() * delay.matrix().max();
  const double pf = 1e6 * scale / min_cap;
  return pf > 0.0 && std::isfinite(pf) ? pf : 1e6 / min_cap;
}

}  // namespace trade
