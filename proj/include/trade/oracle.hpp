#pragma once

#include <cstdint>
#include <span>

#include "trade/cost.hpp"
#include "trade/pga.hpp"

namespace trade {

inline constexpr std::uint64_t kDefaultOracleBound = 1'000'000;

/// Exact minimizer of the penalized cost by enumerating all p^k placements
/// in lexicographic order; the first strict minimum wins. Throws
/// TooLargeError when p^k exceeds `max_candidates`.
PlacementResult brute_force_oracle(const TrafficStressGraph& traffic, const DelayMatrix& delay,
                                   std::span<const ResourceVector> demands, std::span<const ResourceVector> capacities,
                                   const CostWeights& weights, std::uint64_t max_candidates = kDefaultOracleBound);

}  // namespace trade
