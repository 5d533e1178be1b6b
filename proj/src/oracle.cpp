#include "trade/oracle.hpp"

#include <chrono>
#include <vector>

#include <fmt/format.h>

#include "trade/errors.hpp"

namespace trade {

PlacementResult brute_force_oracle(const TrafficStressGraph& traffic, const DelayMatrix& delay,
                                   std::span<const ResourceVector> demands, std::span<const ResourceVector> capacities,
                                   const CostWeights& weights, std::uint64_t max_candidates) {
  const auto start = std::chrono::steady_clock::now();
  const CostModel model(traffic, delay, demands, capacities, weights);
  const std::size_t k = model.num_services();
  const std::size_t p = model.num_nodes();

  std::uint64_t space = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (space > max_candidates / p) {
      throw TooLargeError(fmt::format("{}^{} placements exceed the oracle bound of {}", p, k, max_candidates));
    }
    space *= p;
  }
  if (space > max_candidates) {
    throw TooLargeError(fmt::format("{}^{} placements exceed the oracle bound of {}", p, k, max_candidates));
  }

  // Odometer over assignments; the last service is the fastest digit so the
  // visit order is lexicographic.
  std::vector<std::size_t> a(k, 0);
  std::vector<std::size_t> best_a = a;
  std::vector<double> scratch;
  CostBreakdown best = model.evaluate(a, scratch);
  for (std::uint64_t n = 1; n < space; ++n) {
    std::size_t digit = k;
    while (digit > 0) {
      --digit;
      if (++a[digit] < p) break;
      a[digit] = 0;
    }
    const CostBreakdown c = model.evaluate(a, scratch);
    if (c.total < best.total) {
      best = c;
      best_a = a;
    }
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {Placement(std::move(best_a), p), best, static_cast<int>(space), elapsed};
}

}  // namespace trade
