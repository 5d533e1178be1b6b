#pragma once

// Parallel greedy placement search.
//
// Stressed pairs are sorted by descending stress and cut into contiguous
// chunks, one per worker. Every worker starts from the same placement and,
// for each pair (u, v) in its chunk, tries every node pair (a, b) for
// (u, v), keeping a candidate only when it strictly lowers the penalized
// cost. The lowest-cost worker result wins; ties go to the lexicographically
// smallest placement, so the outcome does not depend on thread scheduling.
//
// Two execution paths exist: Execution::serial runs the chunks one after
// another and is the reference the OpenMP path is tested against.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "trade/cost.hpp"
#include "trade/model.hpp"
#include "trade/traffic.hpp"

namespace trade {

enum class Execution { serial, openmp };

struct ChunkPlan {
  std::size_t chunk_size = 0;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;  // [begin, end), never empty
};

/// ceil((num_pairs + num_workers - 1) / num_workers) in real arithmetic.
std::size_t chunk_size(std::size_t num_pairs, std::size_t num_workers);

ChunkPlan make_chunk_plan(std::size_t num_pairs, std::size_t num_workers);

struct PlacementResult {
  Placement placement;
  CostBreakdown cost;
  int iterations = 0;
  double elapsed_s = 0.0;
};

/// Greedy pass over one chunk. When `accepted` is given, the total cost
/// after every accepted move is appended to it.
PlacementResult place_worker(const CostModel& model, const Placement& initial, std::span<const StressElement> tasks,
                             std::vector<double>* accepted = nullptr);

PlacementResult place_worker(const TrafficStressGraph& traffic, const DelayMatrix& delay, const Placement& initial,
                             std::span<const ResourceVector> demands, std::span<const ResourceVector> capacities,
                             std::span<const StressElement> tasks, const CostWeights& weights);

/// One round: chunk `pairs`, run a worker per chunk from `initial`, keep the best.
PlacementResult parallel_place(const CostModel& model, const SortedPairs& pairs, const Placement& initial,
                               std::size_t workers, Execution execution = Execution::openmp);

PlacementResult parallel_place(const TrafficStressGraph& traffic, const DelayMatrix& delay, const Placement& initial,
                               std::span<const ResourceVector> demands, std::span<const ResourceVector> capacities,
                               std::size_t workers, const CostWeights& weights,
                               Execution execution = Execution::openmp);

struct SolveOptions {
  std::size_t workers = 1;
  int max_rounds = 10;
  Execution execution = Execution::openmp;
};

/// Repeats parallel_place from the previous best until a round brings no
/// strict improvement or `max_rounds` rounds ran. `iterations` counts rounds.
PlacementResult solve_placement(const TrafficStressGraph& traffic, const DelayMatrix& delay, const Placement& initial,
                                std::span<const ResourceVector> demands, std::span<const ResourceVector> capacities,
                                const CostWeights& weights, const SolveOptions& options);

/// Number of threads the OpenMP path can use (1 without OpenMP).
int max_worker_threads();

}  // namespace trade
