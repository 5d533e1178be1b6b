#include "trade/pga.hpp"

#include <algorithm>
#include <chrono>

#include <fmt/format.h>

#if defined(TRADE_HAVE_OPENMP)
#include <omp.h>
#endif

#include "trade/errors.hpp"

namespace trade {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool better(const PlacementResult& a, const PlacementResult& b) {
  if (a.cost.total != b.cost.total) return a.cost.total < b.cost.total;
  return a.placement < b.placement;
}

}  // namespace

std::size_t chunk_size(std::size_t num_pairs, std::size_t num_workers) {
  if (num_workers == 0) throw ArgumentError("worker count must be >= 1");
  // ceil(x / w) for integer x is (x + w - 1) / w with x = num_pairs + w - 1.
  return (num_pairs + 2 * num_workers - 2) / num_workers;
}

ChunkPlan make_chunk_plan(std::size_t num_pairs, std::size_t num_workers) {
  ChunkPlan plan;
  plan.chunk_size = chunk_size(num_pairs, num_workers);
  for (std::size_t i = 0; i < num_workers; ++i) {
    const std::size_t begin = std::min(num_pairs, i * plan.chunk_size);
    const std::size_t end = std::min(num_pairs, (i + 1) * plan.chunk_size);
    if (begin < end) plan.ranges.emplace_back(begin, end);
  }
  return plan;
}

PlacementResult place_worker(const CostModel& model, const Placement& initial, std::span<const StressElement> tasks,
                             std::vector<double>* accepted) {
  if (initial.size() != model.num_services() || initial.num_nodes() != model.num_nodes()) {
    throw StructuralError("initial placement does not match the cost model");
  }
  std::vector<std::size_t> a(initial.assignment().begin(), initial.assignment().end());
  std::vector<double> scratch;
  CostBreakdown current = model.evaluate(a, scratch);
  const std::size_t p = model.num_nodes();

  for (const auto& task : tasks) {
    const std::size_t u = task.upstream;
    const std::size_t v = task.downstream;
    const std::size_t orig_u = a[u];
    const std::size_t orig_v = a[v];
    std::size_t best_u = orig_u;
    std::size_t best_v = orig_v;
    for (std::size_t x = 0; x < p; ++x) {
      for (std::size_t y = 0; y < p; ++y) {
        if (x == orig_u && y == orig_v) continue;
        a[u] = x;
        a[v] = y;
        const CostBreakdown c = model.evaluate(a, scratch);
        if (c.total < current.total) {
          current = c;
          best_u = x;
          best_v = y;
          if (accepted) accepted->push_back(c.total);
        }
      }
    }
    a[u] = best_u;
    a[v] = best_v;
  }
  return {Placement(std::move(a), p), current, 1, 0.0};
}

PlacementResult place_worker(const TrafficStressGraph& traffic, const DelayMatrix& delay, const Placement& initial,
                             std::span<const ResourceVector> demands, std::span<const ResourceVector> capacities,
                             std::span<const StressElement> tasks, const CostWeights& weights) {
  const CostModel model(traffic, delay, demands, capacities, weights);
  return place_worker(model, initial, tasks);
}

PlacementResult parallel_place(const CostModel& model, const SortedPairs& pairs, const Placement& initial,
                               std::size_t workers, Execution execution) {
  const auto start = Clock::now();
  const ChunkPlan plan = make_chunk_plan(pairs.size(), workers);
  const std::span<const StressElement> all(pairs);

  PlacementResult best{initial, model.evaluate(initial), 1, 0.0};
  std::vector<PlacementResult> results(plan.ranges.size());
  const auto n = static_cast<long>(plan.ranges.size());

  auto run_chunk = [&](long i) {
    const auto [b, e] = plan.ranges[static_cast<std::size_t>(i)];
    results[static_cast<std::size_t>(i)] = place_worker(model, initial, all.subspan(b, e - b));
  };

#if defined(TRADE_HAVE_OPENMP)
  if (execution == Execution::openmp && n > 1) {
    const int threads = static_cast<int>(std::min<long>(n, omp_get_max_threads()));
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long i = 0; i < n; ++i) run_chunk(i);
  } else {
    for (long i = 0; i < n; ++i) run_chunk(i);
  }
#else
  (void)execution;
  for (long i = 0; i < n; ++i) run_chunk(i);
#endif

  for (auto& r : results) {
    if (better(r, best)) best = std::move(r);
  }
  best.iterations = 1;
  best.elapsed_s = seconds_since(start);
  return best;
}

PlacementResult parallel_place(const TrafficStressGraph& traffic, const DelayMatrix& delay, const Placement& initial,
                               std::span<const ResourceVector> demands, std::span<const ResourceVector> capacities,
                               std::size_t workers, const CostWeights& weights, Execution execution) {
  const CostModel model(traffic, delay, demands, capacities, weights);
  return parallel_place(model, sort_pairs(traffic), initial, workers, execution);
}

PlacementResult solve_placement(const TrafficStressGraph& traffic, const DelayMatrix& delay, const Placement& initial,
                                std::span<const ResourceVector> demands, std::span<const ResourceVector> capacities,
                                const CostWeights& weights, const SolveOptions& options) {
  if (options.workers == 0) throw ArgumentError("worker count must be >= 1");
  if (options.max_rounds < 1) throw ArgumentError("max_rounds must be >= 1");
  const auto start = Clock::now();
  const CostModel model(traffic, delay, demands, capacities, weights);
  const SortedPairs pairs = sort_pairs(traffic);

  PlacementResult best = parallel_place(model, pairs, initial, options.workers, options.execution);
  int rounds = 1;
  while (rounds < options.max_rounds) {
    PlacementResult next = parallel_place(model, pairs, best.placement, options.workers, options.execution);
    ++rounds;
    if (!(next.cost.total < best.cost.total)) break;
    best = std::move(next);
  }
  best.iterations = rounds;
  best.elapsed_s = seconds_since(start);
  return best;
}

int max_worker_threads() {
#if defined(TRADE_HAVE_OPENMP)
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace trade
