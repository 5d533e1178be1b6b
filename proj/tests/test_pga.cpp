#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/naive_cost.hpp"
#include "support/random_instance.hpp"
#include "support/tiny.hpp"
#include "trade/cost.hpp"
#include "trade/errors.hpp"
#include "trade/oracle.hpp"
#include "trade/pga.hpp"

using namespace trade;
using trade::testing::Tiny;

TEST(Chunking, SpotValues) {
  auto sizes = [](std::size_t n, std::size_t w) {
    std::vector<std::size_t> out;
    for (const auto& [b, e] : make_chunk_plan(n, w).ranges) out.push_back(e - b);
    return out;
  };
  EXPECT_EQ(sizes(10, 3), (std::vector<std::size_t>{4, 4, 2}));
  EXPECT_EQ(sizes(9, 3), (std::vector<std::size_t>{4, 4, 1}));
  EXPECT_EQ(chunk_size(1, 1), 1u);
  EXPECT_THROW(chunk_size(3, 0), ArgumentError);
}

// Property: chunks tile [0, n) in order and respect the size bound.
TEST(Chunking, DisjointExhaustiveBounded) {
  for (std::size_t n = 1; n <= 50; ++n) {
    for (std::size_t w = 1; w <= 50; ++w) {
      const auto plan = make_chunk_plan(n, w);
      const std::size_t bound = (n + w - 1 + w - 1) / w;
      std::size_t next = 0;
      for (const auto& [b, e] : plan.ranges) {
        ASSERT_EQ(b, next);
        ASSERT_LT(b, e);
        ASSERT_LE(e - b, bound);
        next = e;
      }
      ASSERT_EQ(next, n);
      ASSERT_LE(plan.ranges.size(), w);
    }
  }
}

// Traced by hand from 010 (cost 28): task (a,b) reaches 110 (10); the other
// tasks find nothing strictly better.
TEST(PlaceWorker, TinyTrace) {
  const Tiny x;
  const CostModel model(x.traffic, x.delay, x.demands, x.capacities, x.weights);
  const auto pairs = sort_pairs(x.traffic);
  std::vector<double> accepted;
  const auto r = place_worker(model, Placement({0, 1, 0}, 2), pairs, &accepted);
  EXPECT_EQ(r.placement, Placement({1, 1, 0}, 2));
  EXPECT_DOUBLE_EQ(r.cost.total, 10.0);
  EXPECT_EQ(accepted, (std::vector<double>{22.0, 10.0}));
}

TEST(PlaceWorker, EmptyChunkKeepsInitial) {
  const Tiny x;
  const CostModel model(x.traffic, x.delay, x.demands, x.capacities, x.weights);
  const auto r = place_worker(model, Placement({0, 1, 0}, 2), {});
  EXPECT_EQ(r.placement, Placement({0, 1, 0}, 2));
  EXPECT_DOUBLE_EQ(r.cost.total, 28.0);
}

TEST(ParallelPlace, TinyAnyWorkerCount) {
  const Tiny x;
  for (std::size_t w : {1u, 2u, 3u, 8u}) {
    const auto r = parallel_place(x.traffic, x.delay, Placement({0, 1, 0}, 2), x.demands, x.capacities, w, x.weights);
    EXPECT_EQ(r.placement, Placement({1, 1, 0}, 2)) << w;
    EXPECT_DOUBLE_EQ(r.cost.total, 10.0);
  }
}

TEST(ParallelPlace, NoStressedPairsMeansNoMove) {
  const Tiny x;
  const auto r = parallel_place(TrafficStressGraph::zeros(3, 1.0), x.delay, Placement({0, 0, 1}, 2), x.demands,
                                x.capacities, 4, x.weights);
  EXPECT_EQ(r.placement, Placement({0, 0, 1}, 2));
}

// Properties over random instances: accepted costs strictly decrease,
// results never exceed the start, and costs recompute exactly.
TEST(ParallelPlace, MonotoneAndRecomputable) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 3 + rng() % 10;
    const std::size_t p = 2 + rng() % 5;
    const auto inst = trade::testing::random_instance(k, p, rng(), 0.5);
    CostWeights w;
    w.penalty_factor = default_penalty_factor(inst.traffic, inst.delay, inst.capacities);
    const CostModel model(inst.traffic, inst.delay, inst.demands, inst.capacities, w);
    const auto pairs = sort_pairs(inst.traffic);

    std::vector<double> accepted;
    const auto wr = place_worker(model, inst.initial, pairs, &accepted);
    for (std::size_t i = 1; i < accepted.size(); ++i) EXPECT_LT(accepted[i], accepted[i - 1]);

    const std::size_t workers = 1 + rng() % 6;
    const auto r = parallel_place(model, pairs, inst.initial, workers);
    const double start = model.evaluate(inst.initial).total;
    EXPECT_LE(r.cost.total, start);
    const double naive =
        trade::testing::naive_total(inst.traffic, inst.delay, r.placement, inst.demands, inst.capacities, w);
    EXPECT_NEAR(r.cost.total, naive, 1e-9 * std::max(1.0, naive));
    if (workers == 1) {
      EXPECT_EQ(r.placement, wr.placement);
    }
  }
}

TEST(ParallelPlace, SerialAndOpenMPAgreeExactly) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = trade::testing::random_instance(4 + rng() % 12, 2 + rng() % 6, rng());
    CostWeights w;
    w.penalty_factor = default_penalty_factor(inst.traffic, inst.delay, inst.capacities);
    for (std::size_t workers : {1u, 3u, 8u}) {
      SolveOptions serial{workers, 10, Execution::serial};
      SolveOptions omp{workers, 10, Execution::openmp};
      const auto a = solve_placement(inst.traffic, inst.delay, inst.initial, inst.demands, inst.capacities, w, serial);
      const auto b = solve_placement(inst.traffic, inst.delay, inst.initial, inst.demands, inst.capacities, w, omp);
      EXPECT_EQ(a.placement, b.placement);
      EXPECT_EQ(a.cost.total, b.cost.total);
      EXPECT_EQ(a.iterations, b.iterations);
    }
  }
}

TEST(SolvePlacement, RoundsBoundedAndNonIncreasing) {
  const auto inst = trade::testing::random_instance(12, 4, 3);
  CostWeights w;
  w.penalty_factor = default_penalty_factor(inst.traffic, inst.delay, inst.capacities);
  double previous = calc_cost(inst.traffic, inst.initial, inst.delay, inst.demands, inst.capacities, w).total;
  for (int rounds = 1; rounds <= 4; ++rounds) {
    const auto r = solve_placement(inst.traffic, inst.delay, inst.initial, inst.demands, inst.capacities, w,
                                   SolveOptions{2, rounds, Execution::serial});
    EXPECT_LE(r.iterations, rounds);
    EXPECT_LE(r.cost.total, previous);
    previous = r.cost.total;
  }
  EXPECT_THROW(solve_placement(inst.traffic, inst.delay, inst.initial, inst.demands, inst.capacities, w,
                               SolveOptions{0, 10, Execution::serial}),
               ArgumentError);
}

// Worker counts can change the path but not the optimum on a fixture whose
// best cost the oracle pins down.
TEST(SolvePlacement, WorkerCountsReachTheOracleCost) {
  const Tiny x;
  const auto best = brute_force_oracle(x.traffic, x.delay, x.demands, x.capacities, x.weights);
  for (std::size_t w : {1u, 4u}) {
    const auto r = solve_placement(x.traffic, x.delay, Placement({0, 1, 0}, 2), x.demands, x.capacities, x.weights,
                                   SolveOptions{w, 10, Execution::openmp});
    EXPECT_DOUBLE_EQ(r.cost.total, best.cost.total);
  }
}
