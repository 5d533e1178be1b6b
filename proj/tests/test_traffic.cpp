#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "trade/errors.hpp"
#include "trade/traffic.hpp"

using namespace trade;

namespace {

CounterSample sample(std::size_t u, std::size_t v, double sent, double recv, double t) {
  return {u, v, sent, recv, t};
}

}  // namespace

TEST(BiTraffic, AveragesBothDirections) {
  // (600 + 1800) / (2 * 60) = 20 bytes/s
  EXPECT_DOUBLE_EQ(bi_traffic(sample(0, 1, 100, 200, 0), sample(0, 1, 700, 2000, 60), 60.0), 20.0);
}

TEST(BiTraffic, Errors) {
  EXPECT_THROW(bi_traffic(sample(0, 1, 0, 0, 0), sample(0, 1, 1, 1, 1), 0.0), ArgumentError);
  EXPECT_THROW(bi_traffic(sample(0, 1, 0, 0, 0), sample(1, 0, 1, 1, 1), 1.0), ArgumentError);
  EXPECT_THROW(bi_traffic(sample(0, 1, 5, 0, 0), sample(0, 1, 4, 1, 1), 1.0), CounterResetError);
}

TEST(BuildStressGraph, ReceivedHeavyPairRanksByTotal) {
  // 40:1 received:sent pair against a balanced pair with more sent bytes.
  const std::vector<CounterSample> s{
      sample(0, 1, 0, 0, 0),    sample(0, 1, 1000, 40000, 10),
      sample(1, 2, 0, 0, 0),    sample(1, 2, 15000, 15000, 10),
  };
  const auto g = build_stress_graph(s, 3, 10.0).graph;
  EXPECT_DOUBLE_EQ(g(0, 1), 2050.0);
  EXPECT_DOUBLE_EQ(g(1, 2), 1500.0);
  const auto sorted = sort_pairs(g);
  ASSERT_EQ(sorted.size(), 2u);
  EXPECT_EQ(sorted[0].upstream, 0u);
  EXPECT_EQ(sorted[0].downstream, 1u);
}

TEST(BuildStressGraph, CounterResetCountsPostResetValue) {
  // 100 -> 300, reset, 50 -> 80: increases 200 + 50 + 30 on each counter.
  const std::vector<CounterSample> s{sample(0, 1, 100, 100, 0), sample(0, 1, 300, 300, 10),
                                     sample(0, 1, 50, 50, 20), sample(0, 1, 80, 80, 30)};
  const auto b = build_stress_graph(s, 2, 30.0);
  EXPECT_DOUBLE_EQ(b.graph(0, 1), 280.0 * 2 / 60.0);
  ASSERT_EQ(b.resets.size(), 1u);
  EXPECT_DOUBLE_EQ(b.resets[0].timestamp, 20.0);
}

TEST(BuildStressGraph, SingleSamplePairIsZeroAndReported) {
  const std::vector<CounterSample> s{sample(1, 0, 500, 500, 3)};
  const auto b = build_stress_graph(s, 2, 10.0);
  EXPECT_EQ(b.graph(1, 0), 0.0);
  ASSERT_EQ(b.single_sample_pairs.size(), 1u);
}

TEST(BuildStressGraph, Errors) {
  EXPECT_THROW(build_stress_graph(std::vector<CounterSample>{sample(0, 3, 0, 0, 0)}, 3, 1.0), StructuralError);
  EXPECT_THROW(build_stress_graph(std::vector<CounterSample>{sample(1, 1, 0, 0, 0)}, 3, 1.0), StructuralError);
  EXPECT_THROW(build_stress_graph(std::vector<CounterSample>{}, 3, 0.0), ArgumentError);
}

TEST(BuildStressGraph, EmptyDumpIsZero) {
  const auto b = build_stress_graph(std::vector<CounterSample>{}, 3, 5.0);
  EXPECT_EQ(b.graph.matrix().max(), 0.0);
  EXPECT_TRUE(sort_pairs(b.graph).empty());
}

TEST(SortPairs, TiesBreakByIndex) {
  const TrafficStressGraph g(SquareMatrix(3, {0, 5, 5, 5, 0, 0, 0, 7, 0}), 1.0);
  const auto s = sort_pairs(g);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s[0], (StressElement{2, 1, 7.0}));
  EXPECT_EQ(s[1], (StressElement{0, 1, 5.0}));
  EXPECT_EQ(s[2], (StressElement{0, 2, 5.0}));
  EXPECT_EQ(s[3], (StressElement{1, 0, 5.0}));
}

// Property: shuffled input order never changes the graph.
TEST(BuildStressGraph, InputOrderIrrelevant) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<CounterSample> s;
    for (std::size_t u = 0; u < 4; ++u) {
      for (std::size_t v = 0; v < 4; ++v) {
        if (u == v) continue;
        double sent = 0, recv = 0;
        for (int i = 0; i < 3; ++i) {
          sent += static_cast<double>(rng() % 1000);
          recv += static_cast<double>(rng() % 1000);
          s.push_back(sample(u, v, sent, recv, i * 5.0));
        }
      }
    }
    const auto a = build_stress_graph(s, 4, 10.0).graph;
    std::shuffle(s.begin(), s.end(), rng);
    const auto b = build_stress_graph(s, 4, 10.0).graph;
    EXPECT_EQ(a.matrix(), b.matrix());
  }
}
