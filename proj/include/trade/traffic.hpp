#pragma once

// Turns cumulative mesh byte counters into a traffic stress graph and the
// descending list of stressed service pairs.

#include <cstddef>
#include <span>
#include <vector>

#include "trade/model.hpp"

namespace trade {

/// One scrape of the per-pair cumulative counters. `received_bytes_total`
/// counts request bytes, `sent_bytes_total` counts response bytes.
struct CounterSample {
  std::size_t upstream = 0;
  std::size_t downstream = 0;
  double sent_bytes_total = 0.0;
  double received_bytes_total = 0.0;
  double timestamp = 0.0;  // seconds
};

struct StressElement {
  std::size_t upstream = 0;
  std::size_t downstream = 0;
  double stress = 0.0;  // bytes/s

  bool operator==(const StressElement&) const = default;
};

using SortedPairs = std::vector<StressElement>;

/// Average of sent and received traffic over the window:
/// (delta_sent + delta_received) / (2 * dt).
/// Throws ArgumentError for dt <= 0 or mismatched pairs, CounterResetError
/// when either counter decreases.
double bi_traffic(const CounterSample& window_start, const CounterSample& window_end, double dt);

struct CounterReset {
  std::size_t upstream = 0;
  std::size_t downstream = 0;
  double timestamp = 0.0;  // sample at which the counter went backwards
};

struct StressGraphBuild {
  TrafficStressGraph graph;
  // Pairs whose counters restarted inside the window. Their delta counts the
  // post-restart value as traffic.
  std::vector<CounterReset> resets;
  // Pairs seen in a single sample only; they contribute zero stress.
  std::vector<std::pair<std::size_t, std::size_t>> single_sample_pairs;
};

/// Builds the k x k stress graph. Samples of one pair are ordered by
/// timestamp; the window delta is last minus first unless a counter went
/// backwards, in which case increases are summed piecewise with the
/// post-reset value counted from zero.
StressGraphBuild build_stress_graph(std::span<const CounterSample> samples, std::size_t num_services, double dt);

/// Every strictly positive cell, by stress descending then
/// (upstream, downstream) ascending.
SortedPairs sort_pairs(const TrafficStressGraph& graph);

}  // namespace trade
