#include "trade/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "trade/errors.hpp"

namespace trade {

double bi_traffic(const CounterSample& window_start, const CounterSample& window_end, double dt) {
  if (!(dt > 0.0)) throw ArgumentError(fmt::format("window length {} must be > 0", dt));
  if (window_start.upstream != window_end.upstream || window_start.downstream != window_end.downstream) {
    throw ArgumentError("window samples refer to different service pairs");
  }
  const double d_sent = window_end.sent_bytes_total - window_start.sent_bytes_total;
  const double d_recv = window_end.received_bytes_total - window_start.received_bytes_total;
  if (d_sent < 0.0 || d_recv < 0.0) {
    throw CounterResetError(fmt::format("counter for pair ({}, {}) decreased between t={} and t={}",
                                        window_start.upstream, window_start.downstream, window_start.timestamp,
                                        window_end.timestamp));
  }
  return (d_sent + d_recv) / (2.0 * dt);
}

StressGraphBuild build_stress_graph(std::span<const CounterSample> samples, std::size_t num_services, double dt) {
  if (!(dt > 0.0)) throw ArgumentError(fmt::format("window length {} must be > 0", dt));

  std::map<std::pair<std::size_t, std::size_t>, std::vector<const CounterSample*>> by_pair;
  for (const auto& s : samples) {
    if (s.upstream >= num_services || s.downstream >= num_services) {
      throw StructuralError(fmt::format("sample references service ({}, {}) outside {} services", s.upstream,
                                        s.downstream, num_services));
    }
    if (s.upstream == s.downstream) {
      throw StructuralError(fmt::format("sample pairs service {} with itself", s.upstream));
    }
    by_pair[{s.upstream, s.downstream}].push_back(&s);
  }

  StressGraphBuild out;
  SquareMatrix m(num_services);
  for (auto& [pair, list] : by_pair) {
    std::stable_sort(list.begin(), list.end(),
                     [](const CounterSample* a, const CounterSample* b) { return a->timestamp < b->timestamp; });
    if (list.size() < 2) {
      out.single_sample_pairs.push_back(pair);
      continue;
    }
    const CounterSample& first = *list.front();
    const CounterSample& last = *list.back();
    try {
      m(pair.first, pair.second) = bi_traffic(first, last, dt);
      // A reset and re-growth past the start value still shows up as a
      // non-monotone step somewhere inside the list.
      bool monotone = true;
      for (std::size_t i = 1; i < list.size() && monotone; ++i) {
        monotone = list[i]->sent_bytes_total >= list[i - 1]->sent_bytes_total &&
                   list[i]->received_bytes_total >= list[i - 1]->received_bytes_total;
      }
      if (monotone) continue;
    } catch (const CounterResetError&) {
    }

    double d_sent = 0.0;
    double d_recv = 0.0;
    for (std::size_t i = 1; i < list.size(); ++i) {
      const auto& prev = *list[i - 1];
      const auto& cur = *list[i];
      const bool sent_reset = cur.sent_bytes_total < prev.sent_bytes_total;
      const bool recv_reset = cur.received_bytes_total < prev.received_bytes_total;
      d_sent += sent_reset ? cur.sent_bytes_total : cur.sent_bytes_total - prev.sent_bytes_total;
      d_recv += recv_reset ? cur.received_bytes_total : cur.received_bytes_total - prev.received_bytes_total;
      if (sent_reset || recv_reset) out.resets.push_back({pair.first, pair.second, cur.timestamp});
    }
    m(pair.first, pair.second) = (d_sent + d_recv) / (2.0 * dt);
  }
  out.graph = TrafficStressGraph(std::move(m), dt);
  return out;
}

SortedPairs sort_pairs(const TrafficStressGraph& graph) {
  SortedPairs pairs;
  for (std::size_t u = 0; u < graph.size(); ++u) {
    for (std::size_t v = 0; v < graph.size(); ++v) {
      if (graph(u, v) > 0.0) pairs.push_back({u, v, graph(u, v)});
    }
  }
  // Row-major collection already orders ties by (upstream, downstream).
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const StressElement& a, const StressElement& b) { return a.stress > b.stress; });
  return pairs;
}

}  // namespace trade
