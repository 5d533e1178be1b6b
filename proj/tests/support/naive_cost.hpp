#pragma once

// Straight transcription of the objective, kept separate from CostModel so
// tests compare two independent implementations.

#include <algorithm>
#include <span>
#include <vector>

#include "trade/model.hpp"

namespace trade::testing {

inline double naive_communication(const TrafficStressGraph& t, const DelayMatrix& d, const Placement& p,
                                  const CostWeights& w) {
  double c = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i == j) continue;
      c += w.forward * t(i, j) * d(p[i], p[j]) + w.backward * t(j, i) * d(p[j], p[i]);
    }
  }
  return c;
}

inline double naive_penalty(const Placement& p, std::span<const ResourceVector> demands,
                            std::span<const ResourceVector> caps, double pf) {
  double over = 0.0;
  for (std::size_t n = 0; n < caps.size(); ++n) {
    for (std::size_t r = 0; r < caps[n].size(); ++r) {
      double load = 0.0;
      for (std::size_t s = 0; s < p.size(); ++s) {
        if (p[s] == n) load += demands[s][r];
      }
      over += std::max(0.0, load - caps[n][r]);
    }
  }
  return pf * over;
}

inline double naive_total(const TrafficStressGraph& t, const DelayMatrix& d, const Placement& p,
                          std::span<const ResourceVector> demands, std::span<const ResourceVector> caps,
                          const CostWeights& w) {
  return naive_communication(t, d, p, w) + naive_penalty(p, demands, caps, w.penalty_factor);
}

/// Every placement of k services on p nodes, lexicographic order.
inline std::vector<Placement> all_placements(std::size_t k, std::size_t p) {
  std::vector<Placement> out;
  std::vector<std::size_t> a(k, 0);
  for (;;) {
    out.emplace_back(a, p);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++a[i] < p) break;
      a[i] = 0;
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

}  // namespace trade::testing
