#pragma once

// Seeded random placement instances shared by tests, the acceptance binary
// and the benchmark.

#include <cstdint>
#include <random>
#include <vector>

#include "trade/baselines.hpp"
#include "trade/model.hpp"

namespace trade::testing {

struct Instance {
  ResourceKindsPtr kinds;
  std::vector<ServiceSpec> services;
  std::vector<NodeSpec> nodes;
  TrafficStressGraph traffic;
  DelayMatrix delay;
  Placement initial;
  std::vector<ResourceVector> demands;
  std::vector<ResourceVector> capacities;
};

/// Dense T in [0, max_stress), D in [0.2, max_delay) off the diagonal, one
/// cpu demand per service in [0.1, 1) and node capacities with 50% headroom
/// over an even split, so the default spread is always feasible.
inline Instance random_instance(std::size_t k, std::size_t p, std::uint64_t seed, double density = 1.0,
                                double max_stress = 1000.0, double max_delay = 10.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Instance inst;
  inst.kinds = make_resource_kinds({"cpu"});

  SquareMatrix t(k);
  for (std::size_t u = 0; u < k; ++u) {
    for (std::size_t v = 0; v < k; ++v) {
      if (u != v && unit(rng) < density) t(u, v) = unit(rng) * max_stress;
    }
  }
  SquareMatrix d(p);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      if (a != b) d(a, b) = 0.2 + unit(rng) * (max_delay - 0.2);
    }
  }
  inst.traffic = TrafficStressGraph(t, 1.0);
  inst.delay = DelayMatrix(d);

  double total = 0.0;
  double largest = 0.0;
  for (std::size_t s = 0; s < k; ++s) {
    ServiceSpec spec;
    spec.id = {s, "s" + std::to_string(s)};
    const double cpu = 0.1 + 0.9 * unit(rng);
    spec.demand = ResourceVector(inst.kinds, {cpu});
    total += cpu;
    largest = std::max(largest, cpu);
    inst.services.push_back(spec);
    inst.demands.push_back(spec.demand);
  }
  const double cap = 1.5 * total / static_cast<double>(p) + largest;
  for (std::size_t n = 0; n < p; ++n) {
    NodeSpec node;
    node.id = {n, "n" + std::to_string(n)};
    node.capacity = ResourceVector(inst.kinds, {cap});
    inst.nodes.push_back(node);
    inst.capacities.push_back(node.capacity);
  }
  inst.initial = default_spread(inst.services, inst.nodes);
  return inst;
}

}  // namespace trade::testing
