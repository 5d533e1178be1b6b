#pragma once

// Three services, two nodes, two cpu slots per node. a->b 10, b->c 4,
// a->c 1; every cross-node delay 2 ms; pf 1000.

#include <vector>

#include "trade/model.hpp"

namespace trade::testing {

struct Tiny {
  ResourceKindsPtr kinds = make_resource_kinds({"cpu"});
  TrafficStressGraph traffic{SquareMatrix(3, {0, 10, 1, 0, 0, 4, 0, 0, 0}), 1.0};
  DelayMatrix delay = DelayMatrix::constant(2, 2.0);
  std::vector<ResourceVector> demands{ResourceVector(kinds, {1}), ResourceVector(kinds, {1}),
                                      ResourceVector(kinds, {1})};
  std::vector<ResourceVector> capacities{ResourceVector(kinds, {2}), ResourceVector(kinds, {2})};
  CostWeights weights{0.5, 0.5, 1000.0};
};

}  // namespace trade::testing
