#include <gtest/gtest.h>

#include <limits>

#include "trade/errors.hpp"
#include "trade/model.hpp"

using namespace trade;

namespace {

ResourceKindsPtr cpu_mem() { return make_resource_kinds({"cpu", "memory"}); }

}  // namespace

TEST(ResourceVector, RejectsNegativeAndNonFinite) {
  auto k = cpu_mem();
  EXPECT_THROW(ResourceVector(k, {-1.0, 0.0}), StructuralError);
  EXPECT_THROW(ResourceVector(k, {std::numeric_limits<double>::quiet_NaN(), 0.0}), StructuralError);
  EXPECT_THROW(ResourceVector(k, {1.0}), StructuralError);
  EXPECT_THROW(make_resource_kinds({"cpu", "cpu"}), StructuralError);
}

TEST(ResourceVector, ElementwiseCompare) {
  auto k = cpu_mem();
  const ResourceVector a(k, {1.0, 2.0});
  const ResourceVector b(k, {1.0, 3.0});
  EXPECT_TRUE(leq_elementwise(a, b));
  EXPECT_FALSE(leq_elementwise(b, a));
  EXPECT_TRUE(leq_elementwise(a, a));
  const ResourceVector sum = a + b;
  EXPECT_DOUBLE_EQ(sum[0], 2.0);
  EXPECT_DOUBLE_EQ(sum[1], 5.0);
}

TEST(ResourceVector, DifferentKindListsAreAnError) {
  const ResourceVector a(cpu_mem(), {1.0, 2.0});
  const ResourceVector same(cpu_mem(), {1.0, 2.0});  // equal names, separate list object
  EXPECT_TRUE(leq_elementwise(a, same));
  const ResourceVector b(make_resource_kinds({"memory", "cpu"}), {1.0, 2.0});
  EXPECT_THROW(leq_elementwise(a, b), StructuralError);
  EXPECT_THROW(a + b, StructuralError);
}

TEST(ServiceSpec, ReplicasScaleDemand) {
  auto k = cpu_mem();
  ServiceSpec s{{0, "a"}, ResourceVector(k, {0.5, 1.0}), true, 3};
  EXPECT_DOUBLE_EQ(s.placement_demand()[0], 1.5);
  s.replicas = 0;
  EXPECT_THROW(validate_service(s), StructuralError);
}

TEST(Placement, EntriesMustNameExistingNodes) {
  EXPECT_NO_THROW(Placement({0, 1, 1}, 2));
  EXPECT_THROW(Placement({0, 2}, 2), StructuralError);
  const Placement p({0, 1, 0}, 2);
  const Placement q = p.with(2, 1);
  EXPECT_EQ(q[2], 1u);
  EXPECT_EQ(p[2], 0u);
  EXPECT_LT(p, q);
  EXPECT_THROW(p.with(3, 0), StructuralError);
}

TEST(Matrices, StressGraphValidation) {
  EXPECT_THROW(SquareMatrix(2, std::vector<double>{0, 1, 2}), StructuralError);
  EXPECT_THROW(TrafficStressGraph(SquareMatrix(2, {0, -1, 0, 0}), 1.0), StructuralError);
  EXPECT_THROW(TrafficStressGraph(SquareMatrix(2, {1, 0, 0, 0}), 1.0), StructuralError);
  EXPECT_THROW(TrafficStressGraph(SquareMatrix(2), 0.0), StructuralError);
  EXPECT_THROW(DelayMatrix(SquareMatrix(2, {0, 1, 1, 5})), StructuralError);
}

TEST(Matrices, DegreeAndPairStress) {
  const TrafficStressGraph g(SquareMatrix(3, {0, 10, 1, 0, 0, 4, 2, 0, 0}), 1.0);
  EXPECT_DOUBLE_EQ(g.pair_stress(0, 2), 3.0);
  EXPECT_DOUBLE_EQ(g.degree(0), 13.0);
  EXPECT_DOUBLE_EQ(g.degree(1), 14.0);
  EXPECT_DOUBLE_EQ(g.degree(2), 7.0);
}

TEST(Matrices, ConstantDelayHasZeroDiagonal) {
  const DelayMatrix d = DelayMatrix::constant(3, 0.5);
  EXPECT_EQ(d(1, 1), 0.0);
  EXPECT_EQ(d(0, 2), 0.5);
}

TEST(Weights, Validation) {
  EXPECT_NO_THROW(validate_weights(CostWeights{}));
  EXPECT_THROW(validate_weights(CostWeights{1.5, 0.5, 1.0}), ArgumentError);
  EXPECT_THROW(validate_weights(CostWeights{0.5, 0.5, 0.0}), ArgumentError);
}

TEST(NodeLoads, SumsPerNode) {
  auto k = make_resource_kinds({"cpu"});
  const std::vector<ResourceVector> d{ResourceVector(k, {1}), ResourceVector(k, {2}), ResourceVector(k, {4})};
  const auto loads = node_loads(Placement({1, 0, 1}, 3), d, k);
  ASSERT_EQ(loads.size(), 3u);
  EXPECT_DOUBLE_EQ(loads[0][0], 2.0);
  EXPECT_DOUBLE_EQ(loads[1][0], 5.0);
  EXPECT_DOUBLE_EQ(loads[2][0], 0.0);
}
