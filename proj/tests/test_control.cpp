#include <gtest/gtest.h>

#include <random>

#include "trade/control.hpp"
#include "trade/errors.hpp"

using namespace trade;

namespace {

std::vector<ServiceSpec> services(std::size_t k, std::vector<std::size_t> pinned = {}) {
  auto kinds = make_resource_kinds({"cpu"});
  std::vector<ServiceSpec> out;
  for (std::size_t i = 0; i < k; ++i) {
    const bool mig = std::find(pinned.begin(), pinned.end(), i) == pinned.end();
    out.push_back({{i, "s" + std::to_string(i)}, ResourceVector(kinds, {1.0}), mig, 1});
  }
  return out;
}

std::vector<NodeSpec> nodes(std::size_t p, const ResourceKindsPtr& kinds, double cap) {
  std::vector<NodeSpec> out;
  for (std::size_t i = 0; i < p; ++i) out.push_back({{i, "n" + std::to_string(i)}, ResourceVector(kinds, {cap})});
  return out;
}

}  // namespace

TEST(Trigger, TruthTable) {
  const QoSConfig cfg;  // 300 ms
  auto d = evaluate_trigger({30000, 120}, cfg);
  EXPECT_FALSE(d.triggered);
  EXPECT_DOUBLE_EQ(*d.observed_mean_ms, 250.0);
  EXPECT_EQ(d.reason, TriggerReason::below_target);

  d = evaluate_trigger({36120, 120}, cfg);
  EXPECT_TRUE(d.triggered);
  EXPECT_DOUBLE_EQ(*d.observed_mean_ms, 301.0);
  EXPECT_EQ(d.reason, TriggerReason::above_target);

  d = evaluate_trigger({0, 0}, cfg);
  EXPECT_FALSE(d.triggered);
  EXPECT_FALSE(d.observed_mean_ms.has_value());
  EXPECT_EQ(d.reason, TriggerReason::no_data);

  d = evaluate_trigger({36000, 120}, cfg);  // exactly at target
  EXPECT_FALSE(d.triggered);
}

TEST(Trigger, MonotoneInTarget) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const LatencyWindow w{u(rng) * 1e5, std::floor(u(rng) * 300)};
    QoSConfig lo;
    lo.target_ms = 1 + u(rng) * 600;
    QoSConfig hi = lo;
    hi.target_ms += u(rng) * 300;
    if (!evaluate_trigger(w, lo).triggered) EXPECT_FALSE(evaluate_trigger(w, hi).triggered);
  }
}

TEST(Qos, Validation) {
  EXPECT_THROW(validate_qos(QoSConfig{0, 30, 60}), ArgumentError);
  EXPECT_THROW(validate_qos(QoSConfig{300, 0, 60}), ArgumentError);
  EXPECT_THROW(validate_qos(QoSConfig{300, 30, -1}), ArgumentError);
  EXPECT_NO_THROW(validate_qos(QoSConfig{300, 30, 10}));  // warns only
}

TEST(FilterPlacement, Basics) {
  const auto svc = services(3, {2});
  EXPECT_TRUE(filter_placement(Placement({0, 1, 0}, 2), Placement({0, 1, 0}, 2), svc).plan.empty());

  const auto one = filter_placement(Placement({0, 1, 0}, 2), Placement({0, 0, 0}, 2), svc);
  ASSERT_EQ(one.plan.size(), 1u);
  EXPECT_EQ(one.plan.steps[0].service, 1u);
  EXPECT_EQ(one.plan.steps[0].from, 1u);
  EXPECT_EQ(one.plan.steps[0].to, 0u);

  const auto pinned = filter_placement(Placement({0, 1, 0}, 2), Placement({0, 1, 1}, 2), svc);
  EXPECT_TRUE(pinned.plan.empty());
  EXPECT_EQ(pinned.pinned, (std::vector<std::size_t>{2}));
  EXPECT_THROW(filter_placement(Placement({0, 1}, 2), Placement({0, 1, 1}, 2), svc), StructuralError);
}

TEST(FilterPlacement, OrderedByStressDegreeThenIndex) {
  const TrafficStressGraph g(SquareMatrix(4, {0, 1, 0, 0, 0, 0, 0, 0, 0, 9, 0, 0, 1, 0, 0, 0}), 1.0);
  // degrees: s0 2, s1 10, s2 9, s3 1
  const auto r = filter_placement(Placement({0, 0, 0, 0}, 2), Placement({1, 1, 1, 1}, 2), services(4), &g);
  std::vector<std::size_t> order;
  for (const auto& s : r.plan.steps) order.push_back(s.service);
  EXPECT_EQ(order, (std::vector<std::size_t>{1, 2, 0, 3}));
  const auto flat = filter_placement(Placement({0, 0, 0}, 2), Placement({1, 1, 1}, 2), services(3));
  EXPECT_EQ(flat.plan.steps[0].service, 0u);
  EXPECT_EQ(flat.plan.steps[2].service, 2u);
}

TEST(Policy, Names) {
  EXPECT_EQ(parse_policy("trade"), Policy::trade);
  EXPECT_EQ(to_string(Policy::netmarks), "netmarks");
  EXPECT_THROW(parse_policy("random"), ArgumentError);
}

namespace {

// Two chatty services split over two nodes; everything fits on one node.
struct LoopFixture {
  std::vector<ServiceSpec> svc = services(3, {2});
  std::vector<NodeSpec> nd = nodes(2, svc[0].demand.kinds_ptr(), 4.0);
  TrafficStressGraph graph{SquareMatrix(3, {0, 100, 0, 0, 0, 0, 50, 0, 0}), 60.0};
  DelayMatrix delay = DelayMatrix::constant(2, 10.0);
  int graph_reads = 0;

  PollContext ctx(double t, double mean, Placement current) {
    PollContext c;
    c.time_s = t;
    c.window = {mean * 10, 10};
    c.current = std::move(current);
    c.stress_graph = [this] {
      ++graph_reads;
      return graph;
    };
    c.measured_delays = [this] { return delay; };
    return c;
  }
};

}  // namespace

TEST(ControlLoop, DefaultPolicyNeverMigrates) {
  LoopFixture f;
  ControlLoop loop(Policy::kdefault, ControlConfig{}, f.svc, f.nd);
  const auto d = loop.on_poll(f.ctx(30, 900, Placement({0, 1, 1}, 2)));
  EXPECT_TRUE(d.trigger.triggered);
  EXPECT_FALSE(d.policy_ran);
  EXPECT_TRUE(d.plan.empty());
  EXPECT_EQ(f.graph_reads, 0);
}

TEST(ControlLoop, TradeMovesChattyPairAndCoolsDown) {
  LoopFixture f;
  ControlLoop loop(Policy::trade, ControlConfig{}, f.svc, f.nd);
  EXPECT_TRUE(loop.on_poll(f.ctx(30, 100, Placement({0, 1, 1}, 2))).plan.empty());
  EXPECT_EQ(f.graph_reads, 0);  // below target: nothing read

  const auto d = loop.on_poll(f.ctx(60, 900, Placement({0, 1, 1}, 2)));
  ASSERT_TRUE(d.policy_ran);
  ASSERT_TRUE(d.cost_after.has_value());
  EXPECT_LT(d.cost_after->total, d.cost_before->total);
  for (const auto& s : d.plan.steps) EXPECT_NE(s.service, 2u);
  EXPECT_FALSE(d.plan.empty());

  // Cooldown of one window (60 s): polls at 90 are suppressed, 120 is not.
  const auto quiet = loop.on_poll(f.ctx(90, 900, Placement({0, 1, 1}, 2)));
  EXPECT_TRUE(quiet.suppressed);
  EXPECT_TRUE(quiet.plan.empty());
  EXPECT_FALSE(loop.on_poll(f.ctx(120, 900, Placement({0, 1, 1}, 2))).suppressed);
}

TEST(ControlLoop, BusyServicesAreSkipped) {
  LoopFixture f;
  ControlLoop loop(Policy::trade, ControlConfig{}, f.svc, f.nd);
  auto c = f.ctx(30, 900, Placement({0, 1, 1}, 2));
  c.busy = [](std::size_t) { return true; };
  const auto d = loop.on_poll(c);
  EXPECT_TRUE(d.plan.empty());
  EXPECT_FALSE(d.skipped_busy.empty());
  // Nothing executed, so no cooldown.
  EXPECT_FALSE(loop.on_poll(f.ctx(60, 900, Placement({0, 1, 1}, 2))).suppressed);
}

TEST(ControlLoop, NetmarksColocatesWithHeaviestPeer) {
  LoopFixture f;
  ControlLoop loop(Policy::netmarks, ControlConfig{}, f.svc, f.nd);
  const auto d = loop.on_poll(f.ctx(30, 900, Placement({0, 1, 1}, 2)));
  ASSERT_TRUE(d.policy_ran);
  ASSERT_EQ(d.plan.size(), 1u);
  // s0 is the first target and joins s1 and s2 on node 1.
  EXPECT_EQ(d.plan.steps[0].service, 0u);
  EXPECT_EQ(d.plan.steps[0].to, 1u);
}

// Property: random proposals never put a pinned service in a plan.
TEST(ControlLoop, PinnedNeverInPlan) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng() % 10;
    std::vector<std::size_t> pinned;
    for (std::size_t s = 0; s < k; ++s) {
      if (rng() % 3 == 0) pinned.push_back(s);
    }
    const auto svc = services(k, pinned);
    std::vector<std::size_t> a(k), b(k);
    for (std::size_t s = 0; s < k; ++s) {
      a[s] = rng() % 4;
      b[s] = rng() % 4;
    }
    const auto r = filter_placement(Placement(a, 4), Placement(b, 4), svc);
    for (const auto& st : r.plan.steps) {
      EXPECT_TRUE(svc[st.service].migratable);
      EXPECT_NE(st.from, st.to);
    }
    std::size_t changed = 0;
    for (std::size_t s = 0; s < k; ++s) changed += a[s] != b[s];
    EXPECT_EQ(r.plan.size() + r.pinned.size(), changed);
  }
}
