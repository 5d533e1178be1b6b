#pragma once

// Shared domain types: resources, services, nodes, placements and the two
// square matrices (traffic stress, cross-node delay) every stage consumes.
//
// All types validate on construction and are immutable afterwards, so they
// can be shared freely between worker threads.

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace trade {

using ResourceKinds = std::vector<std::string>;
using ResourceKindsPtr = std::shared_ptr<const ResourceKinds>;

ResourceKindsPtr make_resource_kinds(ResourceKinds kinds);

/// Multi-dimensional demand or capacity. Every vector in one scenario points
/// at the same ordered kind list; comparisons are element-wise.
class ResourceVector {
 public:
  ResourceVector() = default;
  ResourceVector(ResourceKindsPtr kinds, std::vector<double> amounts);

  static ResourceVector zeros(ResourceKindsPtr kinds);

  const ResourceKinds& kinds() const { return *kinds_; }
  const ResourceKindsPtr& kinds_ptr() const { return kinds_; }
  std::span<const double> amounts() const { return amounts_; }
  std::size_t size() const { return amounts_.size(); }
  double operator[](std::size_t i) const { return amounts_[i]; }

  ResourceVector scaled(double factor) const;

  bool same_kinds(const ResourceVector& other) const;

 private:
  ResourceKindsPtr kinds_;
  std::vector<double> amounts_;
};

/// True iff every component of `a` is <= the matching component of `b`.
/// Throws StructuralError when the kind lists differ.
bool leq_elementwise(const ResourceVector& a, const ResourceVector& b);

ResourceVector add(const ResourceVector& a, const ResourceVector& b);
inline ResourceVector operator+(const ResourceVector& a, const ResourceVector& b) { return add(a, b); }

struct ServiceId {
  std::size_t index = 0;
  std::string name;
};

struct NodeId {
  std::size_t index = 0;
  std::string name;
};

struct ServiceSpec {
  ServiceId id;
  ResourceVector demand;
  bool migratable = true;
  int replicas = 1;

  // Replicas collapse into one logical service for placement.
  ResourceVector placement_demand() const { return demand.scaled(static_cast<double>(replicas)); }
};

struct NodeSpec {
  NodeId id;
  ResourceVector capacity;
};

void validate_service(const ServiceSpec& s);
void validate_node(const NodeSpec& n);

/// Dense row-major n x n matrix of doubles.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
  SquareMatrix(std::size_t n, std::vector<double> row_major);

  std::size_t size() const { return n_; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  std::span<const double> data() const { return data_; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * n_, n_}; }
  double max() const;

  bool operator==(const SquareMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// k x k stress (bytes/s) per ordered service pair: [u][v] is traffic
/// attributed to u calling v over a window of `window_s` seconds.
class TrafficStressGraph {
 public:
  TrafficStressGraph() = default;
  TrafficStressGraph(SquareMatrix stress, double window_s);

  static TrafficStressGraph zeros(std::size_t k, double window_s);

  std::size_t size() const { return m_.size(); }
  double window_s() const { return window_s_; }
  double operator()(std::size_t u, std::size_t v) const { return m_(u, v); }
  const SquareMatrix& matrix() const { return m_; }

  // Total stress exchanged by the unordered pair {u, v}.
  double pair_stress(std::size_t u, std::size_t v) const { return m_(u, v) + m_(v, u); }

  // Sum of stress on every pair touching u, in either direction.
  double degree(std::size_t u) const;

 private:
  SquareMatrix m_;
  double window_s_ = 1.0;
};

/// p x p one-way delays in milliseconds. Not necessarily symmetric.
class DelayMatrix {
 public:
  DelayMatrix() = default;
  explicit DelayMatrix(SquareMatrix delays_ms);

  static DelayMatrix zeros(std::size_t p) { return DelayMatrix(SquareMatrix(p)); }
  static DelayMatrix constant(std::size_t p, double off_diagonal_ms);

  std::size_t size() const { return m_.size(); }
  double operator()(std::size_t a, std::size_t b) const { return m_(a, b); }
  const SquareMatrix& matrix() const { return m_; }

  bool operator==(const DelayMatrix&) const = default;

 private:
  SquareMatrix m_;
};

/// Total service -> node map.
class Placement {
 public:
  Placement() = default;
  Placement(std::vector<std::size_t> assignment, std::size_t num_nodes);

  std::size_t size() const { return assignment_.size(); }
  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t operator[](std::size_t service) const { return assignment_[service]; }
  std::span<const std::size_t> assignment() const { return assignment_; }

  Placement with(std::size_t service, std::size_t node) const;

  bool operator==(const Placement& o) const { return assignment_ == o.assignment_; }
  auto operator<=>(const Placement& o) const { return assignment_ <=> o.assignment_; }

 private:
  std::vector<std::size_t> assignment_;
  std::size_t num_nodes_ = 0;
};

struct CostWeights {
  double forward = 0.5;   // w_f
  double backward = 0.5;  // w_b
  double penalty_factor = 1.0;
};

void validate_weights(const CostWeights& w);

/// Per-node aggregate load of a placement, one ResourceVector per node.
std::vector<ResourceVector> node_loads(const Placement& p, std::span<const ResourceVector> demands,
                                       const ResourceKindsPtr& kinds);

}  // namespace trade
