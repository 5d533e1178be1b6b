#include "trade/model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "trade/errors.hpp"

namespace trade {

ResourceKindsPtr make_resource_kinds(ResourceKinds kinds) {
  auto sorted = kinds;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw StructuralError("duplicate resource kind");
  }
  return std::make_shared<const ResourceKinds>(std::move(kinds));
}

ResourceVector::ResourceVector(ResourceKindsPtr kinds, std::vector<double> amounts)
    : kinds_(std::move(kinds)), amounts_(std::move(amounts)) {
  if (!kinds_) throw StructuralError("resource vector without kind list");
  if (kinds_->size() != amounts_.size()) {
    throw StructuralError(fmt::format("resource vector has {} amounts for {} kinds", amounts_.size(),
                                      kinds_->size()));
  }
  for (std::size_t i = 0; i < amounts_.size(); ++i) {
    if (!std::isfinite(amounts_[i]) || amounts_[i] < 0.0) {
      throw StructuralError(fmt::format("resource '{}' amount {} must be a finite value >= 0",
                                        (*kinds_)[i], amounts_[i]));
    }
  }
}

ResourceVector ResourceVector::zeros(ResourceKindsPtr kinds) {
  const std::size_t n = kinds ? kinds->size() : 0;
  return ResourceVector(std::move(kinds), std::vector<double>(n, 0.0));
}

ResourceVector ResourceVector::scaled(double factor) const {
  auto out = amounts_;
  for (auto& a : out) a *= factor;
  return ResourceVector(kinds_, std::move(out));
}

bool ResourceVector::same_kinds(const ResourceVector& other) const {
  if (kinds_ == other.kinds_) return true;
  if (!kinds_ || !other.kinds_) return false;
  return *kinds_ == *other.kinds_;
}

namespace {

void require_same_kinds(const ResourceVector& a, const ResourceVector& b) {
  if (!a.same_kinds(b)) throw StructuralError("resource vectors use different kind lists");
}

}  // namespace

bool leq_elementwise(const ResourceVector& a, const ResourceVector& b) {
  require_same_kinds(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

ResourceVector add(const ResourceVector& a, const ResourceVector& b) {
  require_same_kinds(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return ResourceVector(a.kinds_ptr(), std::move(out));
}

void validate_service(const ServiceSpec& s) {
  if (s.replicas < 1) {
    throw StructuralError(fmt::format("service '{}' needs replicas >= 1", s.id.name));
  }
}

void validate_node(const NodeSpec& n) {
  if (!n.capacity.kinds_ptr()) {
    throw StructuralError(fmt::format("node '{}' has no capacity vector", n.id.name));
  }
}

SquareMatrix::SquareMatrix(std::size_t n, std::vector<double> row_major) : n_(n), data_(std::move(row_major)) {
  if (data_.size() != n * n) {
    throw StructuralError(fmt::format("matrix of dimension {} needs {} entries, got {}", n, n * n, data_.size()));
  }
}

double SquareMatrix::max() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, v);
  return m;
}

namespace {

void check_nonneg_zero_diag(const SquareMatrix& m, const char* what) {
  for (std::size_t r = 0; r < m.size(); ++r) {
    for (std::size_t c = 0; c < m.size(); ++c) {
      const double v = m(r, c);
      if (!std::isfinite(v) || v < 0.0) {
        throw StructuralError(fmt::format("{}[{}][{}] = {} must be finite and >= 0", what, r, c, v));
      }
      if (r == c && v != 0.0) {
        throw StructuralError(fmt::format("{}[{}][{}] = {} but the diagonal must be 0", what, r, c, v));
      }
    }
  }
}

}  // namespace

TrafficStressGraph::TrafficStressGraph(SquareMatrix stress, double window_s)
    : m_(std::move(stress)), window_s_(window_s) {
  if (!(window_s_ > 0.0)) throw StructuralError("stress graph window must be > 0 seconds");
  check_nonneg_zero_diag(m_, "traffic");
}

TrafficStressGraph TrafficStressGraph::zeros(std::size_t k, double window_s) {
  return TrafficStressGraph(SquareMatrix(k), window_s);
}

double TrafficStressGraph::degree(std::size_t u) const {
  double d = 0.0;
  for (std::size_t v = 0; v < size(); ++v) d += m_(u, v) + m_(v, u);
  return d;
}

DelayMatrix::DelayMatrix(SquareMatrix delays_ms) : m_(std::move(delays_ms)) {
  check_nonneg_zero_diag(m_, "delay");
}

DelayMatrix DelayMatrix::constant(std::size_t p, double off_diagonal_ms) {
  SquareMatrix m(p, off_diagonal_ms);
  for (std::size_t i = 0; i < p; ++i) m(i, i) = 0.0;
  return DelayMatrix(std::move(m));
}

Placement::Placement(std::vector<std::size_t> assignment, std::size_t num_nodes)
    : assignment_(std::move(assignment)), num_nodes_(num_nodes) {
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] >= num_nodes_) {
      throw StructuralError(
          fmt::format("placement assigns service {} to node {} but only {} nodes exist", i, assignment_[i], num_nodes_));
    }
  }
}

Placement Placement::with(std::size_t service, std::size_t node) const {
  if (service >= assignment_.size()) {
    throw StructuralError(fmt::format("service {} out of range for {} services", service, assignment_.size()));
  }
  auto a = assignment_;
  a[service] = node;
  return Placement(std::move(a), num_nodes_);
}

void validate_weights(const CostWeights& w) {
  if (!(w.forward >= 0.0 && w.forward <= 1.0) || !(w.backward >= 0.0 && w.backward <= 1.0)) {
    throw ArgumentError(fmt::format("direction weights ({}, {}) must lie in [0, 1]", w.forward, w.backward));
  }
  if (!(w.penalty_factor > 0.0) || !std::isfinite(w.penalty_factor)) {
    throw ArgumentError(fmt::format("penalty factor {} must be finite and > 0", w.penalty_factor));
  }
}

std::vector<ResourceVector> node_loads(const Placement& p, std::span<const ResourceVector> demands,
                                       const ResourceKindsPtr& kinds) {
  if (demands.size() != p.size()) {
    throw StructuralError(fmt::format("{} demands for {} placed services", demands.size(), p.size()));
  }
  std::vector<ResourceVector> loads(p.num_nodes(), ResourceVector::zeros(kinds));
  for (std::size_t s = 0; s < p.size(); ++s) loads[p[s]] = loads[p[s]] + demands[s];
  return loads;
}

}  // namespace trade
