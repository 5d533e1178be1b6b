#pragma once

// Path-tracking accessors for input files. Every failure is a
// ValidationError naming the offending field.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "trade/errors.hpp"
#include "trade/model.hpp"

namespace trade::detail {

using json = nlohmann::json;

inline std::string join_path(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

inline std::string index_path(const std::string& base, std::size_t i) { return fmt::format("{}[{}]", base, i); }

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(join_path(path, key), "missing");
  return *it;
}

inline const json* find(const json& obj, const std::string& key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

inline double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(path, "must be finite");
  return d;
}

inline double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
  const json* v = find(obj, key);
  return v ? as_number(*v, join_path(path, key)) : fallback;
}

inline std::uint64_t as_uint(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (v.is_number_integer() && v.get<std::int64_t>() < 0 && !v.is_number_unsigned())) {
    throw ValidationError(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

inline std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) throw ValidationError(path, "expected a string");
  return v.get<std::string>();
}

inline bool as_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) throw ValidationError(path, "expected true or false");
  return v.get<bool>();
}

inline const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw ValidationError(path, "expected an array");
  return v;
}

inline void check_schema_version(const json& root, int supported) {
  const json* v = find(root, "schema_version");
  if (!v) throw ValidationError("schema_version", "missing");
  if (!v->is_number_integer() || v->get<int>() != supported) {
    throw ValidationError("schema_version", fmt::format("unsupported version, expected {}", supported));
  }
}

inline void check_units(const json& obj, const std::string& path, const std::string& units) {
  const json* u = find(obj, "units");
  if (!u) throw ValidationError(join_path(path, "units"), fmt::format("missing (expected \"{}\")", units));
  if (as_string(*u, join_path(path, "units")) != units) {
    throw ValidationError(join_path(path, "units"), fmt::format("expected \"{}\"", units));
  }
}

/// {"dim": n, "units": "...", "data": [row-major n*n numbers]}
inline SquareMatrix parse_matrix(const json& obj, const std::string& path, const std::string& units,
                                 std::size_t expected_dim) {
  check_units(obj, path, units);
  const std::uint64_t dim = as_uint(require(obj, "dim", path), join_path(path, "dim"));
  if (dim != expected_dim) {
    throw ValidationError(join_path(path, "dim"), fmt::format("is {}, expected {}", dim, expected_dim));
  }
  const json& data = as_array(require(obj, "data", path), join_path(path, "data"));
  if (data.size() != dim * dim) {
    throw ValidationError(join_path(path, "data"),
                          fmt::format("has {} entries, a {}x{} matrix needs {}", data.size(), dim, dim, dim * dim));
  }
  std::vector<double> values;
  values.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double v = as_number(data[i], index_path(join_path(path, "data"), i));
    if (v < 0.0) throw ValidationError(index_path(join_path(path, "data"), i), "must be >= 0");
    values.push_back(v);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (values[i * dim + i] != 0.0) {
      throw ValidationError(index_path(join_path(path, "data"), i * dim + i), "diagonal entries must be 0");
    }
  }
  return SquareMatrix(dim, std::move(values));
}

inline ResourceKindsPtr parse_kinds(const json& root) {
  const json& arr = as_array(require(root, "resources", ""), "resources");
  if (arr.empty()) throw ValidationError("resources", "needs at least one kind");
  ResourceKinds kinds;
  for (std::size_t i = 0; i < arr.size(); ++i) kinds.push_back(as_string(arr[i], index_path("resources", i)));
  try {
    return make_resource_kinds(std::move(kinds));
  } catch (const Error& e) {
    throw ValidationError("resources", e.what());
  }
}

/// {"cpu": 1.5, ...}; kinds left out count as 0 unless `all_required`.
inline ResourceVector parse_resources(const json& obj, const std::string& path, const ResourceKindsPtr& kinds,
                                      bool all_required) {
  if (!obj.is_object()) throw ValidationError(path, "expected an object keyed by resource kind");
  std::vector<double> amounts(kinds->size(), 0.0);
  for (const auto& [key, value] : obj.items()) {
    auto it = std::find(kinds->begin(), kinds->end(), key);
    if (it == kinds->end()) throw ValidationError(join_path(path, key), "unknown resource kind");
    const double a = as_number(value, join_path(path, key));
    if (a < 0.0) throw ValidationError(join_path(path, key), "must be >= 0");
    amounts[static_cast<std::size_t>(it - kinds->begin())] = a;
  }
  if (all_required) {
    for (const auto& k : *kinds) {
      if (!obj.contains(k)) throw ValidationError(join_path(path, k), "missing");
    }
  }
  return ResourceVector(kinds, std::move(amounts));
}

class NameIndex {
 public:
  void add(const std::string& name, const std::string& path) {
    if (name.empty()) throw ValidationError(path, "must not be empty");
    if (!index_.emplace(name, names_.size()).second) throw ValidationError(path, fmt::format("duplicate '{}'", name));
    names_.push_back(name);
  }
  std::size_t lookup(const std::string& name, const std::string& path) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ValidationError(path, fmt::format("unknown name '{}'", name));
    return it->second;
  }
  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }

 private:
  std::map<std::string, std::size_t> index_;
  std::vector<std::string> names_;
};

inline std::vector<NodeSpec> parse_nodes(const json& root, const ResourceKindsPtr& kinds, NameIndex& names) {
  const json& arr = as_array(require(root, "nodes", ""), "nodes");
  if (arr.empty()) throw ValidationError("nodes", "at least one node is required");
  std::vector<NodeSpec> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = index_path("nodes", i);
    NodeSpec n;
    n.id.index = i;
    n.id.name = as_string(require(arr[i], "name", path), join_path(path, "name"));
    names.add(n.id.name, join_path(path, "name"));
    n.capacity = parse_resources(require(arr[i], "capacity", path), join_path(path, "capacity"), kinds, true);
    out.push_back(std::move(n));
  }
  return out;
}

inline std::vector<ServiceSpec> parse_services(const json& root, const ResourceKindsPtr& kinds, NameIndex& names) {
  const json& arr = as_array(require(root, "services", ""), "services");
  if (arr.empty()) throw ValidationError("services", "at least one service is required");
  std::vector<ServiceSpec> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = index_path("services", i);
    ServiceSpec s;
    s.id.index = i;
    s.id.name = as_string(require(arr[i], "name", path), join_path(path, "name"));
    names.add(s.id.name, join_path(path, "name"));
    const json* demand = find(arr[i], "demand");
    s.demand = demand ? parse_resources(*demand, join_path(path, "demand"), kinds, false) : ResourceVector::zeros(kinds);
    if (const json* m = find(arr[i], "migratable")) s.migratable = as_bool(*m, join_path(path, "migratable"));
    if (const json* r = find(arr[i], "replicas")) {
      const std::uint64_t reps = as_uint(*r, join_path(path, "replicas"));
      if (reps < 1) throw ValidationError(join_path(path, "replicas"), "must be >= 1");
      s.replicas = static_cast<int>(reps);
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Either an array of node names in service order or an object
/// {service: node}. Every service must be listed.
inline Placement parse_placement(const json& v, const std::string& path, const NameIndex& services,
                                 const NameIndex& nodes) {
  std::vector<std::size_t> a(services.size(), 0);
  if (v.is_array()) {
    if (v.size() != services.size()) {
      throw ValidationError(path, fmt::format("lists {} nodes for {} services", v.size(), services.size()));
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      a[i] = nodes.lookup(as_string(v[i], index_path(path, i)), index_path(path, i));
    }
  } else if (v.is_object()) {
    std::vector<bool> seen(services.size(), false);
    for (const auto& [svc, node] : v.items()) {
      const std::size_t s = services.lookup(svc, join_path(path, svc));
      a[s] = nodes.lookup(as_string(node, join_path(path, svc)), join_path(path, svc));
      seen[s] = true;
    }
    for (std::size_t s = 0; s < seen.size(); ++s) {
      if (!seen[s]) throw ValidationError(join_path(path, services.names()[s]), "missing");
    }
  } else {
    throw ValidationError(path, "expected an array or an object");
  }
  return Placement(std::move(a), nodes.size());
}

inline json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("", fmt::format("invalid JSON: {}", e.what()));
  }
}

}  // namespace trade::detail
