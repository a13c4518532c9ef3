#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace evograph {

using NodeId = std::uint32_t;
using FactorId = std::uint32_t;

/// Factor set and cumulative score attached to one friendship edge.
/// Factors are sorted ascending and unique; the set is never empty once the
/// edge is in a graph. Attributes are immutable after insertion.
struct EdgeAttr {
  std::vector<FactorId> factors;
  double score = 0.0;

  friend bool operator==(const EdgeAttr&, const EdgeAttr&) = default;
};

namespace detail {

inline std::uint64_t pair_key(NodeId u, NodeId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace detail

/// Undirected simple graph over dense node ids with an EdgeAttr per edge.
/// Nodes and edges are only ever added; attributes never change.
class SocialGraph {
 public:
  SocialGraph() = default;

  explicit SocialGraph(std::size_t node_count) { resize_nodes(node_count); }

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return attrs_.size(); }

  /// Adds one node; returns its id (= previous node count).
  NodeId add_node() {
    adjacency_.emplace_back();
    return static_cast<NodeId>(adjacency_.size() - 1);
  }

  void add_edge(NodeId u, NodeId v, EdgeAttr attr) {
    require_node(u);
    require_node(v);
    if (u == v)
      throw std::invalid_argument("add_edge: self-loop at node " +
                                  std::to_string(u));
    if (has_edge(u, v))
      throw std::invalid_argument("add_edge: edge (" + std::to_string(u) +
                                  "," + std::to_string(v) +
                                  ") already present");
    canonicalize(attr.factors);
    if (attr.factors.empty())
      throw std::invalid_argument("add_edge: empty factor set");
    if (attr.factors.front() == 0)
      throw std::invalid_argument("add_edge: factor ids must be positive");
    if (!(attr.score >= 0.0) || !std::isfinite(attr.score))
      throw std::invalid_argument("add_edge: score must be finite and >= 0");

    attrs_.emplace(detail::pair_key(u, v), std::move(attr));
    insert_sorted(adjacency_[u], v);
    insert_sorted(adjacency_[v], u);
  }

  bool has_edge(NodeId u, NodeId v) const {
    return attrs_.count(detail::pair_key(u, v)) != 0;
  }

  const EdgeAttr& edge_attr(NodeId u, NodeId v) const {
    auto it = attrs_.find(detail::pair_key(u, v));
    if (it == attrs_.end())
      throw std::out_of_range("edge_attr: no edge (" + std::to_string(u) +
                              "," + std::to_string(v) + ")");
    return it->second;
  }

  /// Neighbor ids, sorted ascending.
  const std::vector<NodeId>& neighbors(NodeId u) const {
    require_node(u);
    return adjacency_[u];
  }

  std::size_t degree(NodeId u) const { return neighbors(u).size(); }

  /// All w adjacent to both u and v, sorted ascending.
  std::vector<NodeId> common_neighbors(NodeId u, NodeId v) const {
    require_node(u);
    require_node(v);
    if (u == v)
      throw std::invalid_argument("common_neighbors: u == v");
    const auto& a = adjacency_[u];
    const auto& b = adjacency_[v];
    std::vector<NodeId> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out));
    return out;
  }

  /// Visits every edge as (u, v, attr) with u < v, pairs ascending.
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (NodeId u = 0; u < adjacency_.size(); ++u) {
      for (NodeId v : adjacency_[u]) {
        if (v <= u) continue;
        fn(u, v, attrs_.at(detail::pair_key(u, v)));
      }
    }
  }

  friend bool operator==(const SocialGraph& a, const SocialGraph& b) {
    return a.adjacency_.size() == b.adjacency_.size() && a.attrs_ == b.attrs_;
  }

 private:
  void resize_nodes(std::size_t n) { adjacency_.resize(n); }

  void require_node(NodeId u) const {
    if (u >= adjacency_.size())
      throw std::out_of_range("unknown node " + std::to_string(u));
  }

  static void canonicalize(std::vector<FactorId>& factors) {
    std::sort(factors.begin(), factors.end());
    factors.erase(std::unique(factors.begin(), factors.end()), factors.end());
  }

  static void insert_sorted(std::vector<NodeId>& list, NodeId value) {
    list.insert(std::lower_bound(list.begin(), list.end(), value), value);
  }

  std::vector<std::vector<NodeId>> adjacency_;        // sorted per node
  std::unordered_map<std::uint64_t, EdgeAttr> attrs_;  // key = (min,max) pair
};

}  // namespace evograph
