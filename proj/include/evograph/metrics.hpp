#pragma once

#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "evograph/graph.hpp"

namespace evograph::metrics {

/// Community assignment: one dense label per node.
struct Partition {
  std::vector<std::uint32_t> assignment;

  std::size_t community_count() const {
    std::uint32_t max_label = 0;
    if (assignment.empty()) return 0;
    for (std::uint32_t l : assignment)
      if (l > max_label) max_label = l;
    return max_label + 1;
  }
};

inline double density(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw std::invalid_argument("density: need at least 2 nodes");
  return static_cast<double>(g.edge_count()) /
         (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

/// Mean local clustering coefficient; nodes of degree < 2 contribute 0.
inline double avg_clustering(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    const auto& nb = g.neighbors(u);
    const std::size_t d = nb.size();
    if (d < 2) continue;
    std::size_t triangles = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (g.has_edge(nb[i], nb[j])) ++triangles;
    sum += 2.0 * static_cast<double>(triangles) /
           (static_cast<double>(d) * static_cast<double>(d - 1));
  }
  return sum / static_cast<double>(n);
}

struct ComponentResult {
  std::size_t count = 0;
  std::vector<std::uint32_t> labels;  // dense, by discovery order from node 0
};

inline ComponentResult connected_components(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  ComponentResult result;
  result.labels.assign(n, UINT32_MAX);
  for (NodeId start = 0; start < n; ++start) {
    if (result.labels[start] != UINT32_MAX) continue;
    const auto label = static_cast<std::uint32_t>(result.count++);
    std::queue<NodeId> frontier;
    frontier.push(start);
    result.labels[start] = label;
    while (!frontier.empty()) {
      const NodeId u = frontier.front();
      frontier.pop();
      for (NodeId v : g.neighbors(u)) {
        if (result.labels[v] != UINT32_MAX) continue;
        result.labels[v] = label;
        frontier.push(v);
      }
    }
  }
  return result;
}

/// Newman modularity Q = sum_c (e_c/m - (d_c/2m)^2).
inline double modularity(const SocialGraph& g, const Partition& part) {
  const std::size_t m = g.edge_count();
  if (m == 0) throw std::invalid_argument("modularity: graph has no edges");
  if (part.assignment.size() != g.node_count())
    throw std::invalid_argument("modularity: partition size mismatch");

  std::unordered_map<std::uint32_t, double> intra, degree_sum;
  g.for_each_edge([&](NodeId u, NodeId v, const EdgeAttr&) {
    degree_sum[part.assignment[u]] += 1.0;
    degree_sum[part.assignment[v]] += 1.0;
    if (part.assignment[u] == part.assignment[v])
      intra[part.assignment[u]] += 1.0;
  });

  const double dm = static_cast<double>(m);
  double q = 0.0;
  for (const auto& [label, d] : degree_sum) {
    const auto it = intra.find(label);
    const double e = it == intra.end() ? 0.0 : it->second;
    q += e / dm - (d / (2.0 * dm)) * (d / (2.0 * dm));
  }
  return q;
}

/// Greedy agglomerative modularity maximization (CNM-style). Starts from
/// singletons and repeatedly merges the connected community pair with the
/// largest modularity gain while a strictly positive gain exists; exact ties
/// go to the lexicographically smallest pair of community representatives
/// (a community is represented by its smallest member). Labels in the result
/// are dense, ordered by smallest member. Edgeless graphs come back as
/// singletons.
inline Partition greedy_communities(const SocialGraph& g) {
  const std::size_t n = g.node_count();
  const std::size_t m = g.edge_count();
  Partition part;
  part.assignment.resize(n);
  for (NodeId u = 0; u < n; ++u) part.assignment[u] = u;
  if (m == 0) return part;

  const double dm = static_cast<double>(m);
  std::vector<std::uint32_t> parent(n);
  std::vector<double> degree(n, 0.0);
  std::vector<std::unordered_map<std::uint32_t, double>> between(n);
  std::vector<char> alive(n, 1);
  for (NodeId u = 0; u < n; ++u) parent[u] = u;
  g.for_each_edge([&](NodeId u, NodeId v, const EdgeAttr&) {
    degree[u] += 1.0;
    degree[v] += 1.0;
    between[u][v] += 1.0;
    between[v][u] += 1.0;
  });

  const auto community_count = static_cast<std::uint32_t>(n);
  while (true) {
    double best_gain = 0.0;
    std::uint32_t best_a = 0, best_b = 0;
    bool found = false;
    for (std::uint32_t a = 0; a < community_count; ++a) {
      if (!alive[a]) continue;
      for (const auto& [b, weight] : between[a]) {
        if (b <= a) continue;
        const double gain = weight / dm - 2.0 * (degree[a] / (2.0 * dm)) *
                                              (degree[b] / (2.0 * dm));
        if (gain <= 0.0) continue;
        if (!found || gain > best_gain ||
            (gain == best_gain &&
             std::make_pair(a, b) < std::make_pair(best_a, best_b))) {
          found = true;
          best_gain = gain;
          best_a = a;
          best_b = b;
        }
      }
    }
    if (!found) break;

    // Merge best_b into best_a (best_a is the smaller representative).
    parent[best_b] = best_a;
    degree[best_a] += degree[best_b];
    for (const auto& [c, weight] : between[best_b]) {
      between[c].erase(best_b);
      if (c == best_a) continue;
      between[best_a][c] += weight;
      between[c][best_a] += weight;
    }
    between[best_b].clear();
    alive[best_b] = 0;
  }

  // Resolve representatives and relabel densely by smallest member.
  auto find_root = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  std::unordered_map<std::uint32_t, std::uint32_t> dense;
  for (NodeId u = 0; u < n; ++u) {
    const std::uint32_t root = find_root(u);
    const auto it =
        dense.emplace(root, static_cast<std::uint32_t>(dense.size())).first;
    part.assignment[u] = it->second;
  }

  // The stop rule guarantees no further positive-gain merge, which in
  // practice lands at Q >= 0; the one-community partition (Q = 0) is the
  // floor either way.
  if (modularity(g, part) < 0.0) {
    for (auto& label : part.assignment) label = 0;
  }
  return part;
}

inline std::map<std::size_t, std::size_t> degree_histogram(
    const SocialGraph& g) {
  std::map<std::size_t, std::size_t> hist;
  for (NodeId u = 0; u < g.node_count(); ++u) ++hist[g.degree(u)];
  return hist;
}

struct MetricsReport {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  double density = 0.0;
  double avg_clustering = 0.0;
  std::size_t component_count = 0;
  std::map<std::size_t, std::size_t> degree_histogram;
  double modularity = 0.0;
  std::size_t community_count = 0;
};

/// Full report over one graph. Throws for n < 2 (density undefined); an
/// edgeless graph reports modularity 0 over singleton communities.
inline MetricsReport compute_report(const SocialGraph& g) {
  MetricsReport report;
  report.node_count = g.node_count();
  report.edge_count = g.edge_count();
  report.density = density(g);
  report.avg_clustering = avg_clustering(g);
  report.component_count = connected_components(g).count;
  report.degree_histogram = degree_histogram(g);
  const Partition part = greedy_communities(g);
  report.community_count = part.community_count();
  report.modularity = g.edge_count() == 0 ? 0.0 : modularity(g, part);
  return report;
}

}  // namespace evograph::metrics
