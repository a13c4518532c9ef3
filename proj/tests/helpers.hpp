#pragma once

// Shared test utilities: brute-force oracles and trace invariant checks kept
// deliberately independent of the engine's own data structures.

#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "evograph/engine.hpp"
#include "evograph/graph.hpp"
#include "evograph/rng.hpp"
#include "evograph/scoring.hpp"

namespace test_helpers {

using evograph::EdgeAttr;
using evograph::EvolutionTrace;
using evograph::NodeId;
using evograph::SocialGraph;

using PairSet = std::set<std::pair<NodeId, NodeId>>;

inline PairSet edge_pairs(const SocialGraph& g) {
  PairSet pairs;
  g.for_each_edge([&](NodeId u, NodeId v, const EdgeAttr&) {
    pairs.emplace(u, v);
  });
  return pairs;
}

/// Brute-force expectation for p=1, t=0 runs over identical shared-factor
/// attrs: the clique completion of every connected component of g0. Uses its
/// own depth-first traversal so it shares nothing with the engine.
inline PairSet closure_oracle(const SocialGraph& g0) {
  const std::size_t n = g0.node_count();
  std::vector<int> component(n, -1);
  int components = 0;
  for (NodeId start = 0; start < n; ++start) {
    if (component[start] != -1) continue;
    std::vector<NodeId> stack{start};
    component[start] = components;
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      for (NodeId v : g0.neighbors(u)) {
        if (component[v] != -1) continue;
        component[v] = components;
        stack.push_back(v);
      }
    }
    ++components;
  }
  PairSet expected;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (component[u] == component[v]) expected.emplace(u, v);
  return expected;
}

/// Random graph in which every edge carries the same attr, so the closure
/// oracle applies.
inline SocialGraph random_identical_attr_graph(std::size_t n, std::size_t m,
                                               std::uint64_t seed,
                                               EdgeAttr attr = EdgeAttr{
                                                   {1, 2}, 4.0}) {
  evograph::Xoshiro256StarStar rng(seed);
  SocialGraph g(n);
  std::size_t placed = 0;
  std::size_t tries = 0;
  while (placed < m && tries < 50 * m + 100) {
    ++tries;
    const NodeId u = static_cast<NodeId>(rng.uniform_u64(0, n - 1));
    const NodeId v = static_cast<NodeId>(rng.uniform_u64(0, n - 1));
    if (u == v || g.has_edge(u, v)) continue;
    g.add_edge(u, v, attr);
    ++placed;
  }
  return g;
}

/// Snapshot nesting plus attr immutability: every edge, once present, exists
/// in all later snapshots with a bit-identical attr.
inline void check_monotone_and_immutable(const EvolutionTrace& trace) {
  for (std::size_t i = 1; i < trace.snapshots.size(); ++i) {
    const SocialGraph& prev = trace.snapshots[i - 1];
    const SocialGraph& next = trace.snapshots[i];
    if (prev.node_count() > next.node_count())
      throw std::logic_error("node count decreased");
    bool ok = true;
    prev.for_each_edge([&](NodeId u, NodeId v, const EdgeAttr& attr) {
      if (!next.has_edge(u, v) || !(next.edge_attr(u, v) == attr)) ok = false;
    });
    if (!ok) throw std::logic_error("snapshot nesting/immutability violated");
  }
}

/// Every added edge must be justified by its recorded witness against the
/// sweep-start graph: both incident edges present, the candidate absent, the
/// recorded attr equal to the recomputed one, and the score above threshold.
inline void check_witness_justification(const EvolutionTrace& trace) {
  const auto produced = evograph::sweep_snapshot_indices(trace);
  if (produced.size() != trace.reports.size())
    throw std::logic_error("report/snapshot bookkeeping out of sync");
  for (std::size_t k = 0; k < trace.reports.size(); ++k) {
    const SocialGraph& start = trace.snapshots[produced[k] - 1];
    for (const evograph::AddedEdge& e : trace.reports[k].added) {
      if (start.has_edge(e.u, e.v))
        throw std::logic_error("added edge already present at sweep start");
      if (!start.has_edge(e.u, e.witness) || !start.has_edge(e.witness, e.v))
        throw std::logic_error("witness edges missing at sweep start");
      const auto score = evograph::cumulative_score(
          start.edge_attr(e.u, e.witness), start.edge_attr(e.witness, e.v),
          trace.params.mean);
      if (score.score != e.attr.score)
        throw std::logic_error("recorded score differs from recomputation");
      if (!(score.score > trace.params.threshold))
        throw std::logic_error("added edge does not clear the threshold");
      const auto factors =
          evograph::common_factors(start.edge_attr(e.u, e.witness),
                                   start.edge_attr(e.witness, e.v));
      if (factors != e.attr.factors)
        throw std::logic_error("recorded factors differ from recomputation");
    }
  }
}

}  // namespace test_helpers
