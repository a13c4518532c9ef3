#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "evograph/generate.hpp"
#include "evograph/graph.hpp"
#include "evograph/rng.hpp"
#include "evograph/scoring.hpp"

namespace evograph {

/// Whether a pair whose coin came up tails may be recommended again in a
/// later sweep (Retry) or is skipped for the rest of the run (Permanent).
enum class RejectionPolicy { Retry, Permanent };

inline const char* to_string(RejectionPolicy p) {
  return p == RejectionPolicy::Retry ? "retry" : "permanent";
}

struct EvolutionParams {
  double threshold = 6.0;
  double accept_prob = 0.5;
  MeanKind mean = MeanKind::Arithmetic;
  RejectionPolicy policy = RejectionPolicy::Retry;
  std::optional<std::uint64_t> max_sweeps;  // unset: 10 * node count
  std::uint64_t seed = 0;
};

inline void validate(const EvolutionParams& params) {
  if (!(params.accept_prob >= 0.0 && params.accept_prob <= 1.0))
    throw std::invalid_argument("accept_prob must be in [0, 1]");
  if (!(params.threshold >= 0.0))
    throw std::invalid_argument(
        "threshold must be >= 0 (a zero-score witness has an empty common "
        "factor set, which no edge may carry)");
  if (params.max_sweeps && *params.max_sweeps < 1)
    throw std::invalid_argument("max_sweeps must be >= 1");
}

inline std::uint64_t effective_max_sweeps(const EvolutionParams& params,
                                          std::size_t node_count) {
  if (params.max_sweeps) return *params.max_sweeps;
  const std::uint64_t safety = 10 * static_cast<std::uint64_t>(node_count);
  return safety < 1 ? 1 : safety;
}

struct AddedEdge {
  NodeId u = 0;
  NodeId v = 0;
  EdgeAttr attr;
  NodeId witness = 0;

  friend bool operator==(const AddedEdge&, const AddedEdge&) = default;
};

struct SweepReport {
  std::size_t sweep_index = 0;
  std::size_t candidates_evaluated = 0;
  std::vector<AddedEdge> added;
  std::vector<std::pair<NodeId, NodeId>> rejected_by_coin;
  std::size_t below_threshold = 0;

  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

/// One growth burst of the iterative process: the snapshot it produced and
/// what it added.
struct GrowthBurst {
  std::size_t snapshot_index = 0;
  std::size_t nodes_added = 0;
  std::size_t edges_added = 0;
};

/// Full run record: G_0 ... G_k plus one report per sweep. Snapshots are
/// nested (edges are only ever added) and persisted attrs never change.
/// For iterative runs, phase_starts[i] is the snapshot index opening the
/// i-th evolution phase and growth[i] describes the burst that followed it;
/// plain evolve leaves phase_starts = {0} and growth empty.
struct EvolutionTrace {
  std::vector<SocialGraph> snapshots;
  std::vector<SweepReport> reports;
  EvolutionParams params;
  bool truncated = false;
  std::vector<std::size_t> phase_starts{0};
  std::vector<GrowthBurst> growth;

  const SocialGraph& initial() const { return snapshots.front(); }
  const SocialGraph& final_graph() const { return snapshots.back(); }
};

/// Index of the snapshot each sweep produced, in report order. Growth-burst
/// snapshots are skipped: snapshot j is burst output if some
/// growth[i].snapshot_index == j, otherwise it was committed by a sweep.
inline std::vector<std::size_t> sweep_snapshot_indices(
    const EvolutionTrace& trace) {
  std::unordered_set<std::size_t> burst;
  for (const GrowthBurst& b : trace.growth) burst.insert(b.snapshot_index);
  std::vector<std::size_t> out;
  out.reserve(trace.reports.size());
  for (std::size_t j = 1; j < trace.snapshots.size(); ++j)
    if (!burst.count(j)) out.push_back(j);
  return out;
}

using PairKeySet = std::unordered_set<std::uint64_t>;

/// One synchronous sweep over g. Every absent pair (u, v) with at least one
/// common neighbor is evaluated in canonical order (u < v, lexicographic)
/// against the sweep-start graph; additions commit only after evaluation, so
/// edges added this sweep never serve as witnesses within it. Each candidate
/// whose best witness scores strictly above the threshold draws one coin from
/// rng, in candidate order. Pairs in `skip` (the Permanent policy's rejected
/// set) are not evaluated at all.
inline SweepReport sweep(SocialGraph& g, const EvolutionParams& params,
                         Xoshiro256StarStar& rng,
                         const PairKeySet* skip = nullptr) {
  const std::size_t n = g.node_count();
  SweepReport report;

  std::vector<char> seen(n, 0);
  std::vector<NodeId> candidates;
  for (NodeId u = 0; u < n; ++u) {
    candidates.clear();
    for (NodeId w : g.neighbors(u)) {
      for (NodeId v : g.neighbors(w)) {
        if (v <= u || seen[v] || g.has_edge(u, v)) continue;
        seen[v] = 1;
        candidates.push_back(v);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    for (NodeId v : candidates) {
      seen[v] = 0;
      if (skip && skip->count(detail::pair_key(u, v))) continue;
      const auto witness = best_witness(g, u, v, params.mean);
      ++report.candidates_evaluated;
      if (witness->score > params.threshold) {
        if (rng.next_double() < params.accept_prob) {
          report.added.push_back(
              {u, v, EdgeAttr{witness->common_factors, witness->score},
               witness->witness});
        } else {
          report.rejected_by_coin.emplace_back(u, v);
        }
      } else {
        ++report.below_threshold;
      }
    }
  }

  for (const AddedEdge& e : report.added) g.add_edge(e.u, e.v, e.attr);
  return report;
}

namespace detail {

// Sweeps trace.snapshots.back() to a fixpoint, appending one snapshot per
// sweep. A sweep that adds nothing ends the phase once no coin-rejected
// candidate retains probability mass: always under Permanent, and under
// Retry when nothing was rejected or accept_prob is 0. Stops early and
// flags truncation after `budget` sweeps.
inline void run_phase(EvolutionTrace& trace, const EvolutionParams& params,
                      Xoshiro256StarStar& rng, std::uint64_t budget,
                      PairKeySet* permanent_skips) {
  for (std::uint64_t used = 0; used < budget; ++used) {
    SocialGraph g = trace.snapshots.back();
    SweepReport report = sweep(g, params, rng, permanent_skips);
    report.sweep_index = trace.reports.size();
    if (permanent_skips)
      for (const auto& [u, v] : report.rejected_by_coin)
        permanent_skips->insert(pair_key(u, v));

    const bool fixpoint =
        report.added.empty() &&
        (params.policy == RejectionPolicy::Permanent ||
         report.rejected_by_coin.empty() || params.accept_prob == 0.0);
    trace.snapshots.push_back(std::move(g));
    trace.reports.push_back(std::move(report));
    if (fixpoint) return;
  }
  trace.truncated = true;
}

}  // namespace detail

/// Runs sweeps from g0 until no further edge can be added (or the sweep
/// budget runs out, which flags the trace truncated). Coin flips come from
/// the evolution sub-stream of params.seed.
inline EvolutionTrace evolve(const SocialGraph& g0,
                             const EvolutionParams& params) {
  validate(params);
  EvolutionTrace trace;
  trace.params = params;
  trace.snapshots.push_back(g0);
  Xoshiro256StarStar rng(derive_stream(params.seed, stream::kEvolution));
  PairKeySet skips;
  detail::run_phase(trace, params, rng,
                    effective_max_sweeps(params, g0.node_count()),
                    params.policy == RejectionPolicy::Permanent ? &skips
                                                                : nullptr);
  return trace;
}

struct GrowthConfig {
  std::size_t pool_size = 20;           // each burst adds 1..pool_size nodes
  IntRange attach_edges_per_node{1, 3};
  std::size_t outer_steps = 1;
  AttrSource attr_source{};
};

inline void validate(const GrowthConfig& growth) {
  if (growth.pool_size < 1)
    throw std::invalid_argument("pool_size must be >= 1");
  if (growth.outer_steps < 1)
    throw std::invalid_argument("outer_steps must be >= 1");
  if (growth.attach_edges_per_node.lo > growth.attach_edges_per_node.hi)
    throw std::invalid_argument("attach range must satisfy lo <= hi");
  validate(growth.attr_source);
}

/// Iterative process: outer_steps rounds of evolve-to-fixpoint followed by a
/// growth burst. A burst adds a uniform count in [1, pool_size] of fresh
/// nodes; each new node attaches to a uniform count (attach_edges_per_node,
/// clamped to the nodes already present) of distinct uniformly chosen
/// existing nodes, with attrs drawn from attr_source. Node counts and
/// attachments come from the growth sub-stream of params.seed; coin flips
/// share one evolution stream across phases. The sweep budget applies per
/// phase; a truncated phase flags the trace but the run continues.
inline EvolutionTrace iterative_evolve(const SocialGraph& g0,
                                       const EvolutionParams& params,
                                       const GrowthConfig& growth) {
  validate(params);
  validate(growth);
  EvolutionTrace trace;
  trace.params = params;
  trace.snapshots.push_back(g0);
  Xoshiro256StarStar coins(derive_stream(params.seed, stream::kEvolution));
  Xoshiro256StarStar grow(derive_stream(params.seed, stream::kGrowth));
  PairKeySet skips;
  PairKeySet* skip_ptr =
      params.policy == RejectionPolicy::Permanent ? &skips : nullptr;

  for (std::size_t step = 0; step < growth.outer_steps; ++step) {
    detail::run_phase(
        trace, params, coins,
        effective_max_sweeps(params, trace.snapshots.back().node_count()),
        skip_ptr);

    SocialGraph g = trace.snapshots.back();
    const std::size_t burst_size =
        static_cast<std::size_t>(grow.uniform_u64(1, growth.pool_size));
    std::size_t edges_added = 0;
    for (std::size_t i = 0; i < burst_size; ++i) {
      const NodeId fresh = g.add_node();
      std::size_t attach = static_cast<std::size_t>(
          grow.uniform_u64(growth.attach_edges_per_node.lo,
                           growth.attach_edges_per_node.hi));
      if (attach > fresh) attach = fresh;  // at most one edge per target
      std::unordered_set<NodeId> chosen;
      for (std::size_t j = 0; j < attach; ++j) {
        NodeId target;
        do {
          target = static_cast<NodeId>(grow.uniform_u64(0, fresh - 1));
        } while (chosen.count(target));
        chosen.insert(target);
        g.add_edge(fresh, target, random_attr(growth.attr_source, grow));
        ++edges_added;
      }
    }
    trace.growth.push_back({trace.snapshots.size(), burst_size, edges_added});
    trace.snapshots.push_back(std::move(g));
    if (step + 1 < growth.outer_steps)
      trace.phase_starts.push_back(trace.snapshots.size() - 1);
  }
  return trace;
}

}  // namespace evograph
