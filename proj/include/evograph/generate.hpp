#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "evograph/graph.hpp"
#include "evograph/rng.hpp"

namespace evograph {

/// Inclusive integer range.
struct IntRange {
  std::uint32_t lo = 1;
  std::uint32_t hi = 1;
};

enum class EdgeModelKind { UniformEdgeCount, PerPairProbability };

struct EdgeModel {
  EdgeModelKind kind = EdgeModelKind::UniformEdgeCount;
  std::size_t count = 0;      // UniformEdgeCount: exact number of edges
  double probability = 0.0;   // PerPairProbability: independent coin per pair

  static EdgeModel uniform_count(std::size_t m) {
    return {EdgeModelKind::UniformEdgeCount, m, 0.0};
  }
  static EdgeModel per_pair(double q) {
    return {EdgeModelKind::PerPairProbability, 0, q};
  }
};

enum class ScoreModeKind { Cumulative, PerFactor };

struct ScoreMode {
  ScoreModeKind kind = ScoreModeKind::Cumulative;
  IntRange range{1, 16};  // Cumulative: range of S; PerFactor: range of each s_i
};

/// Distribution of one random edge attribute: factors are a uniformly random
/// nonempty subset of {1..factor_universe}; the score is either drawn whole
/// (Cumulative) or summed from one draw per chosen factor (PerFactor).
struct AttrSource {
  std::uint32_t factor_universe = 8;
  ScoreMode score_mode{};
};

struct GeneratorConfig {
  std::size_t n = 0;
  EdgeModel edge_model{};
  AttrSource attrs{};
  std::uint64_t seed = 0;
};

inline std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

inline void validate(const AttrSource& attrs) {
  if (attrs.factor_universe < 1 || attrs.factor_universe > 63)
    throw std::invalid_argument("factor universe must be in [1, 63]");
  const IntRange r = attrs.score_mode.range;
  if (r.lo < 1 || r.lo > r.hi)
    throw std::invalid_argument("score range must satisfy 1 <= lo <= hi");
}

inline void validate(const GeneratorConfig& cfg) {
  validate(cfg.attrs);
  switch (cfg.edge_model.kind) {
    case EdgeModelKind::UniformEdgeCount:
      if (cfg.edge_model.count > pair_count(cfg.n))
        throw std::invalid_argument("edge count exceeds n(n-1)/2");
      break;
    case EdgeModelKind::PerPairProbability:
      if (!(cfg.edge_model.probability >= 0.0 &&
            cfg.edge_model.probability <= 1.0))
        throw std::invalid_argument("edge probability must be in [0, 1]");
      break;
  }
}

/// One random edge attribute. Factor subsets are rejection-sampled: a uniform
/// mask over all 2^|F| subsets is redrawn while empty, which is uniform over
/// the 2^|F|-1 nonempty subsets. PerFactor scores are drawn in ascending
/// factor order.
inline EdgeAttr random_attr(const AttrSource& attrs, Xoshiro256StarStar& rng) {
  const std::uint64_t full = (std::uint64_t{1} << attrs.factor_universe) - 1;
  std::uint64_t mask = 0;
  while (mask == 0) mask = rng.uniform_u64(0, full);

  EdgeAttr attr;
  for (std::uint32_t bit = 0; bit < attrs.factor_universe; ++bit)
    if (mask & (std::uint64_t{1} << bit)) attr.factors.push_back(bit + 1);

  const IntRange r = attrs.score_mode.range;
  switch (attrs.score_mode.kind) {
    case ScoreModeKind::Cumulative:
      attr.score = static_cast<double>(rng.uniform_u64(r.lo, r.hi));
      break;
    case ScoreModeKind::PerFactor: {
      std::uint64_t sum = 0;
      for (std::size_t i = 0; i < attr.factors.size(); ++i)
        sum += rng.uniform_u64(r.lo, r.hi);
      attr.score = static_cast<double>(sum);
      break;
    }
  }
  return attr;
}

inline EdgeAttr random_attr(const GeneratorConfig& cfg,
                            Xoshiro256StarStar& rng) {
  return random_attr(cfg.attrs, rng);
}

/// Seeded random initial graph. UniformEdgeCount picks the edge set with a
/// partial Fisher-Yates shuffle over all pairs in lexicographic order, then
/// draws the m attrs in the shuffled pick order. PerPairProbability walks
/// pairs lexicographically, one coin each, drawing the attr right after an
/// accepted coin. Both are fully determined by cfg.seed (generation stream).
inline SocialGraph generate_initial(const GeneratorConfig& cfg) {
  validate(cfg);
  SocialGraph g(cfg.n);
  Xoshiro256StarStar rng(derive_stream(cfg.seed, stream::kGeneration));

  switch (cfg.edge_model.kind) {
    case EdgeModelKind::UniformEdgeCount: {
      std::vector<std::pair<NodeId, NodeId>> pairs;
      pairs.reserve(pair_count(cfg.n));
      for (NodeId u = 0; u + 1 < cfg.n; ++u)
        for (NodeId v = u + 1; v < cfg.n; ++v) pairs.emplace_back(u, v);
      const std::size_t m = cfg.edge_model.count;
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = static_cast<std::size_t>(
            rng.uniform_u64(i, pairs.size() - 1));
        std::swap(pairs[i], pairs[j]);
      }
      for (std::size_t i = 0; i < m; ++i)
        g.add_edge(pairs[i].first, pairs[i].second,
                   random_attr(cfg.attrs, rng));
      break;
    }
    case EdgeModelKind::PerPairProbability: {
      for (NodeId u = 0; u + 1 < cfg.n; ++u)
        for (NodeId v = u + 1; v < cfg.n; ++v)
          if (rng.next_double() < cfg.edge_model.probability)
            g.add_edge(u, v, random_attr(cfg.attrs, rng));
      break;
    }
  }
  return g;
}

}  // namespace evograph
