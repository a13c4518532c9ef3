#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "evograph/graph.hpp"

namespace evograph {

/// How the per-factor averages of the two incident edges are combined.
enum class MeanKind { Arithmetic, Geometric, Harmonic };

inline const char* to_string(MeanKind mean) {
  switch (mean) {
    case MeanKind::Arithmetic: return "arithmetic";
    case MeanKind::Geometric: return "geometric";
    case MeanKind::Harmonic: return "harmonic";
  }
  return "?";
}

inline std::optional<MeanKind> mean_from_string(const std::string& s) {
  if (s == "arithmetic") return MeanKind::Arithmetic;
  if (s == "geometric") return MeanKind::Geometric;
  if (s == "harmonic") return MeanKind::Harmonic;
  return std::nullopt;
}

/// Per-factor score of one edge: S / |F|.
inline double factor_average(const EdgeAttr& attr) {
  return attr.score / static_cast<double>(attr.factors.size());
}

inline std::vector<FactorId> common_factors(const EdgeAttr& a,
                                            const EdgeAttr& b) {
  std::vector<FactorId> out;
  std::set_intersection(a.factors.begin(), a.factors.end(), b.factors.begin(),
                        b.factors.end(), std::back_inserter(out));
  return out;
}

inline std::size_t common_factor_count(const EdgeAttr& a, const EdgeAttr& b) {
  std::size_t count = 0;
  auto i = a.factors.begin();
  auto j = b.factors.begin();
  while (i != a.factors.end() && j != b.factors.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else { ++count; ++i; ++j; }
  }
  return count;
}

struct PairScore {
  double score = 0.0;
  std::size_t common_count = 0;  // k = |F_a intersect F_b|
};

/// Mean formulas on already-extracted inputs; the one place they live, so
/// the engine's cached fast path computes bit-identical doubles.
///
///   Arithmetic:  (k/2) * (avg_a + avg_b)
///   Geometric:    k * sqrt(avg_a * avg_b)
///   Harmonic:     k * 2 / (1/avg_a + 1/avg_b), 0 if either avg is 0
///
/// k = 0 gives score 0 under every mean.
inline double combined_score(std::size_t common_count, double avg_a,
                             double avg_b, MeanKind mean) {
  if (common_count == 0) return 0.0;
  const double k = static_cast<double>(common_count);
  switch (mean) {
    case MeanKind::Arithmetic:
      return (k / 2.0) * (avg_a + avg_b);
    case MeanKind::Geometric:
      return k * std::sqrt(avg_a * avg_b);
    case MeanKind::Harmonic:
      return (avg_a == 0.0 || avg_b == 0.0)
                 ? 0.0
                 : k * 2.0 / (1.0 / avg_a + 1.0 / avg_b);
  }
  return 0.0;
}

/// Cumulative score of a candidate edge through one witness whose incident
/// edges carry attrs a and b. Symmetric in (a, b).
inline PairScore cumulative_score(const EdgeAttr& a, const EdgeAttr& b,
                                  MeanKind mean) {
  PairScore result;
  result.common_count = common_factor_count(a, b);
  result.score = combined_score(result.common_count, factor_average(a),
                                factor_average(b), mean);
  return result;
}

/// The common neighbor that maximizes the cumulative score for a candidate
/// pair, with its score and the common factor set of its two incident edges.
struct WitnessResult {
  NodeId witness = 0;
  double score = 0.0;
  std::vector<FactorId> common_factors;
};

/// Score-maximizing witness for the absent pair (u, v), or nullopt when u and
/// v have no common neighbor. Ties go to the smallest witness id.
inline std::optional<WitnessResult> best_witness(const SocialGraph& g,
                                                 NodeId u, NodeId v,
                                                 MeanKind mean) {
  if (g.has_edge(u, v))
    throw std::invalid_argument("best_witness: edge (" + std::to_string(u) +
                                "," + std::to_string(v) +
                                ") already present");
  const std::vector<NodeId> witnesses = g.common_neighbors(u, v);
  if (witnesses.empty()) return std::nullopt;

  NodeId best = witnesses.front();
  double best_score = -1.0;
  for (NodeId w : witnesses) {  // ascending, so first max wins ties
    const PairScore s =
        cumulative_score(g.edge_attr(u, w), g.edge_attr(w, v), mean);
    if (s.score > best_score) {
      best = w;
      best_score = s.score;
    }
  }
  return WitnessResult{
      best, best_score,
      common_factors(g.edge_attr(u, best), g.edge_attr(best, v))};
}

}  // namespace evograph
