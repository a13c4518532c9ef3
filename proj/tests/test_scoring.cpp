#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "evograph/rng.hpp"
#include "evograph/scoring.hpp"

using namespace evograph;

namespace {

EdgeAttr random_nonzero_attr(Xoshiro256StarStar& rng) {
  EdgeAttr attr;
  const std::uint64_t mask = rng.uniform_u64(1, 255);
  for (std::uint32_t bit = 0; bit < 8; ++bit)
    if (mask & (1ull << bit)) attr.factors.push_back(bit + 1);
  attr.score = static_cast<double>(rng.uniform_u64(1, 16));
  return attr;
}

}  // namespace

TEST_CASE("factor_average is score over factor count") {
  CHECK(factor_average(EdgeAttr{{2, 3, 4}, 9.0}) == 3.0);
  CHECK(factor_average(EdgeAttr{{1, 2, 3, 4}, 10.0}) == 2.5);
  CHECK(factor_average(EdgeAttr{{5}, 0.0}) == 0.0);
}

TEST_CASE("cumulative_score on the six-node example edges") {
  const EdgeAttr a{{2, 3, 4}, 9.0};
  const EdgeAttr b{{1, 2, 3, 4}, 10.0};

  const auto arith = cumulative_score(a, b, MeanKind::Arithmetic);
  CHECK(arith.common_count == 3);
  CHECK(arith.score == Catch::Approx(8.25).margin(1e-12));

  const auto geo = cumulative_score(a, b, MeanKind::Geometric);
  CHECK(geo.common_count == 3);
  CHECK(geo.score == Catch::Approx(3.0 * std::sqrt(3.0 * 2.5)).margin(1e-12));

  const auto harm = cumulative_score(a, b, MeanKind::Harmonic);
  CHECK(harm.common_count == 3);
  CHECK(harm.score ==
        Catch::Approx(3.0 * 2.0 / (1.0 / 3.0 + 1.0 / 2.5)).margin(1e-12));
}

TEST_CASE("disjoint factor sets score zero under every mean") {
  const EdgeAttr a{{1}, 5.0};
  const EdgeAttr b{{2}, 5.0};
  for (const auto mean :
       {MeanKind::Arithmetic, MeanKind::Geometric, MeanKind::Harmonic}) {
    const auto s = cumulative_score(a, b, mean);
    CHECK(s.score == 0.0);
    CHECK(s.common_count == 0);
  }
}

TEST_CASE("identical edges score k times their factor average") {
  const EdgeAttr a{{1, 2}, 4.0};
  const auto s = cumulative_score(a, a, MeanKind::Arithmetic);
  CHECK(s.score == 4.0);
  CHECK(s.common_count == 2);
}

TEST_CASE("harmonic mean with a zero average is zero, not an error") {
  const EdgeAttr zero{{1, 2}, 0.0};
  const EdgeAttr positive{{1, 2}, 4.0};
  CHECK(cumulative_score(zero, positive, MeanKind::Harmonic).score == 0.0);
}

TEST_CASE("score function properties on random attrs") {
  Xoshiro256StarStar rng(2024);
  for (int round = 0; round < 1000; ++round) {
    const EdgeAttr a = random_nonzero_attr(rng);
    const EdgeAttr b = random_nonzero_attr(rng);
    const auto arith = cumulative_score(a, b, MeanKind::Arithmetic);
    const auto geo = cumulative_score(a, b, MeanKind::Geometric);
    const auto harm = cumulative_score(a, b, MeanKind::Harmonic);

    // symmetry
    REQUIRE(cumulative_score(b, a, MeanKind::Arithmetic).score == arith.score);
    REQUIRE(cumulative_score(b, a, MeanKind::Geometric).score == geo.score);
    REQUIRE(cumulative_score(b, a, MeanKind::Harmonic).score == harm.score);

    // AM-GM-HM ordering for k > 0 and positive averages
    if (arith.common_count > 0) {
      REQUIRE(harm.score <= geo.score + 1e-9);
      REQUIRE(geo.score <= arith.score + 1e-9);
    }

    // strict monotonicity in one score under the arithmetic mean
    if (arith.common_count > 0) {
      EdgeAttr bumped = a;
      bumped.score += 1.0;
      REQUIRE(cumulative_score(bumped, b, MeanKind::Arithmetic).score >
              arith.score);
    }

    // scaling both scores scales every mean
    EdgeAttr sa = a, sb = b;
    sa.score *= 3.0;
    sb.score *= 3.0;
    REQUIRE(cumulative_score(sa, sb, MeanKind::Arithmetic).score ==
            Catch::Approx(3.0 * arith.score).margin(1e-9));
    REQUIRE(cumulative_score(sa, sb, MeanKind::Geometric).score ==
            Catch::Approx(3.0 * geo.score).margin(1e-9));
    REQUIRE(cumulative_score(sa, sb, MeanKind::Harmonic).score ==
            Catch::Approx(3.0 * harm.score).margin(1e-9));
  }
}

TEST_CASE("best_witness on the V2-V3-V6 subgraph") {
  // V2=0, V3=1, V6=2 with the attrs from the six-node example.
  SocialGraph g(3);
  g.add_edge(0, 1, EdgeAttr{{2, 3, 4}, 9.0});
  g.add_edge(1, 2, EdgeAttr{{1, 2, 3, 4}, 10.0});
  const auto result = best_witness(g, 0, 2, MeanKind::Arithmetic);
  REQUIRE(result.has_value());
  CHECK(result->witness == 1);
  CHECK(result->score == Catch::Approx(8.25).margin(1e-12));
  CHECK(result->common_factors == std::vector<FactorId>{2, 3, 4});
}

TEST_CASE("best_witness without a common neighbor is empty") {
  SocialGraph g(4);
  g.add_edge(0, 1, EdgeAttr{{1}, 2.0});
  g.add_edge(2, 3, EdgeAttr{{1}, 2.0});
  CHECK_FALSE(best_witness(g, 0, 2, MeanKind::Arithmetic).has_value());
}

TEST_CASE("best_witness breaks exact ties by smallest witness id") {
  SocialGraph g(4);
  const EdgeAttr attr{{1, 2}, 6.0};
  g.add_edge(0, 2, attr);
  g.add_edge(2, 1, attr);
  g.add_edge(0, 3, attr);
  g.add_edge(3, 1, attr);
  const auto result = best_witness(g, 0, 1, MeanKind::Arithmetic);
  REQUIRE(result.has_value());
  CHECK(result->witness == 2);
  CHECK(result->score ==
        cumulative_score(attr, attr, MeanKind::Arithmetic).score);
}

TEST_CASE("best_witness refuses an existing edge") {
  SocialGraph g(3);
  g.add_edge(0, 1, EdgeAttr{{1}, 1.0});
  CHECK_THROWS_AS(best_witness(g, 0, 1, MeanKind::Arithmetic),
                  std::invalid_argument);
}
