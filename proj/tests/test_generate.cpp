#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <map>

#include "evograph/generate.hpp"

using namespace evograph;

TEST_CASE("generate_initial respects the experimental ranges") {
  GeneratorConfig cfg;
  cfg.n = 400;
  cfg.edge_model = EdgeModel::uniform_count(800);
  cfg.attrs.factor_universe = 8;
  cfg.attrs.score_mode = {ScoreModeKind::Cumulative, {1, 16}};
  cfg.seed = 1;

  const SocialGraph g = generate_initial(cfg);
  REQUIRE(g.node_count() == 400);
  REQUIRE(g.edge_count() == 800);
  g.for_each_edge([&](NodeId, NodeId, const EdgeAttr& attr) {
    REQUIRE(attr.factors.size() >= 1);
    REQUIRE(attr.factors.size() <= 8);
    REQUIRE(attr.factors.front() >= 1);
    REQUIRE(attr.factors.back() <= 8);
    REQUIRE(attr.score >= 1.0);
    REQUIRE(attr.score <= 16.0);
    REQUIRE(attr.score == std::floor(attr.score));
  });
}

TEST_CASE("generate_initial handles degenerate sizes") {
  GeneratorConfig cfg;
  cfg.n = 0;
  cfg.edge_model = EdgeModel::uniform_count(0);
  CHECK(generate_initial(cfg).node_count() == 0);
  CHECK(generate_initial(cfg).edge_count() == 0);

  cfg.n = 1;
  CHECK(generate_initial(cfg).edge_count() == 0);
}

TEST_CASE("same seed, same graph; different seed, different graph") {
  GeneratorConfig cfg;
  cfg.n = 60;
  cfg.edge_model = EdgeModel::uniform_count(120);
  cfg.seed = 42;
  const SocialGraph a = generate_initial(cfg);
  const SocialGraph b = generate_initial(cfg);
  CHECK(a == b);

  cfg.seed = 43;
  CHECK_FALSE(a == generate_initial(cfg));
}

TEST_CASE("per-pair probability model obeys the coin") {
  GeneratorConfig cfg;
  cfg.n = 40;
  cfg.edge_model = EdgeModel::per_pair(0.0);
  CHECK(generate_initial(cfg).edge_count() == 0);

  cfg.edge_model = EdgeModel::per_pair(1.0);
  CHECK(generate_initial(cfg).edge_count() == pair_count(40));
}

TEST_CASE("config validation rejects bad settings") {
  GeneratorConfig cfg;
  cfg.n = 4;
  cfg.edge_model = EdgeModel::uniform_count(7);  // > 4*3/2
  CHECK_THROWS_AS(generate_initial(cfg), std::invalid_argument);

  cfg.edge_model = EdgeModel::per_pair(1.5);
  CHECK_THROWS_AS(generate_initial(cfg), std::invalid_argument);

  cfg.edge_model = EdgeModel::uniform_count(2);
  cfg.attrs.factor_universe = 0;
  CHECK_THROWS_AS(generate_initial(cfg), std::invalid_argument);

  cfg.attrs.factor_universe = 8;
  cfg.attrs.score_mode.range = {5, 2};
  CHECK_THROWS_AS(generate_initial(cfg), std::invalid_argument);
  cfg.attrs.score_mode.range = {0, 2};
  CHECK_THROWS_AS(generate_initial(cfg), std::invalid_argument);
}

TEST_CASE("random_attr degenerate ranges are forced") {
  Xoshiro256StarStar rng(5);
  AttrSource attrs;
  attrs.factor_universe = 1;
  attrs.score_mode = {ScoreModeKind::Cumulative, {5, 5}};
  for (int i = 0; i < 20; ++i) {
    const EdgeAttr attr = random_attr(attrs, rng);
    REQUIRE(attr.factors == std::vector<FactorId>{1});
    REQUIRE(attr.score == 5.0);
  }
}

TEST_CASE("per-factor scores sum one draw per chosen factor") {
  Xoshiro256StarStar rng(6);
  AttrSource attrs;
  attrs.factor_universe = 8;
  attrs.score_mode = {ScoreModeKind::PerFactor, {2, 2}};
  for (int i = 0; i < 50; ++i) {
    const EdgeAttr attr = random_attr(attrs, rng);
    REQUIRE(attr.score == 2.0 * static_cast<double>(attr.factors.size()));
  }
}

TEST_CASE("factor subsets are uniform over nonempty subsets") {
  Xoshiro256StarStar rng(7);
  AttrSource attrs;
  attrs.factor_universe = 3;
  std::map<std::vector<FactorId>, std::size_t> counts;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) ++counts[random_attr(attrs, rng).factors];
  REQUIRE(counts.size() == 7);

  const double expect = draws / 7.0;
  const double sigma = std::sqrt(draws * (1.0 / 7.0) * (6.0 / 7.0));
  for (const auto& [subset, count] : counts)
    REQUIRE(std::abs(static_cast<double>(count) - expect) <= 5.0 * sigma);
}
