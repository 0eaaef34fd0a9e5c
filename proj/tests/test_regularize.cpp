#include <doctest.h>

#include <cmath>

#include "bipgirth/errors.hpp"
#include "bipgirth/generate.hpp"
#include "bipgirth/regularize.hpp"
#include "fixtures.hpp"

using namespace bipgirth;

TEST_CASE("regularization thresholds") {
  auto one = lemma5_threshold(1, 1);
  CHECK(one.d_inner == 2);
  CHECK(one.d_threshold == BigInt(1) << 42);
  auto two = lemma5_threshold(2, 1);
  CHECK(two.d_inner == 8);
  CHECK(two.d_threshold == 8 * boost::multiprecision::pow(BigInt(32), 25));
  CHECK(one.d_threshold < two.d_threshold);
  for (unsigned r = 1; r <= 4; ++r) {
    for (unsigned lambda = 1; lambda <= 4; ++lambda) {
      auto [d, big] = oracle::threshold(r, lambda);
      auto got = lemma5_threshold(r, lambda);
      CHECK(got.d_inner.str() == d);
      CHECK(got.d_threshold.str() == big);
    }
  }
  CHECK_THROWS_AS(lemma5_threshold(0, 1), ParameterError);
}

TEST_CASE("degree band extraction") {
  auto k16 = gen_complete(16, 16);
  auto full = degree_band_extract(k16, 16, 16);
  CHECK(full.selection.a.size() == 16);
  CHECK(full.ratio == Rational(1));

  // A-degrees 1, 1, 1, 40: nothing lies in [2, 32].
  std::vector<Edge> edges{{0, 0}, {1, 1}, {2, 2}};
  for (VertexId b = 0; b < 40; ++b) edges.emplace_back(3, b);
  BipartiteGraph skew(4, 40, edges);
  auto none = degree_band_extract(skew, 2, 16);
  CHECK(none.selection.a.empty());
  CHECK(none.ratio == Rational(0));

  auto bireg = gen_biregular(1000, 50, 8, Seed{4});
  auto all = degree_band_extract(bireg, 8, 2);
  CHECK(all.selection.a.size() == 1000);
  CHECK(all.ratio == Rational(20));
}

TEST_CASE("property: band extraction keeps selected degrees in band and is idempotent") {
  oracle::SplitMix rng(314);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = fixtures::to_graph(oracle::random_graph(rng, 30, 30, 0.1, 0.5));
    const std::size_t target = 1 + rng.below(4);
    auto res = degree_band_extract(g, target, 4);
    auto sub = induced_subgraph(g, res.selection);
    for (VertexId a = 0; a < sub.graph.size_a(); ++a) {
      CHECK(sub.graph.degree(Side::A, a) >= target);
      CHECK(sub.graph.degree(Side::A, a) <= 4 * target);
    }
    auto again = degree_band_extract(sub.graph, target, 4);
    CHECK(again.selection.a.size() == sub.graph.size_a());
    CHECK(again.ratio == res.ratio);
  }
}

TEST_CASE("uniform partitions of B") {
  auto g = gen_complete(2, 5);
  auto single = partition_b_uniform(g, 1, Seed{1});
  REQUIRE(single.size() == 1);
  CHECK(single[0].size() == 5);
  auto empty = partition_b_uniform(BipartiteGraph(3, 0, {}), 4, Seed{1});
  CHECK(empty.size() == 4);
  for (const auto& p : empty) CHECK(p.empty());

  // Part sizes of a 3000-vertex B split three ways: mean 1000, sd sqrt(3000 * 1/3 * 2/3).
  BipartiteGraph wide(1, 3000, {});
  const double sd = std::sqrt(3000.0 / 3.0 * 2.0 / 3.0);
  std::vector<double> totals(3, 0.0);
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto parts = partition_b_uniform(wide, 3, Seed{s});
    for (std::size_t i = 0; i < 3; ++i) totals[i] += parts[i].size();
  }
  for (double t : totals) CHECK(std::abs(t / 100.0 - 1000.0) <= 5.0 * sd / 10.0);
}

TEST_CASE("regular-side extraction on a biregular graph") {
  auto g = gen_biregular(2000, 40, 16, Seed{1});
  RegularizeParams params;
  params.r = 2;
  params.lambda = 2;
  std::size_t successes = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    params.seed = Seed{s};
    auto res = extract_regular_side(g, params);
    if (!res.selection) continue;
    ++successes;
    auto sub = induced_subgraph(g, *res.selection);
    CHECK(is_r_regular_side(sub.graph, Side::A, 2));
    CHECK(res.selection->a.size() >= 2 * res.selection->b.size());
    CHECK_FALSE(regular_side_violation(g, *res.selection, 2, 2));
  }
  CHECK(successes > 0);
}

TEST_CASE("regular-side extraction is absent when every degree is below r") {
  auto g = gen_biregular(40, 40, 2, Seed{3});
  RegularizeParams params;
  params.r = 3;
  params.max_retries = 20;
  CHECK_FALSE(extract_regular_side(g, params).selection);
}

TEST_CASE("regular-side audit names what is wrong") {
  auto g = gen_complete(3, 3);
  CHECK(regular_side_violation(g, InducedSelection{{0, 1}, {0, 1}}, 2, 1) == std::nullopt);
  CHECK(regular_side_violation(g, InducedSelection{{0, 1}, {0, 1}}, 3, 1).has_value());
  CHECK(regular_side_violation(g, InducedSelection{{0, 1}, {0, 1}}, 2, 2).has_value());
  CHECK(regular_side_violation(g, InducedSelection{{}, {0}}, 1, 1).has_value());
}
