#include <doctest.h>

#include "bipgirth/detect.hpp"
#include "bipgirth/errors.hpp"
#include "bipgirth/generate.hpp"
#include "bipgirth/girth6.hpp"
#include "fixtures.hpp"

using namespace bipgirth;

namespace {

BlockList singletons(std::size_t n) {
  BlockList out(n);
  for (VertexId b = 0; b < n; ++b) out[b] = {b};
  return out;
}

}  // namespace

TEST_CASE("verify_rt_partition examples") {
  auto k33 = gen_complete(3, 3);
  CHECK(verify_rt_partition(k33, RTPartition{singletons(3), {0, 1, 2}, 3, 3}).pass);

  // One 4-cycle with its two B-vertices in different blocks: 2 common neighbours < t = 3.
  auto c4 = gen_complete(2, 2);
  auto report = verify_rt_partition(c4, RTPartition{singletons(2), {0, 1}, 2, 3});
  CHECK_FALSE(report.pass);
  REQUIRE(report.bad_pairs.size() == 1);
  CHECK(report.bad_pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(verify_rt_partition(c4, RTPartition{singletons(2), {0, 1}, 2, 2}).pass);

  // Fano: no two lines share two points, so only coverage matters.
  auto fano = gen_projective_incidence(2);
  oracle::SplitMix rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    BlockList blocks(3);
    for (VertexId b = 0; b < 7; ++b) blocks[rng.below(3)].push_back(b);
    std::vector<VertexId> core;
    for (VertexId a = 0; a < 7; ++a) {
      std::set<std::size_t> seen;
      for (VertexId b : fano.neighbours_a(a))
        for (std::size_t i = 0; i < 3; ++i)
          if (std::count(blocks[i].begin(), blocks[i].end(), b)) seen.insert(i);
      if (seen.size() == 3) core.push_back(a);
    }
    CHECK(verify_rt_partition(fano, RTPartition{blocks, core, 3, 2}).pass);
  }
}

TEST_CASE("verify_rt_partition rejects malformed partitions") {
  auto k33 = gen_complete(3, 3);
  CHECK_THROWS_AS(verify_rt_partition(k33, RTPartition{{{0, 1}}, {0}, 2, 1}), GraphError);
  CHECK_THROWS_AS(verify_rt_partition(k33, RTPartition{{{0, 1}, {1, 2}}, {0}, 2, 1}), GraphError);
  CHECK_THROWS_AS(verify_rt_partition(k33, RTPartition{{{0}, {1}}, {0}, 2, 1}), GraphError);
  CHECK_THROWS_AS(verify_rt_partition(k33, RTPartition{{{0, 1}, {2}}, {1, 0}, 2, 1}), GraphError);
  auto uncovered = verify_rt_partition(k33, RTPartition{{{0, 1, 2}, {}}, {0}, 2, 1});
  CHECK_FALSE(uncovered.pass);
  CHECK(uncovered.uncovered == std::vector<VertexId>{0});
}

TEST_CASE("find_rt_partition") {
  SUBCASE("exact mode on K_{t,t} finds singleton blocks") {
    auto k33 = gen_complete(3, 3);
    PartitionSearchOptions opts;
    opts.mode = PartitionMode::Exact;
    auto a = iota_ids(3);
    auto res = find_rt_partition(k33, a, 3, 3, opts);
    REQUIRE(res.partition);
    CHECK(res.partition->a_core.size() == 3);
    for (const auto& blk : res.partition->blocks) CHECK(blk.size() == 1);
    CHECK(verify_rt_partition(k33, *res.partition).pass);
    CHECK(res.core_fraction == Rational(1));
  }
  SUBCASE("heuristic mode on Fano succeeds for some seed") {
    auto fano = gen_projective_incidence(2);
    auto a = iota_ids(7);
    bool found = false;
    for (std::uint64_t s = 0; s < 100 && !found; ++s) {
      PartitionSearchOptions opts;
      opts.seed = Seed{s};
      auto res = find_rt_partition(fano, a, 3, 2, opts);
      if (res.partition) {
        found = true;
        CHECK_FALSE(res.partition->a_core.empty());
        CHECK(verify_rt_partition(fano, *res.partition).pass);
      }
    }
    CHECK(found);
  }
  SUBCASE("non-regular A is a precondition error") {
    std::vector<Edge> edges{{0, 0}, {0, 1}, {1, 0}};
    BipartiteGraph g(2, 2, edges);
    auto a = iota_ids(2);
    CHECK_THROWS_AS(find_rt_partition(g, a, 2, 1), ParameterError);
  }
}

TEST_CASE("property: every partition found verifies and matches the double-loop checker") {
  oracle::SplitMix rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 2 + rng.below(2);
    const std::size_t t = 1 + rng.below(3);
    auto nr = gen_neighbourhood_regular({std::vector<std::size_t>(r, r), r * (1 + rng.below(3))},
                                        Seed{rng.next()});
    auto a = iota_ids(nr.graph.size_a());
    PartitionSearchOptions opts;
    opts.seed = Seed{rng.next()};
    opts.restarts = 5;
    auto res = find_rt_partition(nr.graph, a, r, t, opts);
    if (!res.partition) continue;
    std::vector<std::uint32_t> label(nr.graph.size_b());
    for (std::size_t i = 0; i < r; ++i)
      for (VertexId b : res.partition->blocks[i]) label[b] = static_cast<std::uint32_t>(i);
    CHECK(oracle::rt_partition_ok(fixtures::to_raw(nr.graph), label, r, res.partition->a_core, t));
  }
}

TEST_CASE("dedupe_neighbourhoods") {
  auto k33 = gen_complete(3, 3);
  auto a3 = iota_ids(3);
  auto twins = dedupe_neighbourhoods(k33, a3, 3);
  REQUIRE(std::holds_alternative<TwinClass>(twins));
  CHECK(std::get<TwinClass>(twins).members.size() == 3);
  CHECK(std::get<TwinClass>(twins).neighbourhood == std::vector<VertexId>{0, 1, 2});

  auto c6 = fixtures::cycle(3);
  auto distinct = dedupe_neighbourhoods(c6, a3, 2);
  REQUIRE(std::holds_alternative<DistinctFamily>(distinct));
  CHECK(std::get<DistinctFamily>(distinct).representatives.size() == 3);

  std::vector<Edge> two_copies{{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {2, 3}, {3, 2}, {3, 3}};
  BipartiteGraph kk(4, 4, two_copies);
  auto a4 = iota_ids(4);
  auto first = dedupe_neighbourhoods(kk, a4, 2);
  REQUIRE(std::holds_alternative<TwinClass>(first));
  CHECK(std::get<TwinClass>(first).members == std::vector<VertexId>{0, 1});
}

TEST_CASE("property: distinct families cover at least |A|/t vertices") {
  oracle::SplitMix rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = fixtures::to_graph(oracle::random_graph(rng, 10, 3, 0.2, 0.8));
    const std::size_t t = 2 + rng.below(3);
    auto a = iota_ids(g.size_a());
    auto res = dedupe_neighbourhoods(g, a, t);
    if (auto* fam = std::get_if<DistinctFamily>(&res)) {
      CHECK(fam->representatives.size() * t >= a.size());
      std::set<std::vector<VertexId>> seen;
      for (VertexId v : fam->representatives) {
        auto n = g.neighbours_a(v);
        CHECK(seen.insert({n.begin(), n.end()}).second);
      }
    } else {
      const auto& cls = std::get<TwinClass>(res);
      CHECK(cls.members.size() == t);
      for (VertexId v : cls.members) {
        auto n = g.neighbours_a(v);
        CHECK(std::vector<VertexId>(n.begin(), n.end()) == cls.neighbourhood);
      }
    }
  }
}

TEST_CASE("neighbourly graph") {
  auto k33 = gen_complete(3, 3);
  auto h = neighbourly_graph(k33, RTPartition{singletons(3), {0, 1, 2}, 3, 3});
  CHECK(h.edges.size() == 3);

  auto fano = gen_projective_incidence(2);
  BlockList blocks{{0, 1, 2}, {3, 4}, {5, 6}};
  std::vector<VertexId> core;
  auto a = iota_ids(7);
  RTPartition part{blocks, {}, 3, 2};
  for (VertexId v : a) {
    std::set<int> hit;
    for (VertexId b : fano.neighbours_a(v)) hit.insert(b <= 2 ? 0 : b <= 4 ? 1 : 2);
    if (hit.size() == 3) part.a_core.push_back(v);
  }
  CHECK(neighbourly_graph(fano, part).edges.empty());

  auto c4 = gen_complete(2, 2);
  auto single = neighbourly_graph(c4, RTPartition{singletons(2), {0, 1}, 2, 2});
  CHECK(single.edges == std::set<std::pair<std::size_t, std::size_t>>{{0, 1}});
  CHECK_THROWS_AS(neighbourly_graph(c4, RTPartition{singletons(2), {0, 1}, 2, 3}), ParameterError);
}

TEST_CASE("independent set or hub") {
  NeighbourlyGraph empty9{9, {}, std::vector<std::vector<std::size_t>>(9)};
  auto is = independent_set_or_hub(empty9, 3, 3);
  REQUIRE(std::holds_alternative<IndependentBlocks>(is));
  CHECK(std::get<IndependentBlocks>(is).members.size() >= 3);

  NeighbourlyGraph k9{9, {}, std::vector<std::vector<std::size_t>>(9)};
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j)
      if (i != j) {
        k9.adjacency[i].push_back(j);
        if (i < j) k9.edges.insert({i, j});
      }
  auto hub = independent_set_or_hub(k9, 3, 2);
  REQUIRE(std::holds_alternative<HubBlock>(hub));
  CHECK(std::get<HubBlock>(hub).degree == 8);

  NeighbourlyGraph edge{2, {{0, 1}}, {{1}, {0}}};
  try {
    independent_set_or_hub(edge, 2, 2);
    FAIL("expected ExtractionError");
  } catch (const ExtractionError& e) {
    CHECK(e.reason() == ExtractionError::Reason::Neither);
  }
}

TEST_CASE("proposition schedule and preconditions") {
  auto s = proposition_schedule(2, 1);
  CHECK(s.t == 3);
  CHECK(s.big_r == 9);
  // Fano is 3-regular but r = 1, lambda = 2 needs R = t(r+1) = 6.
  auto fano = gen_projective_incidence(2);
  auto a = iota_ids(7);
  CHECK(proposition_schedule(1, 2).big_r == 6);
  CHECK_THROWS_AS(proposition_step(fano, a, 1, 2), ParameterError);
}

TEST_CASE("proposition step on K_{9,9} returns a K_{3,3} from twins") {
  auto k99 = gen_complete(9, 9);
  auto a = iota_ids(9);
  auto res = proposition_step(k99, a, 2, 1);
  REQUIRE(std::holds_alternative<BicliqueWitness>(res.outcome));
  const auto& w = std::get<BicliqueWitness>(res.outcome);
  CHECK(w.s == 3);
  CHECK(w.t == 3);
  CHECK(verify_biclique(k99, w));
}

TEST_CASE("proposition step on PG(2,3) gives an audited girth-six subgraph") {
  auto pg3 = gen_projective_incidence(3);
  auto a = iota_ids(13);
  std::size_t decided = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    PartitionSearchOptions opts;
    opts.seed = Seed{s};
    try {
      auto res = proposition_step(pg3, a, 1, 1, opts);
      ++decided;
      if (auto* g6 = std::get_if<GirthSixOutcome>(&res.outcome)) {
        CHECK_FALSE(girth_six_violation(pg3, g6->selection, Rational(1)));
        auto raw = fixtures::to_raw(induced_subgraph(pg3, g6->selection).graph);
        CHECK(oracle::cycle_census(raw, 4).count(4) == 0);
      } else if (auto* f = std::get_if<FunnelOutcome>(&res.outcome)) {
        CHECK_FALSE(funnel_violation(pg3, *f, 1, 1, 2));
      }
    } catch (const ExtractionError&) {
    }
  }
  CHECK(decided > 0);
}

TEST_CASE("funnel audit flags each broken property") {
  auto g = gen_complete(3, 3);
  FunnelOutcome f{{0, 1}, {1}, 0};
  CHECK(funnel_violation(g, f, 1, 1, 2) == std::nullopt);
  CHECK(funnel_violation(g, FunnelOutcome{{0, 1}, {0}, 0}, 1, 1, 2).has_value());
  CHECK(funnel_violation(g, FunnelOutcome{{0, 1}, {1, 2}, 0}, 1, 1, 2).has_value());
  CHECK(funnel_violation(g, FunnelOutcome{{0, 1}, {1}, 0}, 1, 3, 2).has_value());
  CHECK(funnel_violation(g, FunnelOutcome{{0, 1}, {1}, 0}, 1, 1, 3).has_value());
}

TEST_CASE("R1/Lambda1 schedule") {
  auto one = r1_lambda1_calculator(1, 5, BigRational(1));
  REQUIRE(one.size() == 1);
  CHECK(one[0].r1 == 5);
  CHECK(one[0].lambda1 == 1);
  auto two = r1_lambda1_calculator(2, 3, BigRational(7, 3));
  CHECK(two[1].r1 == 16);
  CHECK(two[1].lambda1 == 2);  // ceil(4 / (7/3))
  auto rows = r1_lambda1_calculator(5, 2, BigRational(1, 2));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].r1 > rows[i - 1].r1);
  CHECK_THROWS_AS(r1_lambda1_calculator(2, 2, BigRational(0)), ParameterError);
}

TEST_CASE("iterated extraction") {
  SUBCASE("s = 1 is a K_{1,t} with the single vertex in A") {
    auto g = gen_biregular(12, 12, 3, Seed{2});
    auto res = iterate_extraction(g, 1, 3);
    REQUIRE(std::holds_alternative<BicliqueWitness>(res.outcome));
    const auto& w = std::get<BicliqueWitness>(res.outcome);
    CHECK(w.s_side == Side::A);
    CHECK(w.a.size() == 1);
    CHECK(verify_biclique(g, w));
  }
  SUBCASE("K_{4,4} with s = 2, t = 3") {
    auto k44 = gen_complete(4, 4);
    auto res = iterate_extraction(k44, 2, 3);
    REQUIRE(std::holds_alternative<BicliqueWitness>(res.outcome));
    const auto& w = std::get<BicliqueWitness>(res.outcome);
    CHECK(w.s == 2);
    CHECK(w.t == 3);
    CHECK(verify_biclique(k44, w));
  }
  SUBCASE("PG(2,3) with s = 2, t = 1 never yields an invalid result") {
    auto pg3 = gen_projective_incidence(3);
    for (std::uint64_t s = 0; s < 5; ++s) {
      IterateOptions opts;
      opts.partition.seed = Seed{s};
      auto res = iterate_extraction(pg3, 2, 1, opts);
      if (auto* w = std::get_if<BicliqueWitness>(&res.outcome)) CHECK(verify_biclique(pg3, *w));
      if (auto* g6 = std::get_if<GirthSixOutcome>(&res.outcome)) {
        CHECK_FALSE(girth_six_violation(pg3, g6->selection, Rational(1)));
      }
    }
  }
  SUBCASE("the A-side must be R1(s,t)-regular") {
    auto fano = gen_projective_incidence(2);
    CHECK_THROWS_AS(iterate_extraction(fano, 2, 2), ParameterError);
  }
  SUBCASE("s = 2, t = 2 on a neighbourhood-regular instance recurses to a K_{2,2}") {
    // Block degree well above R, so A is several times larger than B.
    for (auto [d, na] : {std::pair<std::size_t, std::size_t>{27, 81}, {54, 108}}) {
      auto nr = gen_neighbourhood_regular({std::vector<std::size_t>(9, d), na}, Seed{3});
      for (std::uint64_t s = 0; s < 5; ++s) {
        IterateOptions opts;
        opts.partition.seed = Seed{s};
        opts.partition.initial = nr.blocks;
        auto res = iterate_extraction(nr.graph, 2, 2, opts);
        REQUIRE_FALSE(res.trace.empty());
        auto* w = std::get_if<BicliqueWitness>(&res.outcome);
        REQUIRE(w);
        CHECK(w->s_side == Side::B);
        CHECK(w->s == 2);
        CHECK(verify_biclique(nr.graph, *w));
      }
    }
  }
}
