#include <doctest.h>

#include <sstream>

#include "bipgirth/errors.hpp"
#include "bipgirth/graph.hpp"
#include "bipgirth/graph_io.hpp"
#include "bipgirth/random.hpp"
#include "fixtures.hpp"

using namespace bipgirth;

TEST_CASE("build K_{2,2} and edgeless graphs") {
  std::vector<Edge> k22{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  BipartiteGraph g(2, 2, k22);
  CHECK(g.edge_count() == 4);
  CHECK(g.check_invariants());

  BipartiteGraph empty(1, 1, {});
  CHECK(empty.edge_count() == 0);
  CHECK(average_degree(empty) == Rational(0));
}

TEST_CASE("K_{3,3} has every degree 3") {
  std::vector<Edge> all;
  for (VertexId a = 0; a < 3; ++a)
    for (VertexId b = 0; b < 3; ++b) all.emplace_back(a, b);
  BipartiteGraph g(3, 3, all);
  for (VertexId v = 0; v < 3; ++v) {
    CHECK(g.degree(Side::A, v) == 3);
    CHECK(g.degree(Side::B, v) == 3);
  }
}

TEST_CASE("duplicate edges collapse, out-of-range edges are named") {
  std::vector<Edge> dup{{0, 0}, {0, 0}, {1, 0}};
  BipartiteGraph g(2, 1, dup);
  CHECK(g.edge_count() == 2);

  std::vector<Edge> bad{{0, 0}, {0, 7}};
  try {
    BipartiteGraph(2, 2, bad);
    FAIL("expected GraphError");
  } catch (const GraphError& e) {
    CHECK(std::string(e.what()).find("(0, 7)") != std::string::npos);
  }
}

TEST_CASE("induced subgraph examples") {
  std::vector<Edge> all;
  for (VertexId a = 0; a < 3; ++a)
    for (VertexId b = 0; b < 3; ++b) all.emplace_back(a, b);
  BipartiteGraph k33(3, 3, all);

  auto k22 = induced_subgraph(k33, InducedSelection{{0, 1}, {0, 1}});
  CHECK(k22.graph.edge_count() == 4);
  CHECK(k22.parent_a == std::vector<VertexId>{0, 1});

  auto no_a = induced_subgraph(k33, InducedSelection{{}, {0, 1, 2}});
  CHECK(no_a.graph.size_a() == 0);
  CHECK(no_a.graph.edge_count() == 0);

  // 6-cycle minus one A-vertex is a path on 5 vertices.
  auto c6 = fixtures::cycle(3);
  auto p5 = induced_subgraph(c6, InducedSelection{{1, 2}, {0, 1, 2}});
  CHECK(p5.graph.vertex_count() == 5);
  CHECK(p5.graph.edge_count() == 4);
}

TEST_CASE("selections must be sorted, unique and in range") {
  auto g = fixtures::cycle(3);
  CHECK_THROWS_AS(validate_selection(g, InducedSelection{{1, 0}, {}}), GraphError);
  CHECK_THROWS_AS(validate_selection(g, InducedSelection{{0, 0}, {}}), GraphError);
  CHECK_THROWS_AS(validate_selection(g, InducedSelection{{}, {3}}), GraphError);
  CHECK_NOTHROW(validate_selection(g, InducedSelection::make({2, 0, 2}, {1})));
}

TEST_CASE("degree stats") {
  std::vector<Edge> all;
  for (VertexId a = 0; a < 3; ++a)
    for (VertexId b = 0; b < 3; ++b) all.emplace_back(a, b);
  BipartiteGraph k33(3, 3, all);
  auto full = degree_stats(k33, Side::A);
  CHECK(full.min_degree == 3);
  CHECK(full.max_degree == 3);
  CHECK(full.avg_degree == Rational(3));

  std::vector<VertexId> none;
  auto empty = degree_stats(k33, Side::A, std::span<const VertexId>(none));
  CHECK(empty.min_degree == 0);
  CHECK(empty.max_degree == 0);
  CHECK(empty.avg_degree == Rational(0));

  std::vector<Edge> star{{0, 0}, {0, 1}, {0, 2}, {0, 3}};
  BipartiteGraph k14(1, 4, star);
  CHECK(degree_stats(k14, Side::A) == DegreeStats{4, 4, Rational(4), 1});
  CHECK(degree_stats(k14, Side::B) == DegreeStats{1, 1, Rational(1), 4});
}

TEST_CASE("r-regular sides") {
  std::vector<Edge> all;
  for (VertexId a = 0; a < 3; ++a)
    for (VertexId b = 0; b < 3; ++b) all.emplace_back(a, b);
  BipartiteGraph k33(3, 3, all);
  CHECK(is_r_regular_side(k33, Side::A, 3));
  std::vector<VertexId> none;
  CHECK_FALSE(is_r_regular_side(k33, Side::A, none, 3));

  std::vector<Edge> p{{0, 0}, {1, 0}};  // a - b - a'
  BipartiteGraph path(2, 1, p);
  CHECK(is_r_regular_side(path, Side::A, 1));
  CHECK_FALSE(is_r_regular_side(path, Side::B, 1));
}

TEST_CASE("property: random graphs keep their invariants and survive a text round trip") {
  oracle::SplitMix rng(20240601);
  for (int trial = 0; trial < 200; ++trial) {
    auto raw = oracle::random_graph(rng, 12, 12, 0.0, 0.6);
    auto g = fixtures::to_graph(raw);
    REQUIRE(g.check_invariants());
    CHECK(g.edge_count() == raw.edges.size());
    std::size_t sum_a = 0, sum_b = 0;
    for (VertexId a = 0; a < g.size_a(); ++a) sum_a += g.degree(Side::A, a);
    for (VertexId b = 0; b < g.size_b(); ++b) sum_b += g.degree(Side::B, b);
    CHECK(sum_a == g.edge_count());
    CHECK(sum_b == g.edge_count());

    std::stringstream ss;
    write_graph(ss, g);
    CHECK(read_graph(ss) == g);

    // Induced subgraphs keep exactly the parent edges among the kept vertices.
    std::vector<VertexId> sa, sb;
    for (VertexId a = 0; a < g.size_a(); ++a)
      if (rng.unit() < 0.5) sa.push_back(a);
    for (VertexId b = 0; b < g.size_b(); ++b)
      if (rng.unit() < 0.5) sb.push_back(b);
    auto sub = induced_subgraph(g, InducedSelection{sa, sb});
    std::size_t expected = 0;
    for (VertexId a : sa)
      for (VertexId b : sb) expected += raw.adj(a, b);
    CHECK(sub.graph.edge_count() == expected);
    for (const auto& [a, b] : sub.graph.edges()) CHECK(g.has_edge(sub.parent_a[a], sub.parent_b[b]));
  }
}

TEST_CASE("graph parser reports line numbers") {
  std::istringstream missing("bip 2 2 2\ne 0 0\n");
  CHECK_THROWS_AS(read_graph(missing), GraphError);

  std::istringstream junk("# header comment\nbip 2 2 1\n\nx 0 0\n");
  try {
    read_graph(junk);
    FAIL("expected GraphError");
  } catch (const GraphError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }

  std::istringstream range("bip 1 1 1\ne 0 3\n");
  CHECK_THROWS_AS(read_graph(range), GraphError);
}

TEST_CASE("selection and block sidecar round trips") {
  InducedSelection sel{{0, 3, 5}, {1}};
  std::stringstream ss;
  write_selection(ss, sel);
  CHECK(read_selection(ss) == sel);

  BlockList blocks{{0, 2}, {}, {1}};
  std::stringstream bs;
  write_blocks(bs, blocks);
  CHECK(read_blocks(bs) == blocks);
}

TEST_CASE("seeded generator is reproducible and derived streams differ") {
  Rng a(Seed{42}), b(Seed{42});
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(derive_seed(Seed{1}, 0) != derive_seed(Seed{1}, 1));
  CHECK(derive_seed(Seed{1}, 0) != derive_seed(Seed{2}, 0));

  Rng r(Seed{7});
  for (int i = 0; i < 1000; ++i) {
    CHECK(r.below(13) < 13);
    double u = r.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  std::vector<int> items{1, 2, 3, 4, 5, 6};
  r.shuffle(items);
  std::sort(items.begin(), items.end());
  CHECK(items == std::vector<int>{1, 2, 3, 4, 5, 6});
}
