#pragma once

#include <vector>

#include "bipgirth/graph.hpp"
#include "oracles.hpp"

namespace fixtures {

inline bipgirth::BipartiteGraph to_graph(const oracle::RawGraph& raw) {
  std::vector<bipgirth::Edge> edges(raw.edges.begin(), raw.edges.end());
  return bipgirth::BipartiteGraph(raw.na, raw.nb, edges);
}

inline oracle::RawGraph to_raw(const bipgirth::BipartiteGraph& g) {
  oracle::RawGraph raw;
  raw.na = g.size_a();
  raw.nb = g.size_b();
  for (const auto& e : g.edges()) raw.edges.insert(e);
  return raw;
}

/// Even cycle of length 2n: a_i ~ b_i and a_i ~ b_{i+1 mod n}.
inline bipgirth::BipartiteGraph cycle(std::size_t n) {
  std::vector<bipgirth::Edge> edges;
  for (bipgirth::VertexId i = 0; i < n; ++i) {
    edges.emplace_back(i, i);
    edges.emplace_back(i, static_cast<bipgirth::VertexId>((i + 1) % n));
  }
  return bipgirth::BipartiteGraph(n, n, edges);
}

/// Path a0 - b0 - a1 - b1 - ... on na + nb vertices (a tree).
inline bipgirth::BipartiteGraph path(std::size_t na) {
  std::vector<bipgirth::Edge> edges;
  for (bipgirth::VertexId i = 0; i < na; ++i) {
    edges.emplace_back(i, i);
    if (i + 1 < na) edges.emplace_back(i + 1, i);
  }
  return bipgirth::BipartiteGraph(na, na, edges);
}

}  // namespace fixtures
