#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bipgirth {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;  // (A-index, B-index)
using Rational = boost::rational<std::int64_t>;

enum class Side { A, B };

constexpr Side other(Side s) { return s == Side::A ? Side::B : Side::A; }
const char* to_string(Side s);

struct VertexRef {
  Side side;
  VertexId index;
  friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

/// Immutable simple bipartite graph with sorted adjacency on both sides.
///
/// Vertices are dense 0-based per side. Where a single index space is needed
/// (cycles, girth) A-vertex i is `i` and B-vertex j is `size_a() + j`.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  /// Duplicate edges are collapsed. Throws GraphError naming the first edge
  /// with an out-of-range endpoint.
  BipartiteGraph(std::size_t n_a, std::size_t n_b, std::span<const Edge> edges);

  std::size_t size_a() const { return adj_a_.size(); }
  std::size_t size_b() const { return adj_b_.size(); }
  std::size_t size(Side s) const { return s == Side::A ? size_a() : size_b(); }
  std::size_t vertex_count() const { return size_a() + size_b(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const VertexId> neighbours(Side s, VertexId v) const {
    return s == Side::A ? std::span<const VertexId>(adj_a_[v]) : std::span<const VertexId>(adj_b_[v]);
  }
  std::span<const VertexId> neighbours_a(VertexId a) const { return adj_a_[a]; }
  std::span<const VertexId> neighbours_b(VertexId b) const { return adj_b_[b]; }
  std::size_t degree(Side s, VertexId v) const { return neighbours(s, v).size(); }

  bool has_edge(VertexId a, VertexId b) const;

  /// All edges sorted by (a, b).
  std::vector<Edge> edges() const;

  VertexId unified(VertexRef v) const {
    return v.side == Side::A ? v.index : static_cast<VertexId>(size_a() + v.index);
  }
  VertexRef ref(VertexId unified_id) const {
    return unified_id < size_a() ? VertexRef{Side::A, unified_id}
                                 : VertexRef{Side::B, static_cast<VertexId>(unified_id - size_a())};
  }

  /// Both adjacency views describe the same edge set, lists strictly sorted,
  /// and the degree sums equal the edge count. O(m log m).
  bool check_invariants() const;

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  std::vector<std::vector<VertexId>> adj_a_;
  std::vector<std::vector<VertexId>> adj_b_;
  std::size_t edge_count_ = 0;
};

/// A pair of vertex subsets (A1, B1) naming the induced subgraph G[A1, B1].
/// Index lists are kept sorted and duplicate-free.
struct InducedSelection {
  std::vector<VertexId> a;
  std::vector<VertexId> b;

  static InducedSelection make(std::vector<VertexId> a, std::vector<VertexId> b);
  static InducedSelection full(const BipartiteGraph& g);

  std::size_t vertex_count() const { return a.size() + b.size(); }
  bool empty() const { return a.empty() && b.empty(); }
  friend bool operator==(const InducedSelection&, const InducedSelection&) = default;
};

/// A materialized induced subgraph, densely re-indexed, with maps to its parent.
struct InducedGraph {
  BipartiteGraph graph;
  std::vector<VertexId> parent_a;
  std::vector<VertexId> parent_b;

  /// Translate a selection of this subgraph into parent indices.
  InducedSelection to_parent(const InducedSelection& local) const;
  VertexId parent(Side s, VertexId v) const { return s == Side::A ? parent_a[v] : parent_b[v]; }
};

/// Throws GraphError when the selection is unsorted, has duplicates, or
/// names vertices outside the graph.
void validate_selection(const BipartiteGraph& g, const InducedSelection& sel);

InducedGraph induced_subgraph(const BipartiteGraph& g, const InducedSelection& sel);

struct DegreeStats {
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  Rational avg_degree{0};
  std::size_t count = 0;
  friend bool operator==(const DegreeStats&, const DegreeStats&) = default;
};

// Degrees are measured in `g` itself. To get degrees inside a selection,
// materialize it with induced_subgraph first.
DegreeStats degree_stats(const BipartiteGraph& g, Side side,
                         std::optional<std::span<const VertexId>> subset = std::nullopt);

/// 2|E| / |V|, or 0 for the empty graph.
Rational average_degree(const BipartiteGraph& g);

/// True iff the subset is non-empty and every member has degree exactly r.
bool is_r_regular_side(const BipartiteGraph& g, Side side, std::span<const VertexId> subset,
                       std::size_t r);
bool is_r_regular_side(const BipartiteGraph& g, Side side, std::size_t r);

/// Indices 0..n-1.
std::vector<VertexId> iota_ids(std::size_t n);

}  // namespace bipgirth
