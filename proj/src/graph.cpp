#include "bipgirth/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "bipgirth/errors.hpp"

namespace bipgirth {

const char* to_string(Side s) { return s == Side::A ? "A" : "B"; }

BipartiteGraph::BipartiteGraph(std::size_t n_a, std::size_t n_b, std::span<const Edge> edges)
    : adj_a_(n_a), adj_b_(n_b) {
  for (const auto& [a, b] : edges) {
    if (a >= n_a || b >= n_b) {
      throw GraphError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                       ") out of range for sides " + std::to_string(n_a) + " + " +
                       std::to_string(n_b));
    }
    adj_a_[a].push_back(b);
  }
  for (VertexId a = 0; a < n_a; ++a) {
    auto& list = adj_a_[a];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    edge_count_ += list.size();
    for (VertexId b : list) adj_b_[b].push_back(a);
  }
  // B lists are filled in increasing a order, so they are already sorted.
}

bool BipartiteGraph::has_edge(VertexId a, VertexId b) const {
  const auto& list = adj_a_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (VertexId a = 0; a < size_a(); ++a) {
    for (VertexId b : adj_a_[a]) out.emplace_back(a, b);
  }
  return out;
}

bool BipartiteGraph::check_invariants() const {
  std::size_t sum_a = 0;
  std::size_t sum_b = 0;
  std::vector<Edge> from_a;
  std::vector<Edge> from_b;
  for (VertexId a = 0; a < size_a(); ++a) {
    const auto& list = adj_a_[a];
    if (std::adjacent_find(list.begin(), list.end(), std::greater_equal<>()) != list.end()) return false;
    sum_a += list.size();
    for (VertexId b : list) {
      if (b >= size_b()) return false;
      from_a.emplace_back(a, b);
    }
  }
  for (VertexId b = 0; b < size_b(); ++b) {
    const auto& list = adj_b_[b];
    if (std::adjacent_find(list.begin(), list.end(), std::greater_equal<>()) != list.end()) return false;
    sum_b += list.size();
    for (VertexId a : list) {
      if (a >= size_a()) return false;
      from_b.emplace_back(a, b);
    }
  }
  if (sum_a != edge_count_ || sum_b != edge_count_) return false;
  std::sort(from_b.begin(), from_b.end());
  return from_a == from_b;
}

InducedSelection InducedSelection::make(std::vector<VertexId> a, std::vector<VertexId> b) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return InducedSelection{std::move(a), std::move(b)};
}

InducedSelection InducedSelection::full(const BipartiteGraph& g) {
  return InducedSelection{iota_ids(g.size_a()), iota_ids(g.size_b())};
}

InducedSelection InducedGraph::to_parent(const InducedSelection& local) const {
  std::vector<VertexId> a;
  std::vector<VertexId> b;
  a.reserve(local.a.size());
  b.reserve(local.b.size());
  for (VertexId v : local.a) a.push_back(parent_a.at(v));
  for (VertexId v : local.b) b.push_back(parent_b.at(v));
  // Parent maps are increasing, so order is preserved.
  return InducedSelection{std::move(a), std::move(b)};
}

namespace {

void validate_side(const std::vector<VertexId>& ids, std::size_t n, Side side) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= n) {
      throw GraphError(std::string("selection names ") + to_string(side) + "-vertex " +
                       std::to_string(ids[i]) + " but the side has " + std::to_string(n));
    }
    if (i > 0 && ids[i - 1] >= ids[i]) {
      throw GraphError(std::string("selection ") + to_string(side) +
                       "-side is not strictly increasing at position " + std::to_string(i));
    }
  }
}

}  // namespace

void validate_selection(const BipartiteGraph& g, const InducedSelection& sel) {
  validate_side(sel.a, g.size_a(), Side::A);
  validate_side(sel.b, g.size_b(), Side::B);
}

InducedGraph induced_subgraph(const BipartiteGraph& g, const InducedSelection& sel) {
  validate_selection(g, sel);
  constexpr VertexId kAbsent = static_cast<VertexId>(-1);
  std::vector<VertexId> local_b(g.size_b(), kAbsent);
  for (std::size_t i = 0; i < sel.b.size(); ++i) local_b[sel.b[i]] = static_cast<VertexId>(i);

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < sel.a.size(); ++i) {
    for (VertexId b : g.neighbours_a(sel.a[i])) {
      if (local_b[b] != kAbsent) edges.emplace_back(static_cast<VertexId>(i), local_b[b]);
    }
  }
  return InducedGraph{BipartiteGraph(sel.a.size(), sel.b.size(), edges), sel.a, sel.b};
}

DegreeStats degree_stats(const BipartiteGraph& g, Side side,
                         std::optional<std::span<const VertexId>> subset) {
  DegreeStats stats;
  std::int64_t total = 0;
  auto visit = [&](VertexId v) {
    if (v >= g.size(side)) {
      throw GraphError(std::string("degree_stats: ") + to_string(side) + "-vertex " +
                       std::to_string(v) + " out of range");
    }
    std::size_t d = g.degree(side, v);
    if (stats.count == 0) {
      stats.min_degree = stats.max_degree = d;
    } else {
      stats.min_degree = std::min(stats.min_degree, d);
      stats.max_degree = std::max(stats.max_degree, d);
    }
    total += static_cast<std::int64_t>(d);
    ++stats.count;
  };
  if (subset) {
    for (VertexId v : *subset) visit(v);
  } else {
    for (VertexId v = 0; v < g.size(side); ++v) visit(v);
  }
  if (stats.count > 0) stats.avg_degree = Rational(total, static_cast<std::int64_t>(stats.count));
  return stats;
}

Rational average_degree(const BipartiteGraph& g) {
  if (g.vertex_count() == 0) return Rational(0);
  return Rational(2 * static_cast<std::int64_t>(g.edge_count()),
                  static_cast<std::int64_t>(g.vertex_count()));
}

bool is_r_regular_side(const BipartiteGraph& g, Side side, std::span<const VertexId> subset,
                       std::size_t r) {
  if (subset.empty()) return false;
  return std::all_of(subset.begin(), subset.end(), [&](VertexId v) {
    return v < g.size(side) && g.degree(side, v) == r;
  });
}

bool is_r_regular_side(const BipartiteGraph& g, Side side, std::size_t r) {
  auto all = iota_ids(g.size(side));
  return is_r_regular_side(g, side, all, r);
}

std::vector<VertexId> iota_ids(std::size_t n) {
  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  return ids;
}

}  // namespace bipgirth
