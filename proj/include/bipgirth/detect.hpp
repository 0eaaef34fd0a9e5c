#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bipgirth/graph.hpp"

namespace bipgirth {

using BigInt = boost::multiprecision::cpp_int;

/// Shortest cycle length; nullopt stands for infinite girth (forests).
using Girth = std::optional<std::size_t>;

std::string girth_to_string(Girth g);

/// True iff the girth is at least `bound` (infinite girth always qualifies).
inline bool girth_at_least(Girth g, std::size_t bound) { return !g || *g >= bound; }

/// Exact girth by breadth-first search from every vertex.
Girth girth(const BipartiteGraph& g);

inline constexpr std::uint64_t kDefaultCycleCap = 10'000'000;

struct CycleCensus {
  std::size_t max_length = 0;
  std::map<std::size_t, std::uint64_t> counts;  // even lengths 4..max_length
  std::uint64_t total = 0;

  std::uint64_t count(std::size_t length) const {
    auto it = counts.find(length);
    return it == counts.end() ? 0 : it->second;
  }
};

/// A cycle as unified vertex ids in canonical form: the least vertex first,
/// then the direction whose second vertex is smaller.
using Cycle = std::vector<VertexId>;

/// Counts every cycle of length <= max_length once. Throws ParameterError for
/// odd or < 4 lengths and EnumerationCapExceeded past `cap` cycles (0 = no cap).
CycleCensus count_short_cycles(const BipartiteGraph& g, std::size_t max_length,
                               std::uint64_t cap = kDefaultCycleCap);

/// Same traversal as count_short_cycles, materializing each cycle.
std::vector<Cycle> enumerate_short_cycles(const BipartiteGraph& g, std::size_t max_length,
                                          std::uint64_t cap = kDefaultCycleCap);

/// Explicit K_{s,t}: `s` vertices on `s_side`, `t` on the other side.
struct BicliqueWitness {
  Side s_side = Side::A;
  std::size_t s = 0;
  std::size_t t = 0;
  std::vector<VertexId> a;
  std::vector<VertexId> b;

  const std::vector<VertexId>& side(Side which) const { return which == Side::A ? a : b; }
  friend bool operator==(const BicliqueWitness&, const BicliqueWitness&) = default;
};

/// Exact search for a K_{s,t} with the s-side on `s_side`. Returns nullopt only
/// when none exists; throws BudgetExceeded if `work_limit` (0 = unlimited)
/// search nodes are spent first.
std::optional<BicliqueWitness> find_biclique(const BipartiteGraph& g, std::size_t s, std::size_t t,
                                             Side s_side, std::uint64_t work_limit = 0);

/// First violated witness invariant, or nullopt when the witness is valid in g.
std::optional<std::string> biclique_violation(const BipartiteGraph& g, const BicliqueWitness& w);
inline bool verify_biclique(const BipartiteGraph& g, const BicliqueWitness& w) {
  return !biclique_violation(g, w);
}

/// Kővári–Sós–Turán: a K_{t,t}-free bipartite graph with `rows` and `cols`
/// vertices per side has at most
///   (t-1)^{1/t} (cols - t + 1) rows^{1-1/t} + (t-1) rows
/// edges. Returned as the exact floor of that value.
BigInt kst_edge_bound(std::uint64_t rows, std::uint64_t cols, std::uint64_t t);
inline BigInt kst_edge_bound(std::uint64_t n_per_side, std::uint64_t t) {
  return kst_edge_bound(n_per_side, n_per_side, t);
}

struct KstDiagnostic {
  bool applicable = false;  // sides large enough and the graph is K_{t,t}-free
  BigInt bound = 0;
  std::size_t edges = 0;
  bool violated = false;
};

/// Advisory check: a K_{t,t}-free graph above the bound signals a detector bug.
KstDiagnostic kst_diagnostic(const BipartiteGraph& g, std::size_t t, std::uint64_t work_limit = 0);

}  // namespace bipgirth
