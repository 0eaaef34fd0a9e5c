#include "bipgirth/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "bipgirth/errors.hpp"

namespace bipgirth {

std::string girth_to_string(Girth g) { return g ? std::to_string(*g) : "Infinity"; }

namespace {

using Adjacency = std::vector<std::vector<VertexId>>;

Adjacency unified_adjacency(const BipartiteGraph& g) {
  Adjacency adj(g.vertex_count());
  const auto offset = static_cast<VertexId>(g.size_a());
  for (VertexId a = 0; a < g.size_a(); ++a) {
    for (VertexId b : g.neighbours_a(a)) adj[a].push_back(offset + b);
  }
  for (VertexId b = 0; b < g.size_b(); ++b) {
    for (VertexId a : g.neighbours_b(b)) adj[offset + b].push_back(a);
  }
  return adj;
}

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

}  // namespace

Girth girth(const BipartiteGraph& g) {
  const auto adj = unified_adjacency(g);
  const std::size_t n = adj.size();
  std::size_t best = kUnreached;
  std::vector<std::size_t> dist(n, kUnreached);
  std::vector<VertexId> parent(n);
  std::vector<VertexId> touched;
  std::queue<VertexId> queue;

  for (VertexId root = 0; root < n; ++root) {
    for (VertexId v : touched) dist[v] = kUnreached;
    touched.clear();
    dist[root] = 0;
    parent[root] = root;
    touched.push_back(root);
    queue.push(root);
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop();
      // Any cycle closed from here is at least 2*dist[u] long.
      if (best != kUnreached && 2 * dist[u] >= best) break;
      for (VertexId w : adj[u]) {
        if (dist[w] == kUnreached) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          touched.push_back(w);
          queue.push(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
    queue = {};
  }
  if (best == kUnreached) return std::nullopt;
  return best;
}

namespace {

void check_cycle_length(std::size_t max_length) {
  if (max_length < 4 || max_length % 2 != 0) {
    throw ParameterError("cycle length bound must be even and at least 4, got " +
                         std::to_string(max_length));
  }
}

// Enumerates each cycle of length <= max_length exactly once: the cycle is
// rooted at its least vertex, uses only larger vertices elsewhere, and is kept
// in the orientation whose second vertex is smaller than its last.
template <class OnCycle>
void for_each_short_cycle(const BipartiteGraph& g, std::size_t max_length, std::uint64_t cap,
                          OnCycle&& on_cycle) {
  check_cycle_length(max_length);
  const auto adj = unified_adjacency(g);
  const std::size_t n = adj.size();
  std::vector<std::size_t> dist(n, kUnreached);
  std::vector<char> on_path(n, 0);
  std::vector<VertexId> path;
  std::vector<VertexId> touched;
  std::uint64_t found = 0;
  const std::size_t horizon = max_length / 2;

  for (VertexId root = 0; root < n; ++root) {
    // Distances back to the root through vertices > root, used to prune
    // paths that cannot close within the length bound.
    for (VertexId v : touched) dist[v] = kUnreached;
    touched.clear();
    std::queue<VertexId> queue;
    dist[root] = 0;
    touched.push_back(root);
    queue.push(root);
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop();
      if (dist[u] == horizon) continue;
      for (VertexId w : adj[u]) {
        if (w > root && dist[w] == kUnreached) {
          dist[w] = dist[u] + 1;
          touched.push_back(w);
          queue.push(w);
        }
      }
    }

    path.assign(1, root);
    on_path[root] = 1;
    // Iterative DFS: each frame remembers the next neighbour to try.
    std::vector<std::size_t> cursor(1, 0);
    while (!cursor.empty()) {
      VertexId u = path.back();
      std::size_t& next = cursor.back();
      if (next == adj[u].size()) {
        on_path[u] = 0;
        path.pop_back();
        cursor.pop_back();
        continue;
      }
      VertexId w = adj[u][next++];
      if (w == root) {
        if (path.size() >= 4 && path[1] < path.back()) {
          if (cap != 0 && found >= cap) {
            throw EnumerationCapExceeded("short-cycle enumeration exceeded cap of " +
                                         std::to_string(cap) + " cycles");
          }
          ++found;
          on_cycle(path);
        }
        continue;
      }
      if (w < root || on_path[w] || dist[w] == kUnreached) continue;
      if (path.size() + dist[w] > max_length) continue;
      path.push_back(w);
      on_path[w] = 1;
      cursor.push_back(0);
    }
  }
}

}  // namespace

CycleCensus count_short_cycles(const BipartiteGraph& g, std::size_t max_length, std::uint64_t cap) {
  CycleCensus census;
  census.max_length = max_length;
  for_each_short_cycle(g, max_length, cap, [&](const std::vector<VertexId>& cycle) {
    ++census.counts[cycle.size()];
    ++census.total;
  });
  for (std::size_t len = 4; len <= max_length; len += 2) census.counts.try_emplace(len, 0);
  return census;
}

std::vector<Cycle> enumerate_short_cycles(const BipartiteGraph& g, std::size_t max_length,
                                          std::uint64_t cap) {
  std::vector<Cycle> cycles;
  for_each_short_cycle(g, max_length, cap,
                       [&](const std::vector<VertexId>& cycle) { cycles.push_back(cycle); });
  return cycles;
}

namespace {

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

class BicliqueSearch {
 public:
  BicliqueSearch(const BipartiteGraph& g, Side pick_side, std::size_t pick, std::size_t need,
                 std::vector<char> alive_pick, std::vector<char> alive_other,
                 std::uint64_t work_limit)
      : g_(g),
        pick_side_(pick_side),
        pick_(pick),
        need_(need),
        alive_other_(std::move(alive_other)),
        work_limit_(work_limit) {
    for (VertexId v = 0; v < alive_pick.size(); ++v) {
      if (alive_pick[v]) candidates_.push_back(v);
    }
  }

  /// On success fills `chosen` (pick side) and `common` (other side).
  bool run(std::vector<VertexId>& chosen, std::vector<VertexId>& common) {
    std::vector<VertexId> all;
    for (VertexId v = 0; v < alive_other_.size(); ++v) {
      if (alive_other_[v]) all.push_back(v);
    }
    chosen_.clear();
    if (!extend(0, all)) return false;
    chosen = chosen_;
    common = result_common_;
    return true;
  }

 private:
  bool extend(std::size_t from, const std::vector<VertexId>& common) {
    if (work_limit_ != 0 && ++work_ > work_limit_) {
      throw BudgetExceeded("search budget exceeded after " + std::to_string(work_limit_) +
                           " nodes");
    }
    if (chosen_.size() == pick_) {
      result_common_ = common;
      return true;
    }
    const std::size_t remaining = pick_ - chosen_.size();
    for (std::size_t i = from; i + remaining <= candidates_.size(); ++i) {
      VertexId v = candidates_[i];
      auto nbrs = g_.neighbours(pick_side_, v);
      std::vector<VertexId> next;
      std::set_intersection(common.begin(), common.end(), nbrs.begin(), nbrs.end(),
                            std::back_inserter(next));
      if (next.size() < need_) continue;
      chosen_.push_back(v);
      if (extend(i + 1, next)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const BipartiteGraph& g_;
  Side pick_side_;
  std::size_t pick_;
  std::size_t need_;
  std::vector<char> alive_other_;
  std::vector<VertexId> candidates_;
  std::vector<VertexId> chosen_;
  std::vector<VertexId> result_common_;
  std::uint64_t work_limit_;
  std::uint64_t work_ = 0;
};

}  // namespace

std::optional<BicliqueWitness> find_biclique(const BipartiteGraph& g, std::size_t s, std::size_t t,
                                             Side s_side, std::uint64_t work_limit) {
  if (s == 0 || t == 0) throw ParameterError("biclique sides must be at least 1");
  const Side t_side = other(s_side);

  // Peel vertices that cannot belong to any K_{s,t} of this orientation.
  std::vector<char> alive_s(g.size(s_side), 1);
  std::vector<char> alive_t(g.size(t_side), 1);
  std::vector<std::size_t> deg_s(g.size(s_side));
  std::vector<std::size_t> deg_t(g.size(t_side));
  for (VertexId v = 0; v < deg_s.size(); ++v) deg_s[v] = g.degree(s_side, v);
  for (VertexId v = 0; v < deg_t.size(); ++v) deg_t[v] = g.degree(t_side, v);
  std::vector<std::pair<Side, VertexId>> stack;
  auto kill = [&](Side side, VertexId v) {
    auto& alive = side == s_side ? alive_s : alive_t;
    if (!alive[v]) return;
    alive[v] = 0;
    stack.emplace_back(side, v);
  };
  for (VertexId v = 0; v < deg_s.size(); ++v) {
    if (deg_s[v] < t) kill(s_side, v);
  }
  for (VertexId v = 0; v < deg_t.size(); ++v) {
    if (deg_t[v] < s) kill(t_side, v);
  }
  while (!stack.empty()) {
    auto [side, v] = stack.back();
    stack.pop_back();
    for (VertexId w : g.neighbours(side, v)) {
      if (side == s_side) {
        if (alive_t[w] && --deg_t[w] < s) kill(t_side, w);
      } else {
        if (alive_s[w] && --deg_s[w] < t) kill(s_side, w);
      }
    }
  }
  const auto n_s = static_cast<std::size_t>(std::count(alive_s.begin(), alive_s.end(), 1));
  const auto n_t = static_cast<std::size_t>(std::count(alive_t.begin(), alive_t.end(), 1));
  if (n_s < s || n_t < t) return std::nullopt;

  // Enumerate subsets on whichever side has fewer candidate subsets; ties go to A.
  const double cost_s = log_binomial(n_s, s);
  const double cost_t = log_binomial(n_t, t);
  bool pick_s_side;
  if (std::abs(cost_s - cost_t) < 1e-9) {
    pick_s_side = s_side == Side::A;
  } else {
    pick_s_side = cost_s < cost_t;
  }

  std::vector<VertexId> chosen, common;
  bool found;
  if (pick_s_side) {
    BicliqueSearch search(g, s_side, s, t, alive_s, alive_t, work_limit);
    found = search.run(chosen, common);
  } else {
    BicliqueSearch search(g, t_side, t, s, alive_t, alive_s, work_limit);
    found = search.run(chosen, common);
  }
  if (!found) return std::nullopt;

  std::vector<VertexId>& s_members = pick_s_side ? chosen : common;
  std::vector<VertexId>& t_members = pick_s_side ? common : chosen;
  s_members.resize(s);
  t_members.resize(t);
  BicliqueWitness w;
  w.s_side = s_side;
  w.s = s;
  w.t = t;
  if (s_side == Side::A) {
    w.a = std::move(s_members);
    w.b = std::move(t_members);
  } else {
    w.b = std::move(s_members);
    w.a = std::move(t_members);
  }
  return w;
}

std::optional<std::string> biclique_violation(const BipartiteGraph& g, const BicliqueWitness& w) {
  const std::size_t want_a = w.s_side == Side::A ? w.s : w.t;
  const std::size_t want_b = w.s_side == Side::A ? w.t : w.s;
  if (w.s == 0 || w.t == 0) return "witness sides must be non-empty";
  if (w.a.size() != want_a) {
    return "A-side lists " + std::to_string(w.a.size()) + " vertices, expected " +
           std::to_string(want_a);
  }
  if (w.b.size() != want_b) {
    return "B-side lists " + std::to_string(w.b.size()) + " vertices, expected " +
           std::to_string(want_b);
  }
  for (VertexId a : w.a) {
    if (a >= g.size_a()) return "A-vertex " + std::to_string(a) + " out of range";
  }
  for (VertexId b : w.b) {
    if (b >= g.size_b()) return "B-vertex " + std::to_string(b) + " out of range";
  }
  if (std::set<VertexId>(w.a.begin(), w.a.end()).size() != w.a.size()) {
    return "A-side repeats a vertex";
  }
  if (std::set<VertexId>(w.b.begin(), w.b.end()).size() != w.b.size()) {
    return "B-side repeats a vertex";
  }
  for (VertexId a : w.a) {
    for (VertexId b : w.b) {
      if (!g.has_edge(a, b)) {
        return "missing edge (" + std::to_string(a) + ", " + std::to_string(b) + ")";
      }
    }
  }
  return std::nullopt;
}

namespace {

/// Largest y with y^k <= x.
BigInt integer_root(const BigInt& x, unsigned k) {
  if (x < 2 || k == 1) return x;
  BigInt lo = 0;
  BigInt hi = 1;
  while (boost::multiprecision::pow(hi, k) <= x) hi *= 2;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, k) <= x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

BigInt kst_edge_bound(std::uint64_t rows, std::uint64_t cols, std::uint64_t t) {
  if (t == 0) throw ParameterError("kst_edge_bound: t must be at least 1");
  if (rows < t || cols < t) {
    throw ParameterError("kst_edge_bound: each side needs at least t = " + std::to_string(t) +
                         " vertices");
  }
  if (t > 64) throw ParameterError("kst_edge_bound: t above 64 is not supported");
  const auto k = static_cast<unsigned>(t);
  // floor((cols-t+1) * ((t-1) rows^{t-1})^{1/t}) is the largest y with
  // y^t <= (cols-t+1)^t (t-1) rows^{t-1}.
  BigInt radicand = boost::multiprecision::pow(BigInt(cols - t + 1), k) * BigInt(t - 1) *
                    boost::multiprecision::pow(BigInt(rows), k - 1);
  return integer_root(radicand, k) + BigInt(t - 1) * BigInt(rows);
}

KstDiagnostic kst_diagnostic(const BipartiteGraph& g, std::size_t t, std::uint64_t work_limit) {
  KstDiagnostic diag;
  diag.edges = g.edge_count();
  if (t == 0 || g.size_a() < t || g.size_b() < t) return diag;
  if (find_biclique(g, t, t, Side::A, work_limit)) return diag;
  diag.applicable = true;
  diag.bound = std::min(kst_edge_bound(g.size_a(), g.size_b(), t),
                        kst_edge_bound(g.size_b(), g.size_a(), t));
  diag.violated = BigInt(diag.edges) > diag.bound;
  return diag;
}

}  // namespace bipgirth
