#include "bipgirth/girth6.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>

#include "bipgirth/errors.hpp"

namespace bipgirth {

namespace {

constexpr std::uint32_t kNoBlock = std::numeric_limits<std::uint32_t>::max();

using BPair = std::pair<VertexId, VertexId>;
using BlockPair = std::pair<std::size_t, std::size_t>;

/// Common neighbours inside `core` of every cross-block B-pair that has one.
/// Pairs ascend; realizers of pairs[i] are realizers[offsets[i] .. offsets[i+1]).
struct CommonNeighbours {
  std::vector<BPair> pairs;
  std::vector<std::size_t> offsets{0};
  std::vector<VertexId> realizers;

  std::size_t count(std::size_t i) const { return offsets[i + 1] - offsets[i]; }
  std::span<const VertexId> of(std::size_t i) const {
    return std::span<const VertexId>(realizers).subspan(offsets[i], count(i));
  }
};

CommonNeighbours cross_common_neighbours(const BipartiteGraph& g, const std::vector<std::uint32_t>& label,
                                         std::span<const VertexId> core) {
  std::vector<std::array<VertexId, 3>> triples;  // (b1, b2, a)
  std::size_t bound = 0;
  for (VertexId a : core) bound += g.degree(Side::A, a) * (g.degree(Side::A, a) - (g.degree(Side::A, a) > 0)) / 2;
  triples.reserve(bound);
  for (VertexId a : core) {
    auto nbrs = g.neighbours_a(a);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (label[nbrs[i]] != label[nbrs[j]]) triples.push_back({nbrs[i], nbrs[j], a});
      }
    }
  }
  std::sort(triples.begin(), triples.end());
  CommonNeighbours out;
  out.realizers.reserve(triples.size());
  for (std::size_t k = 0; k < triples.size(); ++k) {
    if (k == 0 || triples[k][0] != triples[k - 1][0] || triples[k][1] != triples[k - 1][1]) {
      if (k > 0) out.offsets.push_back(k);
      out.pairs.emplace_back(triples[k][0], triples[k][1]);
    }
    out.realizers.push_back(triples[k][2]);
  }
  if (!triples.empty()) out.offsets.push_back(triples.size());
  return out;
}

struct PairCounts {
  std::vector<BPair> pairs;  // ascending
  std::vector<std::size_t> counts;
};

PairCounts counts_of(const CommonNeighbours& common) {
  PairCounts out{common.pairs, {}};
  for (std::size_t i = 0; i < common.pairs.size(); ++i) out.counts.push_back(common.count(i));
  return out;
}

/// Same pairs and counts as cross_common_neighbours, without realizer lists.
PairCounts cross_common_counts(const BipartiteGraph& g, const std::vector<std::uint32_t>& label,
                               std::span<const VertexId> core) {
  const std::size_t nb = g.size_b();
  if (nb > 512) return counts_of(cross_common_neighbours(g, label, core));
  std::vector<std::uint32_t> dense(nb * nb, 0);
  for (VertexId a : core) {
    auto nbrs = g.neighbours_a(a);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (label[nbrs[i]] != label[nbrs[j]]) ++dense[nbrs[i] * nb + nbrs[j]];
      }
    }
  }
  PairCounts out;
  for (std::size_t k = 0; k < dense.size(); ++k) {
    if (dense[k] == 0) continue;
    out.pairs.emplace_back(static_cast<VertexId>(k / nb), static_cast<VertexId>(k % nb));
    out.counts.push_back(dense[k]);
  }
  return out;
}

BlockPair block_pair_of(const BPair& p, const std::vector<std::uint32_t>& label) {
  std::size_t x = label[p.first];
  std::size_t y = label[p.second];
  return {std::min(x, y), std::max(x, y)};
}

struct PairSummary {
  std::size_t max_common = 0;
  std::size_t min_common = std::numeric_limits<std::size_t>::max();
  BPair max_witness{};
  BPair min_witness{};
};

/// Per block pair (ascending) that has at least one common-neighbour cross pair.
std::vector<std::pair<BlockPair, PairSummary>> summarize(const PairCounts& common,
                                                         const std::vector<std::uint32_t>& label,
                                                         std::size_t r) {
  std::vector<PairSummary> dense(r * r);
  std::vector<char> seen(r * r, 0);
  for (std::size_t i = 0; i < common.pairs.size(); ++i) {
    const auto [x, y] = block_pair_of(common.pairs[i], label);
    auto& s = dense[x * r + y];
    seen[x * r + y] = 1;
    const std::size_t n = common.counts[i];
    if (n > s.max_common) {
      s.max_common = n;
      s.max_witness = common.pairs[i];
    }
    if (n < s.min_common) {
      s.min_common = n;
      s.min_witness = common.pairs[i];
    }
  }
  std::vector<std::pair<BlockPair, PairSummary>> out;
  for (std::size_t k = 0; k < dense.size(); ++k) {
    if (seen[k]) out.emplace_back(BlockPair{k / r, k % r}, dense[k]);
  }
  return out;
}

bool violates(const PairSummary& s, std::size_t t) { return s.max_common >= 2 && s.min_common < t; }

bool meets_every_block(const BipartiteGraph& g, VertexId a, const std::vector<std::uint32_t>& label,
                       std::size_t r, std::vector<char>& scratch) {
  scratch.assign(r, 0);
  std::size_t distinct = 0;
  for (VertexId b : g.neighbours_a(a)) {
    if (!scratch[label[b]]) {
      scratch[label[b]] = 1;
      ++distinct;
    }
  }
  return distinct == r;
}

/// Labels B by block; throws GraphError unless the blocks partition B.
std::vector<std::uint32_t> label_blocks(const BipartiteGraph& g, const BlockList& blocks) {
  std::vector<std::uint32_t> label(g.size_b(), kNoBlock);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (VertexId b : blocks[i]) {
      if (b >= g.size_b()) {
        throw GraphError("partition names B-vertex " + std::to_string(b) + " outside the graph");
      }
      if (label[b] != kNoBlock) {
        throw GraphError("B-vertex " + std::to_string(b) + " appears in blocks " +
                         std::to_string(label[b]) + " and " + std::to_string(i));
      }
      label[b] = static_cast<std::uint32_t>(i);
    }
  }
  for (VertexId b = 0; b < g.size_b(); ++b) {
    if (label[b] == kNoBlock) {
      throw GraphError("B-vertex " + std::to_string(b) + " is in no block");
    }
  }
  return label;
}

/// Shrinks `core` until the neighbourly rule holds. For the first violating
/// block pair, drops either the realizers of its weak pairs (< t common
/// neighbours) or those of its pairs with >= 2, whichever set is smaller.
std::vector<VertexId> prune_core(const BipartiteGraph& g, const std::vector<std::uint32_t>& label,
                                 std::size_t r, std::size_t t, std::vector<VertexId> core) {
  for (;;) {
    auto common = cross_common_neighbours(g, label, core);
    auto summary = summarize(counts_of(common), label, r);
    auto bad = std::find_if(summary.begin(), summary.end(),
                            [&](const auto& kv) { return violates(kv.second, t); });
    if (bad == summary.end()) return core;

    std::set<VertexId> weak_realizers;
    std::set<VertexId> strong_realizers;
    for (std::size_t i = 0; i < common.pairs.size(); ++i) {
      if (block_pair_of(common.pairs[i], label) != bad->first) continue;
      auto realizers = common.of(i);
      if (realizers.size() < t) weak_realizers.insert(realizers.begin(), realizers.end());
      if (realizers.size() >= 2) strong_realizers.insert(realizers.begin(), realizers.end());
    }
    const auto& doomed =
        weak_realizers.size() <= strong_realizers.size() ? weak_realizers : strong_realizers;
    std::erase_if(core, [&](VertexId a) { return doomed.count(a) > 0; });
  }
}

std::vector<VertexId> covering_core(const BipartiteGraph& g, std::span<const VertexId> a_set,
                                    const std::vector<std::uint32_t>& label, std::size_t r) {
  std::vector<VertexId> core;
  std::vector<char> scratch;
  for (VertexId a : a_set) {
    if (meets_every_block(g, a, label, r, scratch)) core.push_back(a);
  }
  return core;
}

BlockList blocks_from_labels(const std::vector<std::uint32_t>& label, std::size_t r) {
  BlockList blocks(r);
  for (VertexId b = 0; b < label.size(); ++b) blocks[label[b]].push_back(b);
  return blocks;
}

}  // namespace

RTReport verify_rt_partition(const BipartiteGraph& g, const RTPartition& part) {
  if (part.r == 0 || part.t == 0) throw GraphError("partition needs r >= 1 and t >= 1");
  if (part.blocks.size() != part.r) {
    throw GraphError("partition has " + std::to_string(part.blocks.size()) + " blocks, expected r = " +
                     std::to_string(part.r));
  }
  const auto label = label_blocks(g, part.blocks);
  for (std::size_t i = 0; i < part.a_core.size(); ++i) {
    if (part.a_core[i] >= g.size_a()) {
      throw GraphError("core names A-vertex " + std::to_string(part.a_core[i]) + " outside the graph");
    }
    if (i > 0 && part.a_core[i - 1] >= part.a_core[i]) {
      throw GraphError("core A-vertices must be strictly increasing");
    }
  }

  RTReport report;
  std::vector<char> scratch;
  for (VertexId a : part.a_core) {
    if (!meets_every_block(g, a, label, part.r, scratch)) {
      report.uncovered.push_back(a);
      report.violations.push_back("A-vertex " + std::to_string(a) + " misses a block");
    }
  }
  const auto summary = summarize(cross_common_counts(g, label, part.a_core), label, part.r);
  for (const auto& [blocks, s] : summary) {
    if (!violates(s, part.t)) continue;
    report.bad_pairs.push_back(blocks);
    report.violations.push_back(
        "blocks " + std::to_string(blocks.first) + "," + std::to_string(blocks.second) +
        ": B-vertices " + std::to_string(s.max_witness.first) + "," +
        std::to_string(s.max_witness.second) + " share " + std::to_string(s.max_common) +
        " neighbours but " + std::to_string(s.min_witness.first) + "," +
        std::to_string(s.min_witness.second) + " share only " + std::to_string(s.min_common));
  }
  report.pass = report.violations.empty();
  return report;
}

PartitionSearchResult find_rt_partition(const BipartiteGraph& g, std::span<const VertexId> a_set,
                                        std::size_t r, std::size_t t,
                                        const PartitionSearchOptions& options) {
  if (r == 0 || t == 0) throw ParameterError("find_rt_partition: r and t must be >= 1");
  if (!is_r_regular_side(g, Side::A, a_set, r)) {
    throw ParameterError("find_rt_partition: the A-set is not " + std::to_string(r) + "-regular");
  }
  PartitionSearchResult result;
  std::vector<VertexId> best_core;
  std::vector<std::uint32_t> best_label;
  const std::size_t n_b = g.size_b();

  if (options.mode == PartitionMode::Exact) {
    // r^|B| colourings, counted without overflow.
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n_b; ++i) {
      if (total > options.exact_limit / r) {
        throw ParameterError("find_rt_partition: exact mode needs r^|B| <= " +
                             std::to_string(options.exact_limit));
      }
      total *= r;
    }
    std::vector<std::uint32_t> label(n_b, 0);
    for (std::uint64_t code = 0; code < total; ++code) {
      ++result.candidates;
      auto core = covering_core(g, a_set, label, r);
      if (core.size() > best_core.size()) {
        core = prune_core(g, label, r, t, std::move(core));
        if (core.size() > best_core.size()) {
          best_core = std::move(core);
          best_label = label;
        }
      }
      for (std::size_t i = 0; i < n_b; ++i) {
        if (++label[i] < r) break;
        label[i] = 0;
      }
    }
  } else {
    Rng rng(options.seed);
    std::vector<char> in_set(g.size_a(), 0);
    for (VertexId a : a_set) in_set[a] = 1;
    for (std::size_t restart = 0; restart < options.restarts; ++restart) {
      ++result.candidates;
      std::vector<std::uint32_t> label(n_b);
      if (restart == 0 && options.initial) {
        if (options.initial->size() != r) {
          throw ParameterError("find_rt_partition: initial partition must have r blocks");
        }
        label = label_blocks(g, *options.initial);
      } else {
        for (auto& l : label) l = static_cast<std::uint32_t>(rng.below(r));
      }

      // Per-vertex block histogram; a vertex is "rainbow" when it meets all r blocks.
      std::vector<std::vector<std::uint32_t>> hist(g.size_a());
      std::vector<std::size_t> distinct(g.size_a(), 0);
      std::vector<VertexId> bad;
      std::vector<char> in_bad(g.size_a(), 0);
      for (VertexId a : a_set) {
        hist[a].assign(r, 0);
        for (VertexId b : g.neighbours_a(a)) {
          if (hist[a][label[b]]++ == 0) ++distinct[a];
        }
        if (distinct[a] < r) {
          bad.push_back(a);
          in_bad[a] = 1;
        }
      }

      for (std::size_t it = 0; it < options.iterations && !bad.empty(); ++it) {
        std::size_t pos = static_cast<std::size_t>(rng.below(bad.size()));
        VertexId a = bad[pos];
        if (distinct[a] == r) {
          in_bad[a] = 0;
          bad[pos] = bad.back();
          bad.pop_back();
          continue;
        }
        std::vector<VertexId> movable;
        for (VertexId b : g.neighbours_a(a)) {
          if (hist[a][label[b]] >= 2) movable.push_back(b);
        }
        std::vector<std::uint32_t> missing;
        for (std::uint32_t k = 0; k < r; ++k) {
          if (hist[a][k] == 0) missing.push_back(k);
        }
        VertexId b = movable[rng.below(movable.size())];
        std::uint32_t from = label[b];
        std::uint32_t to = missing[rng.below(missing.size())];

        long delta = 0;
        for (VertexId x : g.neighbours_b(b)) {
          if (!in_set[x]) continue;
          std::size_t after = distinct[x] - (hist[x][from] == 1 ? 1 : 0) + (hist[x][to] == 0 ? 1 : 0);
          delta += static_cast<long>(after == r) - static_cast<long>(distinct[x] == r);
        }
        // Occasionally accept a worsening move to leave plateaus.
        if (delta < 0 && !rng.bernoulli(0.05)) continue;
        label[b] = to;
        for (VertexId x : g.neighbours_b(b)) {
          if (!in_set[x]) continue;
          if (--hist[x][from] == 0) --distinct[x];
          if (hist[x][to]++ == 0) ++distinct[x];
          if (distinct[x] < r && !in_bad[x]) {
            in_bad[x] = 1;
            bad.push_back(x);
          }
        }
      }

      auto core = covering_core(g, a_set, label, r);
      if (core.size() > best_core.size()) {
        core = prune_core(g, label, r, t, std::move(core));
        if (core.size() > best_core.size()) {
          best_core = std::move(core);
          best_label = label;
        }
      }
      if (best_core.size() == a_set.size()) break;
    }
  }

  if (best_core.empty()) return result;
  RTPartition part{blocks_from_labels(best_label, r), std::move(best_core), r, t};
  if (!verify_rt_partition(g, part).pass) {
    throw std::logic_error("find_rt_partition produced a partition that fails verification");
  }
  result.core_fraction = Rational(static_cast<std::int64_t>(part.a_core.size()),
                                  static_cast<std::int64_t>(a_set.size()));
  result.partition = std::move(part);
  return result;
}

std::variant<TwinClass, DistinctFamily> dedupe_neighbourhoods(const BipartiteGraph& g,
                                                              std::span<const VertexId> a_set,
                                                              std::size_t t) {
  if (t == 0) throw ParameterError("dedupe_neighbourhoods: t must be >= 1");
  std::map<std::vector<VertexId>, std::vector<VertexId>> classes;
  DistinctFamily family;
  for (VertexId a : a_set) {
    if (a >= g.size_a()) throw GraphError("dedupe_neighbourhoods: A-vertex out of range");
    auto nbrs = g.neighbours_a(a);
    std::vector<VertexId> key(nbrs.begin(), nbrs.end());
    auto& members = classes[key];
    if (members.empty()) family.representatives.push_back(a);
    members.push_back(a);
    if (members.size() == t) return TwinClass{members, key};
  }
  return family;
}

NeighbourlyGraph neighbourly_graph(const BipartiteGraph& g, const RTPartition& part) {
  if (!verify_rt_partition(g, part).pass) {
    throw ParameterError("neighbourly_graph: the partition does not verify");
  }
  const auto label = label_blocks(g, part.blocks);
  NeighbourlyGraph h;
  h.order = part.r;
  h.adjacency.resize(part.r);
  for (const auto& [blocks, s] : summarize(cross_common_counts(g, label, part.a_core), label, part.r)) {
    if (s.max_common >= 2) h.edges.insert(blocks);
  }
  for (const auto& [i, j] : h.edges) {
    h.adjacency[i].push_back(j);
    h.adjacency[j].push_back(i);
  }
  for (auto& list : h.adjacency) std::sort(list.begin(), list.end());
  return h;
}

const char* to_string(ExtractionError::Reason reason) {
  switch (reason) {
    case ExtractionError::Reason::PartitionUnavailable: return "partition unavailable";
    case ExtractionError::Reason::Neither: return "neither";
    case ExtractionError::Reason::AuditFailed: return "audit failed";
  }
  return "unknown";
}

std::variant<IndependentBlocks, HubBlock> independent_set_or_hub(const NeighbourlyGraph& h,
                                                                 std::size_t need_independent,
                                                                 std::size_t need_degree) {
  std::vector<std::size_t> colour(h.order, 0);
  std::size_t colours = 0;
  for (std::size_t v = 0; v < h.order; ++v) {
    std::vector<char> used(colours + 1, 0);
    for (std::size_t w : h.adjacency[v]) {
      if (w < v) used[colour[w]] = 1;
    }
    std::size_t c = 0;
    while (used[c]) ++c;
    colour[v] = c;
    colours = std::max(colours, c + 1);
  }
  std::vector<std::vector<std::size_t>> classes(colours);
  for (std::size_t v = 0; v < h.order; ++v) classes[colour[v]].push_back(v);
  if (!classes.empty()) {
    auto largest = std::max_element(classes.begin(), classes.end(),
                                    [](const auto& x, const auto& y) { return x.size() < y.size(); });
    if (largest->size() >= need_independent) return IndependentBlocks{*largest};
  }
  if (h.order > 0) {
    std::size_t hub = 0;
    for (std::size_t v = 1; v < h.order; ++v) {
      if (h.degree(v) > h.degree(hub)) hub = v;
    }
    if (h.degree(hub) >= need_degree) return HubBlock{hub, h.degree(hub)};
  }
  throw ExtractionError(ExtractionError::Reason::Neither,
                        "neighbourly graph on " + std::to_string(h.order) +
                            " blocks has no independent set of size " +
                            std::to_string(need_independent) + " and no vertex of degree " +
                            std::to_string(need_degree));
}

PropositionSchedule proposition_schedule(std::size_t r, std::size_t lambda) {
  if (r == 0 || lambda == 0) throw ParameterError("proposition: r and lambda must be >= 1");
  PropositionSchedule s;
  s.r = r;
  s.lambda = lambda;
  s.t = lambda * r + 1;
  s.big_r = s.t * (r + 1);
  return s;
}

std::optional<std::string> girth_six_violation(const BipartiteGraph& g, const InducedSelection& sel,
                                               Rational min_avg_degree) {
  InducedGraph sub = induced_subgraph(g, sel);
  if (sub.graph.vertex_count() == 0) return "selection is empty";
  if (auto fours = count_short_cycles(sub.graph, 4).total; fours != 0) {
    return "selection contains " + std::to_string(fours) + " four-cycles";
  }
  if (!girth_at_least(girth(sub.graph), 6)) return "selection has girth below 6";
  Rational avg = average_degree(sub.graph);
  if (avg < min_avg_degree) {
    return "average degree " + std::to_string(avg.numerator()) + "/" +
           std::to_string(avg.denominator()) + " is below " +
           std::to_string(min_avg_degree.numerator()) + "/" +
           std::to_string(min_avg_degree.denominator());
  }
  return std::nullopt;
}

std::optional<std::string> funnel_violation(const BipartiteGraph& g, const FunnelOutcome& f,
                                            std::size_t r, std::size_t lambda, std::size_t t) {
  if (f.apex >= g.size_b()) return "apex out of range";
  if (f.a_prime.empty()) return "A' is empty";
  if (std::binary_search(f.b_prime.begin(), f.b_prime.end(), f.apex)) return "apex lies in B'";
  for (VertexId a : f.a_prime) {
    if (a >= g.size_a() || !g.has_edge(a, f.apex)) {
      return "A'-vertex " + std::to_string(a) + " is not a neighbour of the apex";
    }
  }
  InducedGraph sub = induced_subgraph(g, InducedSelection{f.a_prime, f.b_prime});
  if (!is_r_regular_side(sub.graph, Side::A, r)) return "A' is not r-regular in G[A',B']";
  if (f.a_prime.size() < lambda * f.b_prime.size()) return "|A'| < lambda |B'|";
  for (VertexId b = 0; b < sub.graph.size_b(); ++b) {
    if (sub.graph.degree(Side::B, b) < t) {
      return "B'-vertex " + std::to_string(f.b_prime[b]) + " has fewer than t neighbours in A'";
    }
  }
  if (r * f.a_prime.size() < t * f.b_prime.size()) return "r|A'| < t|B'|";
  return std::nullopt;
}

PropositionResult proposition_step(const BipartiteGraph& g, std::span<const VertexId> a_set,
                                   std::size_t r, std::size_t lambda,
                                   const PartitionSearchOptions& options) {
  const auto sched = proposition_schedule(r, lambda);
  if (!is_r_regular_side(g, Side::A, a_set, sched.big_r)) {
    throw ParameterError("proposition_step: the A-set must be " + std::to_string(sched.big_r) +
                         "-regular (t = " + std::to_string(sched.t) + ", R = t(r+1))");
  }
  PropositionResult result{BicliqueWitness{}, sched, 0, 0};

  if (auto twins = dedupe_neighbourhoods(g, a_set, sched.t); std::holds_alternative<TwinClass>(twins)) {
    const auto& cls = std::get<TwinClass>(twins);
    BicliqueWitness w{Side::A, sched.t, sched.t, cls.members,
                      {cls.neighbourhood.begin(), cls.neighbourhood.begin() + sched.t}};
    if (auto bad = biclique_violation(g, w)) {
      throw std::logic_error("proposition_step: twin biclique failed verification: " + *bad);
    }
    result.outcome = std::move(w);
    return result;
  }

  auto search = find_rt_partition(g, a_set, sched.big_r, sched.t, options);
  if (!search.partition) {
    throw ExtractionError(ExtractionError::Reason::PartitionUnavailable,
                          "no (" + std::to_string(sched.big_r) + "," + std::to_string(sched.t) +
                              ")-partition with a non-empty core was found");
  }
  const RTPartition& part = *search.partition;
  result.core_size = part.a_core.size();
  const auto h = neighbourly_graph(g, part);
  result.neighbourly_edges = h.edges.size();
  const auto choice = independent_set_or_hub(h, r, r);

  std::vector<char> in_core(g.size_a(), 0);
  for (VertexId a : part.a_core) in_core[a] = 1;
  auto core_neighbours = [&](VertexId b) {
    std::size_t n = 0;
    for (VertexId a : g.neighbours_b(b)) n += in_core[a];
    return n;
  };

  if (const auto* ind = std::get_if<IndependentBlocks>(&choice)) {
    // Among the independent blocks, take the r whose core-adjacent parts are smallest.
    std::vector<std::pair<std::size_t, std::size_t>> sized;  // (trimmed size, block)
    std::vector<std::vector<VertexId>> trimmed(h.order);
    for (std::size_t i : ind->members) {
      for (VertexId b : part.blocks[i]) {
        if (core_neighbours(b) > 0) trimmed[i].push_back(b);
      }
      sized.emplace_back(trimmed[i].size(), i);
    }
    std::stable_sort(sized.begin(), sized.end());
    std::vector<VertexId> b_prime;
    for (std::size_t k = 0; k < r; ++k) {
      const auto& blk = trimmed[sized[k].second];
      b_prime.insert(b_prime.end(), blk.begin(), blk.end());
    }
    std::sort(b_prime.begin(), b_prime.end());
    InducedSelection sel{part.a_core, std::move(b_prime)};
    InducedGraph sub = induced_subgraph(g, sel);
    if (average_degree(sub.graph) < Rational(static_cast<std::int64_t>(r))) {
      throw ExtractionError(ExtractionError::Reason::AuditFailed,
                            "independent blocks give average degree below r: |A1| = " +
                                std::to_string(sel.a.size()) + ", |B'| = " +
                                std::to_string(sel.b.size()));
    }
    if (auto bad = girth_six_violation(g, sel, Rational(static_cast<std::int64_t>(r)))) {
      throw std::logic_error("proposition_step: girth-six branch failed its audit: " + *bad);
    }
    result.outcome = GirthSixOutcome{std::move(sel), Rational(static_cast<std::int64_t>(r))};
    return result;
  }

  const auto& hub = std::get<HubBlock>(choice);
  VertexId apex = 0;
  std::size_t apex_reach = 0;
  for (VertexId b : part.blocks[hub.index]) {
    std::size_t reach = core_neighbours(b);
    if (reach > apex_reach) {
      apex_reach = reach;
      apex = b;
    }
  }
  if (apex_reach == 0) throw std::logic_error("proposition_step: hub block has no core neighbour");

  FunnelOutcome funnel;
  funnel.apex = apex;
  for (VertexId a : g.neighbours_b(apex)) {
    if (in_core[a]) funnel.a_prime.push_back(a);
  }
  std::vector<char> reached(g.size_b(), 0);
  for (VertexId a : funnel.a_prime) {
    for (VertexId b : g.neighbours_a(a)) reached[b] = 1;
  }
  const auto& hub_nbrs = h.adjacency[hub.index];
  for (std::size_t k = 0; k < r; ++k) {
    for (VertexId b : part.blocks[hub_nbrs[k]]) {
      if (reached[b]) funnel.b_prime.push_back(b);
    }
  }
  std::sort(funnel.b_prime.begin(), funnel.b_prime.end());
  if (auto bad = funnel_violation(g, funnel, r, lambda, sched.t)) {
    throw std::logic_error("proposition_step: funnel failed its audit: " + *bad);
  }
  result.outcome = std::move(funnel);
  return result;
}

std::vector<ScheduleRow> r1_lambda1_calculator(std::size_t s, std::size_t t, const BigRational& c) {
  if (s == 0 || t == 0) throw ParameterError("r1_lambda1_calculator: s and t must be >= 1");
  if (c <= 0) throw ParameterError("r1_lambda1_calculator: the partition constant must be positive");
  const BigInt c_num = boost::multiprecision::numerator(c);
  const BigInt c_den = boost::multiprecision::denominator(c);
  std::vector<ScheduleRow> rows;
  rows.push_back({1, BigInt(t), BigInt(1)});
  for (std::size_t k = 2; k <= s; ++k) {
    const auto& prev = rows.back();
    BigInt t_prime = prev.lambda1 * prev.r1 + 1;
    BigInt r1 = t_prime * (prev.r1 + 1);
    // ceil(t' / c) = ceil(t' c_den / c_num)
    BigInt lambda1 = (t_prime * c_den + c_num - 1) / c_num;
    rows.push_back({k, std::move(r1), std::move(lambda1)});
  }
  return rows;
}

namespace {

std::size_t to_size(const BigInt& v, const char* what) {
  if (v > BigInt(std::numeric_limits<std::uint32_t>::max())) {
    throw ParameterError(std::string("iterate_extraction: ") + what + " is too large for desk scale");
  }
  return static_cast<std::size_t>(v);
}

std::vector<VertexId> map_ids(const std::vector<VertexId>& local, const std::vector<VertexId>& parent) {
  std::vector<VertexId> out;
  out.reserve(local.size());
  for (VertexId v : local) out.push_back(parent[v]);
  return out;
}

}  // namespace

IterateResult iterate_extraction(const BipartiteGraph& g, std::size_t s, std::size_t t,
                                 const IterateOptions& options) {
  if (s == 0 || t == 0) throw ParameterError("iterate_extraction: s and t must be >= 1");
  IterateResult result{Exhaustion{}, r1_lambda1_calculator(s, t, options.c_override), {}, {}};

  InducedGraph current{g, iota_ids(g.size_a()), iota_ids(g.size_b())};

  auto finish_witness = [&](BicliqueWitness w) {
    if (auto bad = biclique_violation(g, w)) {
      result.outcome = Exhaustion{"assembled witness failed verification: " + *bad};
    } else {
      result.outcome = std::move(w);
    }
    return std::move(result);
  };

  for (std::size_t depth = 0;; ++depth) {
    const std::size_t remaining = s - depth;
    LevelTrace level;
    level.depth = depth;
    level.remaining_s = remaining;
    level.a_size = current.graph.size_a();
    level.b_size = current.graph.size_b();
    level.a_set = current.parent_a;
    const auto all_a = iota_ids(current.graph.size_a());

    if (remaining == 1) {
      const auto& cg = current.graph;
      if (result.apexes.empty()) {
        for (VertexId a = 0; a < cg.size_a(); ++a) {
          if (cg.degree(Side::A, a) < t) continue;
          auto nbrs = cg.neighbours_a(a);
          level.outcome = "base: K_{1,t} around an A-vertex";
          result.trace.push_back(level);
          return finish_witness(BicliqueWitness{
              Side::A, 1, t, {current.parent_a[a]},
              map_ids({nbrs.begin(), nbrs.begin() + t}, current.parent_b)});
        }
      }
      // A B-vertex with t neighbours in the innermost A-set, joined by the apexes.
      std::optional<VertexId> best;
      for (VertexId b = 0; b < cg.size_b(); ++b) {
        if (cg.degree(Side::B, b) >= t && (!best || cg.degree(Side::B, b) > cg.degree(Side::B, *best))) {
          best = b;
        }
      }
      if (!best) {
        level.outcome = "base: no B-vertex with t neighbours";
        result.trace.push_back(level);
        result.outcome = Exhaustion{"base case found no B-vertex with at least t neighbours"};
        return result;
      }
      auto nbrs = cg.neighbours_b(*best);
      std::vector<VertexId> b_side = result.apexes;
      b_side.push_back(current.parent_b[*best]);
      level.outcome = "base: apexes plus one B-vertex";
      result.trace.push_back(level);
      return finish_witness(BicliqueWitness{
          Side::B, s, t, map_ids({nbrs.begin(), nbrs.begin() + t}, current.parent_a),
          std::move(b_side)});
    }

    // Repeated neighbourhoods give the biclique directly.
    if (auto twins = dedupe_neighbourhoods(current.graph, all_a, t);
        std::holds_alternative<TwinClass>(twins)) {
      const auto& cls = std::get<TwinClass>(twins);
      if (cls.neighbourhood.size() >= remaining) {
        std::vector<VertexId> b_side = result.apexes;
        for (std::size_t k = 0; k < remaining; ++k) {
          b_side.push_back(current.parent_b[cls.neighbourhood[k]]);
        }
        level.outcome = "biclique: repeated neighbourhoods";
        result.trace.push_back(level);
        return finish_witness(
            BicliqueWitness{Side::B, s, t, map_ids(cls.members, current.parent_a), std::move(b_side)});
      }
    }

    const std::size_t r = to_size(result.schedule[remaining - 2].r1, "R1");
    const std::size_t lambda = to_size(result.schedule[remaining - 2].lambda1, "Lambda1");
    level.schedule = proposition_schedule(r, lambda);
    if (!is_r_regular_side(current.graph, Side::A, level.schedule.big_r)) {
      if (depth == 0) {
        throw ParameterError("iterate_extraction: the A-side must be R1(s,t) = " +
                             std::to_string(level.schedule.big_r) + "-regular");
      }
      throw std::logic_error("iterate_extraction: funnel lost regularity");
    }

    std::optional<PropositionResult> step;
    for (std::size_t attempt = 0; attempt < options.attempts_per_level && !step; ++attempt) {
      ++level.attempts;
      PartitionSearchOptions popts = options.partition;
      popts.seed = derive_seed(options.partition.seed, depth * 1024 + attempt);
      if (depth > 0) popts.initial.reset();
      try {
        step = proposition_step(current.graph, all_a, r, lambda, popts);
      } catch (const ExtractionError& e) {
        level.failures.push_back(std::string(to_string(e.reason())) + ": " + e.what());
      }
    }
    if (!step) {
      level.outcome = "exhausted";
      result.trace.push_back(level);
      result.outcome = Exhaustion{"dichotomy step failed at depth " + std::to_string(depth) +
                                  " after " + std::to_string(level.attempts) + " attempts"};
      return result;
    }
    level.core_size = step->core_size;

    if (auto* g6 = std::get_if<GirthSixOutcome>(&step->outcome)) {
      InducedSelection mapped = current.to_parent(g6->selection);
      const Rational bound(static_cast<std::int64_t>(t));
      level.outcome = "girth-six";
      result.trace.push_back(level);
      if (auto bad = girth_six_violation(g, mapped, bound)) {
        result.outcome = Exhaustion{"girth-six selection failed re-audit: " + *bad};
      } else {
        result.outcome = GirthSixOutcome{std::move(mapped), bound};
      }
      return result;
    }
    if (auto* w = std::get_if<BicliqueWitness>(&step->outcome)) {
      // K_{t',t'} with t' > t on the current A-set; orient it like the apex witness.
      if (w->b.size() < remaining || w->a.size() < t) {
        result.trace.push_back(level);
        result.outcome = Exhaustion{"dichotomy biclique too small to complete K_{s,t}"};
        return result;
      }
      std::vector<VertexId> b_side = result.apexes;
      for (std::size_t k = 0; k < remaining; ++k) b_side.push_back(current.parent_b[w->b[k]]);
      std::vector<VertexId> a_side(w->a.begin(), w->a.begin() + t);
      level.outcome = "biclique: dichotomy step";
      result.trace.push_back(level);
      return finish_witness(
          BicliqueWitness{Side::B, s, t, map_ids(a_side, current.parent_a), std::move(b_side)});
    }

    const auto& funnel = std::get<FunnelOutcome>(step->outcome);
    const VertexId apex = current.parent_b[funnel.apex];
    level.apex = apex;
    level.outcome = "funnel";
    result.trace.push_back(level);
    result.apexes.push_back(apex);

    InducedGraph sub = induced_subgraph(current.graph, InducedSelection{funnel.a_prime, funnel.b_prime});
    current = InducedGraph{std::move(sub.graph), map_ids(sub.parent_a, current.parent_a),
                           map_ids(sub.parent_b, current.parent_b)};
  }
}

}  // namespace bipgirth
