#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "bipgirth/detect.hpp"
#include "bipgirth/graph.hpp"
#include "bipgirth/graph_io.hpp"
#include "bipgirth/random.hpp"

namespace bipgirth {

/// Degree threshold above which every bipartite graph has an induced
/// subgraph with an r-regular side A and |A| >= lambda |B|:
///   d = max( ((2 lambda)^{1/r} 16 e)^{1/11}, 2 r^2 ),  D = 8 (4d)^{12r+1},
/// with d rounded up to an integer.
struct ThresholdReport {
  BigInt d_inner;
  BigInt d_threshold;
};

ThresholdReport lemma5_threshold(std::uint64_t r, std::uint64_t lambda);

struct DegreeBandResult {
  InducedSelection selection;
  Rational ratio{0};  // |A| / |B| of the selection, 0 when empty
};

/// Keeps A-vertices whose degree lies in [d_target, band_factor * d_target],
/// then repeatedly drops the lowest dyadic degree bucket of B (with cascading
/// pruning of A-vertices that fall below d_target) while that raises |A|/|B|.
/// Every selected A-vertex has its degree in the band inside the selection.
DegreeBandResult degree_band_extract(const BipartiteGraph& g, std::size_t d_target,
                                     std::size_t band_factor);

/// Each B-vertex lands in one of r parts uniformly at random. Parts may be empty.
BlockList partition_b_uniform(const BipartiteGraph& g, std::size_t r, Rng& rng);
BlockList partition_b_uniform(const BipartiteGraph& g, std::size_t r, Seed seed);

struct RegularizeParams {
  std::size_t r = 1;
  std::size_t lambda = 1;
  std::size_t max_retries = 200;
  std::size_t partition_budget = 50;
  /// A partition is accepted once |A1| >= accept_fraction * |A|.
  Rational accept_fraction{1, 2};
  Seed seed{};
};

struct RegularizeStats {
  std::size_t attempts = 0;
  std::size_t partition_draws = 0;
  std::size_t max_degree_a = 0;
  std::size_t d_hat = 0;
  double sample_prob = 0.0;
  std::size_t best_core = 0;       // largest |A1| seen
  std::size_t best_regular = 0;    // largest |A2| seen
  std::size_t accepted_a = 0;
  std::size_t accepted_b = 0;
};

struct RegularizeResult {
  std::optional<InducedSelection> selection;
  RegularizeStats stats;
};

/// Randomized extraction of an induced subgraph whose A-side is exactly
/// r-regular with |A| >= lambda |B|. Per attempt: partition B into r parts,
/// keep A1 (A-vertices meeting every part), sample B' with p = 1/(16 d_hat),
/// d_hat = max(1, ceil(maxdeg(A)/16)), and keep A2 (A1-vertices with exactly
/// one sampled neighbour in each part). Succeeds when A2 is non-empty and
/// |A2| >= lambda |B'|.
RegularizeResult extract_regular_side(const BipartiteGraph& g, const RegularizeParams& params);

/// Independent audit of a claimed result on the materialized subgraph.
std::optional<std::string> regular_side_violation(const BipartiteGraph& g,
                                                  const InducedSelection& sel, std::size_t r,
                                                  std::size_t lambda);

}  // namespace bipgirth
