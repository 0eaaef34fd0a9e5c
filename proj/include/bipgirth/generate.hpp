#pragma once

#include <cstdint>
#include <vector>

#include "bipgirth/graph.hpp"
#include "bipgirth/graph_io.hpp"
#include "bipgirth/random.hpp"

namespace bipgirth {

BipartiteGraph gen_complete(std::size_t s, std::size_t t);

/// Each of the n_a * n_b pairs is an edge independently with probability edge_prob.
BipartiteGraph gen_random(std::size_t n_a, std::size_t n_b, double edge_prob, Seed seed);

struct BiregularOptions {
  std::size_t switches_per_conflict = 1000;
  std::size_t max_resamples = 100;
};

/// Configuration-model graph with every A-degree deg_a and every B-degree
/// n_a*deg_a/n_b. Duplicate edges are repaired by random endpoint switches.
BipartiteGraph gen_biregular(std::size_t n_a, std::size_t n_b, std::size_t deg_a, Seed seed,
                             const BiregularOptions& options = {});

/// Point-line incidence graph of PG(2, q) for prime q: A = points, B = lines.
BipartiteGraph gen_projective_incidence(std::uint64_t q);

struct NeighbourhoodRegularSpec {
  std::vector<std::size_t> block_degrees;  // d_1..d_r, each >= r
  std::size_t a_size = 0;
  std::size_t r() const { return block_degrees.size(); }
};

struct NeighbourhoodRegularGraph {
  BipartiteGraph graph;
  BlockList blocks;  // B-vertices of block i are contiguous, in block order
};

/// B splits into blocks of size a_size/d_i. Every A-vertex gets exactly one
/// neighbour per block and every block-i vertex gets exactly d_i neighbours:
/// for each block, a random permutation of A is cut into chunks of d_i.
NeighbourhoodRegularGraph gen_neighbourhood_regular(const NeighbourhoodRegularSpec& spec, Seed seed);

bool is_prime(std::uint64_t q);

}  // namespace bipgirth
