#include "bipgirth/generate.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <string>

#include "bipgirth/errors.hpp"

namespace bipgirth {

BipartiteGraph gen_complete(std::size_t s, std::size_t t) {
  std::vector<Edge> edges;
  edges.reserve(s * t);
  for (VertexId a = 0; a < s; ++a) {
    for (VertexId b = 0; b < t; ++b) edges.emplace_back(a, b);
  }
  return BipartiteGraph(s, t, edges);
}

BipartiteGraph gen_random(std::size_t n_a, std::size_t n_b, double edge_prob, Seed seed) {
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
    throw ParameterError("edge probability must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  for (VertexId a = 0; a < n_a; ++a) {
    for (VertexId b = 0; b < n_b; ++b) {
      if (rng.bernoulli(edge_prob)) edges.emplace_back(a, b);
    }
  }
  return BipartiteGraph(n_a, n_b, edges);
}

namespace {

struct Multigraph {
  std::vector<Edge> pairs;
  std::map<Edge, std::size_t> multiplicity;

  void add(Edge e) { ++multiplicity[e]; }
  void remove(Edge e) {
    auto it = multiplicity.find(e);
    if (--it->second == 0) multiplicity.erase(it);
  }
  std::size_t count(Edge e) const {
    auto it = multiplicity.find(e);
    return it == multiplicity.end() ? 0 : it->second;
  }
};

}  // namespace

BipartiteGraph gen_biregular(std::size_t n_a, std::size_t n_b, std::size_t deg_a, Seed seed,
                             const BiregularOptions& options) {
  if (n_b == 0 && deg_a > 0) throw ParameterError("biregular: B-side is empty");
  if (deg_a > n_b) {
    throw ParameterError("biregular: A-degree " + std::to_string(deg_a) + " exceeds |B| = " +
                         std::to_string(n_b));
  }
  if (n_b > 0 && (n_a * deg_a) % n_b != 0) {
    throw ParameterError("biregular: nA*degA must be divisible by nB");
  }
  if (deg_a == 0) return BipartiteGraph(n_a, n_b, {});
  const std::size_t deg_b = n_a * deg_a / n_b;

  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < options.max_resamples; ++attempt) {
    std::vector<VertexId> stubs_b;
    stubs_b.reserve(n_a * deg_a);
    for (VertexId b = 0; b < n_b; ++b) stubs_b.insert(stubs_b.end(), deg_b, b);
    rng.shuffle(stubs_b);

    Multigraph mg;
    mg.pairs.reserve(stubs_b.size());
    for (std::size_t i = 0; i < stubs_b.size(); ++i) {
      Edge e{static_cast<VertexId>(i / deg_a), stubs_b[i]};
      mg.pairs.push_back(e);
      mg.add(e);
    }

    bool failed = false;
    for (std::size_t i = 0; i < mg.pairs.size() && !failed; ++i) {
      std::size_t tries = 0;
      while (mg.count(mg.pairs[i]) > 1) {
        if (tries++ == options.switches_per_conflict) {
          failed = true;
          break;
        }
        // Switch the B-endpoints of pair i and a random pair j.
        std::size_t j = static_cast<std::size_t>(rng.below(mg.pairs.size()));
        Edge ei = mg.pairs[i];
        Edge ej = mg.pairs[j];
        Edge ni{ei.first, ej.second};
        Edge nj{ej.first, ei.second};
        if (ni == nj || mg.count(ni) > 0 || mg.count(nj) > 0) continue;
        mg.remove(ei);
        mg.remove(ej);
        mg.add(ni);
        mg.add(nj);
        mg.pairs[i] = ni;
        mg.pairs[j] = nj;
      }
    }
    // Earlier switches never create duplicates, so one pass suffices.
    if (!failed) return BipartiteGraph(n_a, n_b, mg.pairs);
  }
  throw ParameterError("biregular: no simple graph found within the resample budget");
}

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

BipartiteGraph gen_projective_incidence(std::uint64_t q) {
  if (!is_prime(q)) {
    throw ParameterError("projective incidence needs a prime q, got " + std::to_string(q));
  }
  if (q > 1000) throw ParameterError("projective incidence: q too large");
  // Normalized homogeneous triples: the first non-zero coordinate is 1.
  std::vector<std::array<std::uint64_t, 3>> points;
  for (std::uint64_t y = 0; y < q; ++y) {
    for (std::uint64_t z = 0; z < q; ++z) points.push_back({1, y, z});
  }
  for (std::uint64_t z = 0; z < q; ++z) points.push_back({0, 1, z});
  points.push_back({0, 0, 1});
  // Lines use the same normalized triples as dual coordinates.
  const auto& lines = points;

  std::vector<Edge> edges;
  for (VertexId p = 0; p < points.size(); ++p) {
    for (VertexId l = 0; l < lines.size(); ++l) {
      std::uint64_t dot = 0;
      for (int i = 0; i < 3; ++i) dot = (dot + points[p][i] * lines[l][i]) % q;
      if (dot == 0) edges.emplace_back(p, l);
    }
  }
  return BipartiteGraph(points.size(), lines.size(), edges);
}

NeighbourhoodRegularGraph gen_neighbourhood_regular(const NeighbourhoodRegularSpec& spec, Seed seed) {
  const std::size_t r = spec.r();
  if (r == 0) throw ParameterError("neighbourhood-regular: need at least one block");
  std::size_t n_b = 0;
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t d = spec.block_degrees[i];
    if (d < r) {
      throw ParameterError("neighbourhood-regular: block " + std::to_string(i) + " degree " +
                           std::to_string(d) + " is below r = " + std::to_string(r));
    }
    if (spec.a_size % d != 0) {
      throw ParameterError("neighbourhood-regular: |A| = " + std::to_string(spec.a_size) +
                           " is not divisible by block " + std::to_string(i) + " degree " +
                           std::to_string(d));
    }
    n_b += spec.a_size / d;
  }

  Rng rng(seed);
  NeighbourhoodRegularGraph out;
  out.blocks.resize(r);
  std::vector<Edge> edges;
  VertexId next_b = 0;
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t d = spec.block_degrees[i];
    auto order = iota_ids(spec.a_size);
    rng.shuffle(order);
    for (std::size_t chunk = 0; chunk < spec.a_size / d; ++chunk) {
      VertexId b = next_b++;
      out.blocks[i].push_back(b);
      for (std::size_t k = 0; k < d; ++k) edges.emplace_back(order[chunk * d + k], b);
    }
  }
  out.graph = BipartiteGraph(spec.a_size, n_b, edges);
  return out;
}

}  // namespace bipgirth
