#include "bipgirth/regularize.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "bipgirth/errors.hpp"

namespace bipgirth {

namespace {

using boost::multiprecision::pow;

// e lies strictly between these two 16-digit decimals.
const BigInt kEulerLow{"2718281828459045"};
const BigInt kEulerHigh{"2718281828459046"};
const BigInt kEulerScale{"1000000000000000"};

// Compares n^{11 r} against 2 lambda (16 e)^r with e replaced by a rational
// bound: n^{11r} * scale^r  vs  2 lambda (16 e_num)^r.
bool power_at_least(const BigInt& n, unsigned r, std::uint64_t lambda, const BigInt& e_num) {
  BigInt lhs = pow(n, 11 * r) * pow(kEulerScale, r);
  BigInt rhs = BigInt(2 * lambda) * pow(BigInt(16) * e_num, r);
  return lhs >= rhs;
}

/// ceil( ((2 lambda)^{1/r} 16 e)^{1/11} ), decided exactly.
BigInt ceil_root_term(std::uint64_t r, std::uint64_t lambda) {
  const auto rr = static_cast<unsigned>(r);
  long double estimate = std::pow(std::pow(2.0L * lambda, 1.0L / r) * 16.0L * std::exp(1.0L),
                                  1.0L / 11.0L);
  BigInt n = std::max<BigInt>(1, BigInt(static_cast<std::uint64_t>(std::ceil(estimate))));
  // n is the ceiling iff n >= x > n - 1.
  while (!power_at_least(n, rr, lambda, kEulerHigh)) {
    if (power_at_least(n, rr, lambda, kEulerLow)) {
      throw std::logic_error("lemma5_threshold: e bounds too coarse to round");
    }
    ++n;
  }
  while (n > 1 && power_at_least(n - 1, rr, lambda, kEulerLow)) {
    if (!power_at_least(n - 1, rr, lambda, kEulerHigh)) {
      throw std::logic_error("lemma5_threshold: e bounds too coarse to round");
    }
    --n;
  }
  return n;
}

}  // namespace

ThresholdReport lemma5_threshold(std::uint64_t r, std::uint64_t lambda) {
  if (r == 0 || lambda == 0) throw ParameterError("lemma5_threshold: r and lambda must be >= 1");
  if (r > 4096) throw ParameterError("lemma5_threshold: r too large");
  ThresholdReport report;
  report.d_inner = std::max(ceil_root_term(r, lambda), BigInt(2 * r * r));
  report.d_threshold = 8 * pow(4 * report.d_inner, static_cast<unsigned>(12 * r + 1));
  return report;
}

namespace {

struct BandState {
  std::vector<char> alive_a;
  std::vector<char> alive_b;
  std::vector<std::size_t> deg_a;
  std::vector<std::size_t> deg_b;
  std::size_t count_a = 0;
  std::size_t count_b = 0;

  Rational ratio() const {
    if (count_a == 0 || count_b == 0) return Rational(0);
    return Rational(static_cast<std::int64_t>(count_a), static_cast<std::int64_t>(count_b));
  }
};

// Removes the given B-vertices and cascades: A-vertices below d_target go,
// then B-vertices left without neighbours go.
void remove_b_and_prune(const BipartiteGraph& g, BandState& st, std::vector<VertexId> doomed_b,
                        std::size_t d_target) {
  std::vector<VertexId> doomed_a;
  while (!doomed_b.empty() || !doomed_a.empty()) {
    while (!doomed_b.empty()) {
      VertexId b = doomed_b.back();
      doomed_b.pop_back();
      if (!st.alive_b[b]) continue;
      st.alive_b[b] = 0;
      --st.count_b;
      for (VertexId a : g.neighbours_b(b)) {
        if (st.alive_a[a] && --st.deg_a[a] < d_target) doomed_a.push_back(a);
      }
    }
    while (!doomed_a.empty()) {
      VertexId a = doomed_a.back();
      doomed_a.pop_back();
      if (!st.alive_a[a]) continue;
      st.alive_a[a] = 0;
      --st.count_a;
      for (VertexId b : g.neighbours_a(a)) {
        if (st.alive_b[b] && --st.deg_b[b] == 0) doomed_b.push_back(b);
      }
    }
  }
}

}  // namespace

DegreeBandResult degree_band_extract(const BipartiteGraph& g, std::size_t d_target,
                                     std::size_t band_factor) {
  if (d_target == 0) throw ParameterError("degree_band_extract: target degree must be >= 1");
  if (band_factor < 2) throw ParameterError("degree_band_extract: band factor must be >= 2");
  const std::size_t upper = d_target * band_factor;

  BandState st;
  st.alive_a.assign(g.size_a(), 0);
  st.alive_b.assign(g.size_b(), 0);
  st.deg_a.assign(g.size_a(), 0);
  st.deg_b.assign(g.size_b(), 0);
  for (VertexId a = 0; a < g.size_a(); ++a) {
    std::size_t d = g.degree(Side::A, a);
    if (d < d_target || d > upper) continue;
    st.alive_a[a] = 1;
    st.deg_a[a] = d;
    ++st.count_a;
    for (VertexId b : g.neighbours_a(a)) {
      if (!st.alive_b[b]) {
        st.alive_b[b] = 1;
        ++st.count_b;
      }
      ++st.deg_b[b];
    }
  }

  while (st.count_b > 0) {
    unsigned lowest = 64;
    for (VertexId b = 0; b < g.size_b(); ++b) {
      if (st.alive_b[b]) lowest = std::min<unsigned>(lowest, std::bit_width(st.deg_b[b]) - 1);
    }
    std::vector<VertexId> bucket;
    for (VertexId b = 0; b < g.size_b(); ++b) {
      if (st.alive_b[b] && std::bit_width(st.deg_b[b]) - 1 == lowest) bucket.push_back(b);
    }
    BandState trial = st;
    remove_b_and_prune(g, trial, std::move(bucket), d_target);
    if (trial.count_a == 0 || trial.ratio() <= st.ratio()) break;
    st = std::move(trial);
  }

  DegreeBandResult result;
  for (VertexId a = 0; a < g.size_a(); ++a) {
    if (st.alive_a[a]) result.selection.a.push_back(a);
  }
  for (VertexId b = 0; b < g.size_b(); ++b) {
    if (st.alive_b[b]) result.selection.b.push_back(b);
  }
  result.ratio = st.ratio();
  return result;
}

BlockList partition_b_uniform(const BipartiteGraph& g, std::size_t r, Rng& rng) {
  if (r == 0) throw ParameterError("partition_b_uniform: r must be >= 1");
  BlockList parts(r);
  for (VertexId b = 0; b < g.size_b(); ++b) parts[rng.below(r)].push_back(b);
  return parts;
}

BlockList partition_b_uniform(const BipartiteGraph& g, std::size_t r, Seed seed) {
  Rng rng(seed);
  return partition_b_uniform(g, r, rng);
}

std::optional<std::string> regular_side_violation(const BipartiteGraph& g,
                                                  const InducedSelection& sel, std::size_t r,
                                                  std::size_t lambda) {
  InducedGraph sub = induced_subgraph(g, sel);
  if (sel.a.empty()) return "A-side is empty";
  if (sel.b.empty()) return "B-side is empty";
  if (!is_r_regular_side(sub.graph, Side::A, r)) {
    auto st = degree_stats(sub.graph, Side::A);
    return "A-side is not " + std::to_string(r) + "-regular (degrees " +
           std::to_string(st.min_degree) + ".." + std::to_string(st.max_degree) + ")";
  }
  if (sel.a.size() < lambda * sel.b.size()) {
    return "|A| = " + std::to_string(sel.a.size()) + " < lambda |B| = " +
           std::to_string(lambda * sel.b.size());
  }
  return std::nullopt;
}

RegularizeResult extract_regular_side(const BipartiteGraph& g, const RegularizeParams& params) {
  if (params.r == 0 || params.lambda == 0 || params.max_retries == 0 || params.partition_budget == 0) {
    throw ParameterError("extract_regular_side: r, lambda and budgets must be >= 1");
  }
  if (g.size_a() == 0) throw ParameterError("extract_regular_side: A-side is empty");

  const std::size_t r = params.r;
  RegularizeResult result;
  auto& stats = result.stats;
  stats.max_degree_a = degree_stats(g, Side::A).max_degree;
  stats.d_hat = std::max<std::size_t>(1, (stats.max_degree_a + 15) / 16);
  stats.sample_prob = 1.0 / (16.0 * static_cast<double>(stats.d_hat));

  Rng rng(params.seed);
  std::vector<std::uint32_t> part_of(g.size_b());
  std::vector<std::uint32_t> best_part_of(g.size_b());
  std::vector<char> sampled(g.size_b());
  std::vector<std::uint32_t> hits(r);
  const auto n_a = static_cast<std::int64_t>(g.size_a());

  // Whether a vertex meets every part under the labelling in `labels`.
  auto meets_all_parts = [&](VertexId a, const std::vector<std::uint32_t>& labels) {
    std::fill(hits.begin(), hits.end(), 0);
    std::size_t distinct = 0;
    for (VertexId b : g.neighbours_a(a)) {
      if (hits[labels[b]]++ == 0) ++distinct;
    }
    return distinct == r;
  };

  for (std::size_t attempt = 0; attempt < params.max_retries; ++attempt) {
    ++stats.attempts;

    // Step 1: random partition of B, redrawn until half of A meets every part.
    std::size_t best_core = 0;
    for (std::size_t draw = 0; draw < params.partition_budget; ++draw) {
      ++stats.partition_draws;
      for (VertexId b = 0; b < g.size_b(); ++b) part_of[b] = static_cast<std::uint32_t>(rng.below(r));
      std::size_t core = 0;
      for (VertexId a = 0; a < g.size_a(); ++a) {
        if (g.degree(Side::A, a) >= r && meets_all_parts(a, part_of)) ++core;
      }
      if (draw == 0 || core > best_core) {
        best_core = core;
        best_part_of = part_of;
      }
      if (Rational(static_cast<std::int64_t>(core), n_a) >= params.accept_fraction) break;
    }
    stats.best_core = std::max(stats.best_core, best_core);

    // Step 2: sample B'.
    std::size_t sampled_count = 0;
    for (VertexId b = 0; b < g.size_b(); ++b) {
      sampled[b] = rng.bernoulli(stats.sample_prob) ? 1 : 0;
      sampled_count += sampled[b];
    }

    // Step 3: A2 = core vertices with exactly one sampled neighbour per part.
    std::vector<VertexId> regular;
    for (VertexId a = 0; a < g.size_a(); ++a) {
      if (g.degree(Side::A, a) < r || !meets_all_parts(a, best_part_of)) continue;
      std::fill(hits.begin(), hits.end(), 0);
      bool ok = true;
      for (VertexId b : g.neighbours_a(a)) {
        if (sampled[b] && ++hits[best_part_of[b]] > 1) {
          ok = false;
          break;
        }
      }
      if (ok && std::all_of(hits.begin(), hits.end(), [](std::uint32_t h) { return h == 1; })) {
        regular.push_back(a);
      }
    }
    stats.best_regular = std::max(stats.best_regular, regular.size());
    if (regular.empty() || regular.size() < params.lambda * sampled_count) continue;

    InducedSelection sel;
    sel.a = std::move(regular);
    for (VertexId b = 0; b < g.size_b(); ++b) {
      if (sampled[b]) sel.b.push_back(b);
    }
    if (auto violation = regular_side_violation(g, sel, r, params.lambda)) {
      throw std::logic_error("extract_regular_side produced an invalid selection: " + *violation);
    }
    stats.accepted_a = sel.a.size();
    stats.accepted_b = sel.b.size();
    result.selection = std::move(sel);
    return result;
  }
  return result;
}

}  // namespace bipgirth
