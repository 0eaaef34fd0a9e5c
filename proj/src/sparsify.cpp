#include "bipgirth/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "bipgirth/errors.hpp"

namespace bipgirth {

const char* to_string(HittingMode mode) {
  return mode == HittingMode::Greedy ? "greedy" : "per-cycle";
}

SamplingPlan sampling_plan(const BipartiteGraph& g, const SparsifyParams& params) {
  if (params.k < 2) throw ParameterError("sparsify: k must be >= 2 (girth targets below 4 are not supported)");
  if (params.lambda_reg == 0) throw ParameterError("sparsify: lambda must be >= 1");
  if (g.vertex_count() == 0) throw ParameterError("sparsify: the input graph is empty");
  SamplingPlan plan;
  plan.d = average_degree(g);
  if (plan.d == Rational(0)) throw ParameterError("sparsify: the input has no edges, so p = d^{-(1-eps)} is undefined");
  if (params.t > 0) {
    plan.epsilon = Rational(1, static_cast<std::int64_t>(2 * params.k * params.t));
  }
  if (params.p_override) {
    plan.p = *params.p_override;
  } else {
    const double d = boost::rational_cast<double>(plan.d);
    const double exponent = boost::rational_cast<double>(Rational(1) - plan.epsilon);
    plan.p = std::exp(-exponent * std::log(d));
    if (plan.d == Rational(1)) plan.p = 1.0;
  }
  if (!(plan.p > 0.0 && plan.p <= 1.0)) {
    throw ParameterError("sparsify: sampling probability " + std::to_string(plan.p) +
                         " is outside (0, 1]; the average degree must be at least 1");
  }
  return plan;
}

SparsifyTrial sparsify_trial(const BipartiteGraph& g, double p, std::size_t k, HittingMode mode,
                             Rng& rng, std::uint64_t cycle_cap) {
  SparsifyTrial trial;
  for (VertexId a = 0; a < g.size_a(); ++a) {
    if (rng.bernoulli(p)) trial.sample.a.push_back(a);
  }
  for (VertexId b = 0; b < g.size_b(); ++b) {
    if (rng.bernoulli(p)) trial.sample.b.push_back(b);
  }
  const InducedGraph h = induced_subgraph(g, trial.sample);
  const BipartiteGraph& hg = h.graph;
  trial.sampled_vertices = hg.vertex_count();
  trial.sampled_edges = hg.edge_count();

  auto cycles = enumerate_short_cycles(hg, 2 * k, cycle_cap);
  std::sort(cycles.begin(), cycles.end());
  trial.short_cycles = cycles.size();

  const std::size_t n = hg.vertex_count();
  auto degree_of = [&](VertexId u) { return hg.degree(hg.ref(u).side, hg.ref(u).index); };
  std::vector<char> on_cycle(n, 0);
  for (const auto& c : cycles) {
    for (VertexId u : c) on_cycle[u] = 1;
    // Edges touching V(C) = sum of degrees minus edges with both ends in V(C).
    std::uint64_t touching = 0;
    std::uint64_t internal = 0;
    for (VertexId u : c) {
      touching += degree_of(u);
      VertexRef ref = hg.ref(u);
      if (ref.side != Side::A) continue;
      for (VertexId b : hg.neighbours_a(ref.index)) {
        internal += on_cycle[hg.unified({Side::B, b})];
      }
    }
    // Degree sums count internal edges twice; the cycle's own edges are excluded.
    trial.incident_tally += touching - internal - c.size();
    for (VertexId u : c) on_cycle[u] = 0;
  }

  std::vector<char> deleted(n, 0);
  if (mode == HittingMode::PerCycle) {
    for (const auto& c : cycles) {
      if (std::none_of(c.begin(), c.end(), [&](VertexId u) { return deleted[u] != 0; })) {
        deleted[c.front()] = 1;  // canonical form puts the least vertex first
        ++trial.vertices_deleted;
      }
    }
  } else {
    std::vector<std::vector<std::size_t>> through(n);
    std::vector<std::size_t> load(n, 0);
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      for (VertexId u : cycles[i]) {
        through[u].push_back(i);
        ++load[u];
      }
    }
    std::vector<char> hit(cycles.size(), 0);
    std::size_t remaining = cycles.size();
    while (remaining > 0) {
      VertexId pick = 0;
      for (VertexId u = 1; u < n; ++u) {
        if (load[u] > load[pick]) pick = u;
      }
      deleted[pick] = 1;
      ++trial.vertices_deleted;
      for (std::size_t i : through[pick]) {
        if (hit[i]) continue;
        hit[i] = 1;
        --remaining;
        for (VertexId u : cycles[i]) --load[u];
      }
    }
  }

  for (VertexId u = 0; u < n; ++u) {
    if (deleted[u]) continue;
    VertexRef ref = hg.ref(u);
    if (ref.side == Side::A) {
      trial.survivors.a.push_back(h.parent_a[ref.index]);
    } else {
      trial.survivors.b.push_back(h.parent_b[ref.index]);
    }
  }
  const InducedGraph survivor = induced_subgraph(g, trial.survivors);
  trial.surviving_edges = survivor.graph.edge_count();
  trial.final_avg_degree = average_degree(survivor.graph);
  return trial;
}

SparsifyResult sparsify_high_girth(const BipartiteGraph& g, const SparsifyParams& params) {
  if (params.max_retries == 0) throw ParameterError("sparsify: max_retries must be >= 1");
  const SamplingPlan plan = sampling_plan(g, params);
  const Rational target(static_cast<std::int64_t>(params.t));
  Rng rng(params.seed);

  SparsifyResult result;
  auto& diag = result.diagnostics;
  diag.plan = plan;
  diag.d_eps_quarter =
      std::pow(boost::rational_cast<double>(plan.d), boost::rational_cast<double>(plan.epsilon)) / 4.0;

  std::optional<SparsifyTrial> best;
  for (std::size_t attempt = 0; attempt < params.max_retries; ++attempt) {
    ++diag.attempts;
    SparsifyTrial trial = sparsify_trial(g, plan.p, params.k, params.hitting, rng, params.cycle_cap);

    const InducedGraph survivor = induced_subgraph(g, trial.survivors);
    const Girth survivor_girth = girth(survivor.graph);
    if (count_short_cycles(survivor.graph, 2 * params.k, params.cycle_cap).total != 0 ||
        !girth_at_least(survivor_girth, 2 * params.k)) {
      throw std::logic_error("sparsify: survivor kept a cycle of length <= 2k");
    }

    const bool success = trial.final_avg_degree >= target;
    if (success || !best || trial.final_avg_degree > best->final_avg_degree) {
      diag.best_attempt = attempt;
      diag.sampled_vertices = trial.sampled_vertices;
      diag.sampled_edges = trial.sampled_edges;
      diag.short_cycles_found = trial.short_cycles;
      diag.incident_tally = trial.incident_tally;
      diag.vertices_deleted = trial.vertices_deleted;
      diag.final_girth = survivor_girth;
      diag.final_avg_degree = trial.final_avg_degree;
      best = std::move(trial);
    }
    if (success) {
      result.selection = best->survivors;
      return result;
    }
  }
  return result;
}

BigInt naive_cycle_bound(std::uint64_t n, Rational d, std::uint64_t lambda_reg, std::uint64_t k) {
  if (n == 0 || d <= Rational(0) || lambda_reg == 0 || k == 0) {
    throw ParameterError("naive_cycle_bound: every argument must be positive");
  }
  BigInt d_up = BigInt(d.numerator()) / d.denominator();
  if (d_up * d.denominator() < d.numerator()) ++d_up;
  return BigInt(n) * boost::multiprecision::pow(BigInt(lambda_reg) * d_up, static_cast<unsigned>(2 * k - 1));
}

bool MeanEstimate::within(double z) const {
  if (!prediction) return true;
  return std::abs(mean - *prediction) <= z * std_error;
}

namespace {

MeanEstimate estimate(const std::vector<double>& xs) {
  MeanEstimate e;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) e.mean += x;
  e.mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - e.mean) * (x - e.mean);
  e.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return e;
}

}  // namespace

ExpectationReport expectation_diagnostics(const BipartiteGraph& g, const SparsifyParams& params,
                                          std::size_t trials, std::size_t jobs) {
  if (trials < 30) throw ParameterError("expectation_diagnostics: at least 30 trials are required");
  ExpectationReport report;
  report.plan = sampling_plan(g, params);
  report.trials = trials;

  std::vector<SparsifyTrial> results(trials);
  auto worker = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < trials; i += stride) {
      Rng rng(derive_seed(params.seed, i));
      results[i] = sparsify_trial(g, report.plan.p, params.k, params.hitting, rng, params.cycle_cap);
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, trials);
  if (jobs == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker, j, jobs);
    for (auto& th : pool) th.join();
  }

  std::vector<double> vs, es, x1s, x2s, losses;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto& r = results[i];
    vs.push_back(static_cast<double>(r.sampled_vertices));
    es.push_back(static_cast<double>(r.sampled_edges));
    x1s.push_back(static_cast<double>(r.short_cycles));
    x2s.push_back(static_cast<double>(r.incident_tally));
    losses.push_back(static_cast<double>(r.edge_loss()));
    if (r.edge_loss() > 2 * r.short_cycles + r.incident_tally) {
      ++report.inequality_violations;
      report.violating_trials.push_back(i);
    }
  }
  const double p = report.plan.p;
  const double n = static_cast<double>(g.vertex_count());
  const double d = boost::rational_cast<double>(report.plan.d);
  report.vertices = estimate(vs);
  report.vertices.prediction = p * n;
  report.edges = estimate(es);
  report.edges.prediction = p * p * d * n / 2.0;
  report.x1 = estimate(x1s);
  report.x2 = estimate(x2s);
  report.edge_loss = estimate(losses);
  return report;
}

double fitted_exponent(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw ParameterError("fitted_exponent: need at least two points");
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0 && y > 0)) throw ParameterError("fitted_exponent: coordinates must be positive");
    sx += std::log(x);
    sy += std::log(y);
  }
  const double n = static_cast<double>(points.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    sxx += (std::log(x) - mx) * (std::log(x) - mx);
    sxy += (std::log(x) - mx) * (std::log(y) - my);
  }
  if (sxx == 0) throw ParameterError("fitted_exponent: x values must not all coincide");
  return sxy / sxx;
}

}  // namespace bipgirth
