#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bipgirth/detect.hpp"
#include "bipgirth/graph.hpp"
#include "bipgirth/random.hpp"

namespace bipgirth {

enum class HittingMode {
  Greedy,    // repeatedly delete the vertex on the most surviving short cycles
  PerCycle,  // walk the cycles in canonical order, deleting the least vertex of each unhit one
};

const char* to_string(HittingMode mode);

struct SparsifyParams {
  std::size_t t = 1;  // target average degree; 0 disables the degree target and sets epsilon = 0
  std::size_t k = 2;  // output girth >= 2k
  std::size_t lambda_reg = 1;
  std::size_t max_retries = 50;
  Seed seed{};
  HittingMode hitting = HittingMode::Greedy;
  std::optional<double> p_override;  // replaces d^{-(1-epsilon)} when set
  std::uint64_t cycle_cap = kDefaultCycleCap;
};

/// Sampling constants: d is the exact average degree of the input,
/// epsilon = 1/(2kt) and p = d^{-(1-epsilon)} (or the override).
struct SamplingPlan {
  Rational d{0};
  Rational epsilon{0};
  double p = 0.0;
};

/// Throws ParameterError for k < 2, lambda_reg < 1, an empty graph, d = 0 or
/// p outside (0, 1].
SamplingPlan sampling_plan(const BipartiteGraph& g, const SparsifyParams& params);

/// One sample-and-hit round, in input indices.
struct SparsifyTrial {
  InducedSelection sample;
  InducedSelection survivors;
  std::size_t sampled_vertices = 0;
  std::size_t sampled_edges = 0;
  std::uint64_t short_cycles = 0;    // X1: cycles of length <= 2k in the sample
  std::uint64_t incident_tally = 0;  // X2: (edge, cycle) pairs, edge touching the cycle but not on it
  std::size_t vertices_deleted = 0;
  std::size_t surviving_edges = 0;
  Rational final_avg_degree{0};

  std::size_t edge_loss() const { return sampled_edges - surviving_edges; }
};

SparsifyTrial sparsify_trial(const BipartiteGraph& g, double p, std::size_t k, HittingMode mode,
                             Rng& rng, std::uint64_t cycle_cap = kDefaultCycleCap);

struct SparsifyDiagnostics {
  SamplingPlan plan;
  std::size_t attempts = 0;
  std::size_t best_attempt = 0;  // 0-based index of the reported attempt
  std::size_t sampled_vertices = 0;
  std::size_t sampled_edges = 0;
  std::uint64_t short_cycles_found = 0;
  std::uint64_t incident_tally = 0;
  std::size_t vertices_deleted = 0;
  Girth final_girth;
  Rational final_avg_degree{0};
  double d_eps_quarter = 0.0;  // d^epsilon / 4, the density the sampling argument guarantees
};

struct SparsifyResult {
  std::optional<InducedSelection> selection;  // set on success
  SparsifyDiagnostics diagnostics;            // the success, or the best attempt by average degree
};

/// Retries sample-and-hit up to max_retries times under one seed stream and
/// returns the first survivor with average degree >= t. Every survivor is
/// re-audited for an empty <= 2k census and girth >= 2k.
SparsifyResult sparsify_high_girth(const BipartiteGraph& g, const SparsifyParams& params);

/// n (lambda ceil(d))^{2k-1}; ParameterError unless every argument is positive.
BigInt naive_cycle_bound(std::uint64_t n, Rational d, std::uint64_t lambda_reg, std::uint64_t k);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::optional<double> prediction;

  /// |mean - prediction| <= z std_error; true when there is no prediction.
  bool within(double z) const;
};

struct ExpectationReport {
  SamplingPlan plan;
  std::size_t trials = 0;
  MeanEstimate vertices;   // prediction pn
  MeanEstimate edges;      // prediction p^2 d n / 2
  MeanEstimate x1;
  MeanEstimate x2;
  MeanEstimate edge_loss;
  std::size_t inequality_violations = 0;  // trials with edge loss > 2 X1 + X2
  std::vector<std::size_t> violating_trials;
};

/// Independent trials with per-trial seeds derived from params.seed, run on
/// up to `jobs` threads and aggregated in trial order. trials must be >= 30.
ExpectationReport expectation_diagnostics(const BipartiteGraph& g, const SparsifyParams& params,
                                          std::size_t trials, std::size_t jobs = 1);

/// Least-squares slope of ln y against ln x, e.g. cycle counts against degree.
/// Needs two distinct x values and positive coordinates.
double fitted_exponent(std::span<const std::pair<double, double>> points);

}  // namespace bipgirth
