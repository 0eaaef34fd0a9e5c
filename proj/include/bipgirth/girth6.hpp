#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bipgirth/detect.hpp"
#include "bipgirth/graph.hpp"
#include "bipgirth/graph_io.hpp"
#include "bipgirth/random.hpp"

namespace bipgirth {

using BigRational = boost::multiprecision::cpp_rational;

/// Partition B_1..B_r of B together with the A-vertices A1 it serves.
///
/// Valid when every A1-vertex has a neighbour in every block, and for every
/// block pair either no cross pair of B-vertices has two common neighbours in
/// A1, or every cross pair with a common neighbour has at least t of them
/// (the pair is then "neighbourly").
struct RTPartition {
  BlockList blocks;
  std::vector<VertexId> a_core;  // sorted
  std::size_t r = 0;
  std::size_t t = 0;
};

struct RTReport {
  bool pass = true;
  std::vector<VertexId> uncovered;                            // A1-vertices missing a block
  std::vector<std::pair<std::size_t, std::size_t>> bad_pairs;  // block pairs breaking the t rule
  std::vector<std::string> violations;
};

/// Throws GraphError when the blocks do not partition B (or r, t, A1 are
/// malformed); otherwise reports every semantic violation.
RTReport verify_rt_partition(const BipartiteGraph& g, const RTPartition& part);

enum class PartitionMode { Exact, Heuristic };

struct PartitionSearchOptions {
  PartitionMode mode = PartitionMode::Heuristic;
  Seed seed{};
  std::size_t restarts = 20;
  std::size_t iterations = 4000;        // local-search moves per restart
  std::uint64_t exact_limit = 2'000'000;  // max r^|B| colourings in exact mode
  std::optional<BlockList> initial;     // heuristic starting point for the first restart
};

struct PartitionSearchResult {
  std::optional<RTPartition> partition;
  std::size_t candidates = 0;  // colourings (exact) or restarts (heuristic) evaluated
  Rational core_fraction{0};   // |A1| / |A|
};

/// Searches for an (r,t)-partition of (A1, B) with A1 as large as found.
/// `a_set` must be r-regular in g (ParameterError otherwise). Exact mode
/// enumerates every r-colouring of B; heuristic mode runs restarts of a
/// local search that makes A-vertices meet every block, then both modes prune
/// A1 until the neighbourly rule holds.
PartitionSearchResult find_rt_partition(const BipartiteGraph& g, std::span<const VertexId> a_set,
                                        std::size_t r, std::size_t t,
                                        const PartitionSearchOptions& options = {});

struct TwinClass {
  std::vector<VertexId> members;     // t A-vertices with one shared neighbourhood
  std::vector<VertexId> neighbourhood;
};
struct DistinctFamily {
  std::vector<VertexId> representatives;  // pairwise distinct neighbourhoods
};

/// Groups A-vertices by neighbourhood, stopping at the first class of size t.
std::variant<TwinClass, DistinctFamily> dedupe_neighbourhoods(const BipartiteGraph& g,
                                                              std::span<const VertexId> a_set,
                                                              std::size_t t);

struct NeighbourlyGraph {
  std::size_t order = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;  // i < j
  std::vector<std::vector<std::size_t>> adjacency;      // ascending

  std::size_t degree(std::size_t i) const { return adjacency[i].size(); }
};

/// Block i ~ j iff some cross pair has at least two common neighbours in A1.
/// Throws ParameterError when the partition does not verify.
NeighbourlyGraph neighbourly_graph(const BipartiteGraph& g, const RTPartition& part);

/// Outcomes that are limitations of the desk-scale search, not disproofs.
class ExtractionError : public std::runtime_error {
 public:
  enum class Reason { PartitionUnavailable, Neither, AuditFailed };
  ExtractionError(Reason reason, const std::string& what) : std::runtime_error(what), reason_(reason) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

const char* to_string(ExtractionError::Reason reason);

struct IndependentBlocks {
  std::vector<std::size_t> members;  // a whole greedy colour class, ascending
};
struct HubBlock {
  std::size_t index = 0;
  std::size_t degree = 0;
};

/// Greedy colouring in ascending index order; returns the largest colour
/// class if it has at least need_independent members, else a maximum-degree
/// vertex (least index) if its degree is at least need_degree, else throws
/// ExtractionError(Neither).
std::variant<IndependentBlocks, HubBlock> independent_set_or_hub(const NeighbourlyGraph& h,
                                                                 std::size_t need_independent,
                                                                 std::size_t need_degree);

struct GirthSixOutcome {
  InducedSelection selection;
  Rational min_avg_degree{0};  // the bound the selection was audited against
};

/// Dense regular pair hanging off an apex: A' is r-regular in G[A',B'],
/// A' lies in N(apex) and apex is outside B'.
struct FunnelOutcome {
  std::vector<VertexId> a_prime;
  std::vector<VertexId> b_prime;
  VertexId apex = 0;
};

using ExtractOutcome = std::variant<GirthSixOutcome, FunnelOutcome, BicliqueWitness>;

/// Block-count schedule for one dichotomy step: t = lambda r + 1, R = t (r+1).
struct PropositionSchedule {
  std::size_t r = 0;
  std::size_t lambda = 0;
  std::size_t t = 0;
  std::size_t big_r = 0;
};
PropositionSchedule proposition_schedule(std::size_t r, std::size_t lambda);

struct PropositionResult {
  ExtractOutcome outcome;
  PropositionSchedule schedule;
  std::size_t core_size = 0;
  std::size_t neighbourly_edges = 0;
};

/// One dichotomy step on an R-regular A-set: a K_{t,t} from repeated
/// neighbourhoods, an audited girth-6 induced subgraph of average degree >= r,
/// or an audited funnel. Throws ParameterError if `a_set` is not R-regular and
/// ExtractionError when the desk-scale search cannot decide.
PropositionResult proposition_step(const BipartiteGraph& g, std::span<const VertexId> a_set,
                                   std::size_t r, std::size_t lambda,
                                   const PartitionSearchOptions& options = {});

std::optional<std::string> girth_six_violation(const BipartiteGraph& g, const InducedSelection& sel,
                                               Rational min_avg_degree);
std::optional<std::string> funnel_violation(const BipartiteGraph& g, const FunnelOutcome& f,
                                            std::size_t r, std::size_t lambda, std::size_t t);

struct ScheduleRow {
  std::size_t s = 0;
  BigInt r1;       // R1(s, t)
  BigInt lambda1;  // Lambda1(s, t)
};

/// R1(1,t) = t, Lambda1(1,t) = 1, and for s > 1 with r = R1(s-1,t),
/// lambda = Lambda1(s-1,t), t' = lambda r + 1:
///   R1(s,t) = t'(r+1),  Lambda1(s,t) = ceil(t' / c).
/// `c` stands in for the unquantified partition constant and must be positive.
std::vector<ScheduleRow> r1_lambda1_calculator(std::size_t s, std::size_t t, const BigRational& c);

struct IterateOptions {
  BigRational c_override{1};
  PartitionSearchOptions partition{};
  std::size_t attempts_per_level = 5;
};

struct LevelTrace {
  std::size_t depth = 0;
  std::size_t remaining_s = 0;
  PropositionSchedule schedule;
  std::size_t a_size = 0;
  std::size_t b_size = 0;
  std::size_t attempts = 0;
  std::size_t core_size = 0;
  std::string outcome;
  std::optional<VertexId> apex;    // original B-index
  std::vector<VertexId> a_set;     // original A-indices of this level's graph
  std::vector<std::string> failures;
};

struct Exhaustion {
  std::string reason;
};

using IterateOutcome = std::variant<GirthSixOutcome, BicliqueWitness, Exhaustion>;

struct IterateResult {
  IterateOutcome outcome;
  std::vector<ScheduleRow> schedule;
  std::vector<LevelTrace> trace;
  std::vector<VertexId> apexes;  // original B-indices, outermost first
};

/// Iterated dichotomy on an R1(s,t)-regular A-side. Funnels contribute apexes
/// and recurse into G[A',B'] with s-1; the apexes become the s-side (in B) of
/// the final K_{s,t}. Every returned witness or selection is re-audited on g;
/// anything that fails comes back as Exhaustion.
IterateResult iterate_extraction(const BipartiteGraph& g, std::size_t s, std::size_t t,
                                 const IterateOptions& options = {});

}  // namespace bipgirth
