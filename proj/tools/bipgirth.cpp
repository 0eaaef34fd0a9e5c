// bipgirth command-line front end. Every subcommand writes a JSON run report
// (stdout unless --report is given) and its artifacts to the paths requested.
//
// Exit codes: 0 success, 1 internal error, 2 usage or input error,
// 3 absent (nothing found within budget, or verification failed).

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bipgirth/detect.hpp"
#include "bipgirth/errors.hpp"
#include "bipgirth/generate.hpp"
#include "bipgirth/girth6.hpp"
#include "bipgirth/graph.hpp"
#include "bipgirth/graph_io.hpp"
#include "bipgirth/regularize.hpp"
#include "bipgirth/sparsify.hpp"

using namespace bipgirth;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAbsent = 3;

// Sub-seed streams: component k draws from derive_seed(--seed, k).
enum Stream : std::uint64_t { kGenStream = 1, kRegularizeStream = 2, kPartitionStream = 3, kSparsifyStream = 4 };

struct Run {
  std::string command;
  std::uint64_t seed = 0;
  Json parameters = Json::object();
  Json audits = Json::array();
  Json counters = Json::object();
  Json result = Json::object();
  Json artifacts = Json::array();
  std::string status = "success";
  std::string reason;

  bool audit(const std::string& name, bool pass, const std::string& detail = "") {
    Json a{{"name", name}, {"pass", pass}};
    if (!detail.empty()) a["detail"] = detail;
    audits.push_back(std::move(a));
    return pass;
  }
  void absent(std::string why) {
    status = "absent";
    reason = std::move(why);
  }
};

std::string str(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string str(const BigInt& v) { return v.str(); }

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    std::int64_t num = std::stoll(text.substr(0, slash), &used);
    if (used != text.substr(0, slash).size()) throw std::invalid_argument(text);
    std::int64_t den = 1;
    if (slash != std::string::npos) {
      den = std::stoll(text.substr(slash + 1), &used);
      if (used != text.size() - slash - 1 || den == 0) throw std::invalid_argument(text);
    }
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw ParameterError("not a rational number: '" + text + "'");
  }
}

BigRational to_big(const Rational& q) { return BigRational(BigInt(q.numerator()), BigInt(q.denominator())); }

Json ids(const std::vector<VertexId>& v) { return Json(v); }

Json selection_json(const InducedSelection& sel) {
  return Json{{"a_count", sel.a.size()}, {"b_count", sel.b.size()}};
}

Json witness_json(const BicliqueWitness& w) {
  return Json{{"s_side", to_string(w.s_side)}, {"s", w.s}, {"t", w.t}, {"a", ids(w.a)}, {"b", ids(w.b)}};
}

BicliqueWitness witness_from_json(const Json& j) {
  BicliqueWitness w;
  const std::string side = j.at("s_side").get<std::string>();
  if (side != "A" && side != "B") throw GraphError("witness s_side must be \"A\" or \"B\"");
  w.s_side = side == "A" ? Side::A : Side::B;
  w.s = j.at("s").get<std::size_t>();
  w.t = j.at("t").get<std::size_t>();
  w.a = j.at("a").get<std::vector<VertexId>>();
  w.b = j.at("b").get<std::vector<VertexId>>();
  return w;
}

Json girth_json(Girth g) {
  if (!g) return "Infinity";
  return *g;
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write '" + path + "'");
  out << body;
}

void save_selection(Run& run, const std::string& path, const InducedSelection& sel) {
  std::ostringstream os;
  write_selection(os, sel);
  write_text(path, os.str());
  run.artifacts.push_back(Json{{"kind", "selection"}, {"path", path}});
}

void save_witness(Run& run, const std::string& path, const BicliqueWitness& w) {
  write_text(path, witness_json(w).dump(2) + "\n");
  run.artifacts.push_back(Json{{"kind", "witness"}, {"path", path}});
}

void save_graph_artifact(Run& run, const std::string& path, const BipartiteGraph& g) {
  save_graph(path, g);
  run.artifacts.push_back(Json{{"kind", "graph"}, {"path", path}});
}

InducedSelection load_selection(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open selection file '" + path + "'");
  return read_selection(in);
}

BlockList load_blocks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open block file '" + path + "'");
  return read_blocks(in);
}

std::uint64_t default_cycle_cap() {
  if (const char* env = std::getenv("BIPGIRTH_CYCLE_CAP")) {
    try {
      return std::stoull(env);
    } catch (const std::logic_error&) {
      throw ParameterError(std::string("BIPGIRTH_CYCLE_CAP is not an integer: ") + env);
    }
  }
  return kDefaultCycleCap;
}

Json degree_json(const DegreeStats& st) {
  return Json{{"count", st.count}, {"min", st.min_degree}, {"max", st.max_degree}, {"avg", str(st.avg_degree)}};
}

Json census_json(const CycleCensus& c) {
  Json j = Json::object();
  for (const auto& [len, n] : c.counts) j[std::to_string(len)] = n;
  return j;
}

// ---- subcommands -------------------------------------------------------

struct GenArgs {
  std::string kind;
  std::string out;
  std::string blocks_out;
  std::size_t s = 0, t = 0, na = 0, nb = 0, deg = 0, r = 0, asize = 0;
  double p = 0.0;
  std::uint64_t q = 2;
  std::vector<std::size_t> degrees;
};

int cmd_gen(Run& run, const GenArgs& args) {
  const Seed seed = derive_seed(Seed{run.seed}, kGenStream);
  run.parameters["kind"] = args.kind;
  BipartiteGraph g;
  std::optional<BlockList> blocks;
  if (args.kind == "complete") {
    run.parameters.update(Json{{"s", args.s}, {"t", args.t}});
    g = gen_complete(args.s, args.t);
  } else if (args.kind == "random") {
    run.parameters.update(Json{{"na", args.na}, {"nb", args.nb}, {"p", args.p}});
    g = gen_random(args.na, args.nb, args.p, seed);
  } else if (args.kind == "biregular") {
    run.parameters.update(Json{{"na", args.na}, {"nb", args.nb}, {"deg", args.deg}});
    g = gen_biregular(args.na, args.nb, args.deg, seed);
  } else if (args.kind == "pg") {
    run.parameters["q"] = args.q;
    g = gen_projective_incidence(args.q);
  } else {
    run.parameters.update(Json{{"r", args.r}, {"degrees", args.degrees}, {"asize", args.asize}});
    if (args.r != args.degrees.size()) {
      throw ParameterError("--r must equal the number of --degrees entries");
    }
    auto nr = gen_neighbourhood_regular(NeighbourhoodRegularSpec{args.degrees, args.asize}, seed);
    g = std::move(nr.graph);
    blocks = std::move(nr.blocks);
  }

  run.audit("graph_invariants", g.check_invariants());
  if (args.kind == "biregular") {
    run.audit("a_side_regular", g.size_a() == 0 || is_r_regular_side(g, Side::A, args.deg));
  }
  if (blocks) {
    std::vector<std::uint32_t> label(g.size_b());
    for (std::size_t i = 0; i < blocks->size(); ++i) {
      for (VertexId b : (*blocks)[i]) label[b] = static_cast<std::uint32_t>(i);
    }
    bool one_per_block = true;
    for (VertexId a = 0; a < g.size_a(); ++a) {
      std::vector<std::size_t> hits(blocks->size(), 0);
      for (VertexId b : g.neighbours_a(a)) ++hits[label[b]];
      one_per_block &= std::all_of(hits.begin(), hits.end(), [](std::size_t h) { return h == 1; });
    }
    bool block_degrees = true;
    for (std::size_t i = 0; i < blocks->size(); ++i) {
      for (VertexId b : (*blocks)[i]) block_degrees &= g.degree(Side::B, b) == args.degrees[i];
    }
    run.audit("one_neighbour_per_block", one_per_block);
    run.audit("block_degrees", block_degrees);
  }

  save_graph_artifact(run, args.out, g);
  if (blocks) {
    const std::string path = args.blocks_out.empty() ? args.out + ".blocks" : args.blocks_out;
    std::ostringstream os;
    write_blocks(os, *blocks);
    write_text(path, os.str());
    run.artifacts.push_back(Json{{"kind", "blocks"}, {"path", path}});
  }
  run.result = Json{{"a_count", g.size_a()}, {"b_count", g.size_b()}, {"edges", g.edge_count()}};
  return kExitOk;
}

struct AnalyzeArgs {
  std::string graph;
  std::size_t k = 3;
  std::size_t probe_s = 2, probe_t = 2;
  std::uint64_t work_limit = 10'000'000;
  std::uint64_t cycle_cap = 0;
};

int cmd_analyze(Run& run, const AnalyzeArgs& args) {
  run.parameters = Json{{"graph", args.graph}, {"k", args.k}, {"probe_s", args.probe_s},
                        {"probe_t", args.probe_t}, {"work_limit", args.work_limit}};
  const BipartiteGraph g = load_graph(args.graph);
  run.result["a_count"] = g.size_a();
  run.result["b_count"] = g.size_b();
  run.result["edges"] = g.edge_count();
  run.result["avg_degree"] = str(average_degree(g));
  run.result["degrees"] = Json{{"A", degree_json(degree_stats(g, Side::A))},
                               {"B", degree_json(degree_stats(g, Side::B))}};
  run.result["girth"] = girth_json(girth(g));
  const CycleCensus census = count_short_cycles(g, 2 * args.k, args.cycle_cap);
  run.result["census"] = census_json(census);
  run.counters["cycles_enumerated"] = census.total;

  Json probe{{"s", args.probe_s}, {"t", args.probe_t}};
  try {
    auto found = find_biclique(g, args.probe_s, args.probe_t, Side::A, args.work_limit);
    if (!found) found = find_biclique(g, args.probe_s, args.probe_t, Side::B, args.work_limit);
    probe["status"] = found ? "found" : "absent";
    if (found) {
      probe["witness"] = witness_json(*found);
      run.audit("biclique_witness", verify_biclique(g, *found));
    }
  } catch (const BudgetExceeded&) {
    probe["status"] = "budget";
  }
  run.result["biclique_probe"] = probe;
  run.audit("graph_invariants", g.check_invariants());
  return kExitOk;
}

struct RegularizeArgs {
  std::string graph, out;
  RegularizeParams params;
  std::string accept = "1/2";
};

int cmd_regularize(Run& run, RegularizeArgs args) {
  args.params.seed = derive_seed(Seed{run.seed}, kRegularizeStream);
  args.params.accept_fraction = parse_rational(args.accept);
  run.parameters = Json{{"graph", args.graph}, {"r", args.params.r}, {"lambda", args.params.lambda},
                        {"retries", args.params.max_retries}, {"partition_budget", args.params.partition_budget},
                        {"accept_fraction", str(args.params.accept_fraction)}};
  const BipartiteGraph g = load_graph(args.graph);
  const auto res = extract_regular_side(g, args.params);
  const auto& st = res.stats;
  run.counters = Json{{"attempts", st.attempts}, {"partition_draws", st.partition_draws}};
  run.result = Json{{"max_degree_a", st.max_degree_a}, {"d_hat", st.d_hat}, {"sample_prob", st.sample_prob},
                    {"best_core", st.best_core}, {"best_regular", st.best_regular}};
  if (!res.selection) {
    run.absent("no attempt produced an r-regular side with |A| >= lambda |B|");
    return kExitAbsent;
  }
  auto bad = regular_side_violation(g, *res.selection, args.params.r, args.params.lambda);
  run.audit("regular_side", !bad, bad.value_or(""));
  run.result["selection"] = selection_json(*res.selection);
  save_selection(run, args.out, *res.selection);
  return kExitOk;
}

struct ExtractArgs {
  std::string graph, out, blocks, mode = "heuristic", c = "1";
  std::size_t s = 1, t = 1, attempts = 5, restarts = 20, iterations = 4000;
  std::uint64_t exact_limit = 2'000'000;
};

int cmd_extract(Run& run, const ExtractArgs& args) {
  run.parameters = Json{{"graph", args.graph}, {"s", args.s}, {"t", args.t}, {"c", args.c},
                        {"mode", args.mode}, {"attempts", args.attempts}, {"restarts", args.restarts},
                        {"iterations", args.iterations}};
  if (!args.blocks.empty()) run.parameters["blocks"] = args.blocks;
  const BipartiteGraph g = load_graph(args.graph);
  IterateOptions opts;
  opts.c_override = to_big(parse_rational(args.c));
  opts.attempts_per_level = args.attempts;
  opts.partition.mode = args.mode == "exact" ? PartitionMode::Exact : PartitionMode::Heuristic;
  opts.partition.seed = derive_seed(Seed{run.seed}, kPartitionStream);
  opts.partition.restarts = args.restarts;
  opts.partition.iterations = args.iterations;
  opts.partition.exact_limit = args.exact_limit;
  if (!args.blocks.empty()) opts.partition.initial = load_blocks(args.blocks);

  const IterateResult res = iterate_extraction(g, args.s, args.t, opts);
  Json schedule = Json::array();
  for (const auto& row : res.schedule) {
    schedule.push_back(Json{{"s", row.s}, {"R1", str(row.r1)}, {"Lambda1", str(row.lambda1)}});
  }
  Json trace = Json::array();
  std::size_t attempts = 0;
  for (const auto& lv : res.trace) {
    attempts += lv.attempts;
    Json l{{"depth", lv.depth}, {"remaining_s", lv.remaining_s}, {"a_size", lv.a_size},
           {"b_size", lv.b_size}, {"attempts", lv.attempts}, {"core_size", lv.core_size},
           {"outcome", lv.outcome}, {"failures", lv.failures}};
    if (lv.schedule.r > 0) {
      l["schedule"] = Json{{"r", lv.schedule.r}, {"lambda", lv.schedule.lambda}, {"t", lv.schedule.t},
                           {"R", lv.schedule.big_r}};
    }
    if (lv.apex) l["apex"] = *lv.apex;
    trace.push_back(std::move(l));
  }
  run.result = Json{{"schedule", schedule}, {"trace", trace}, {"apexes", res.apexes}};
  run.counters = Json{{"levels", res.trace.size()}, {"attempts", attempts}};

  if (const auto* w = std::get_if<BicliqueWitness>(&res.outcome)) {
    auto bad = biclique_violation(g, *w);
    run.audit("biclique_witness", !bad, bad.value_or(""));
    run.result["kind"] = "biclique";
    run.result["witness"] = witness_json(*w);
    save_witness(run, args.out, *w);
    return kExitOk;
  }
  if (const auto* g6 = std::get_if<GirthSixOutcome>(&res.outcome)) {
    auto bad = girth_six_violation(g, g6->selection, g6->min_avg_degree);
    run.audit("girth_six_selection", !bad, bad.value_or(""));
    run.result["kind"] = "girth_six";
    run.result["selection"] = selection_json(g6->selection);
    run.result["min_avg_degree"] = str(g6->min_avg_degree);
    run.result["avg_degree"] = str(average_degree(induced_subgraph(g, g6->selection).graph));
    save_selection(run, args.out, g6->selection);
    return kExitOk;
  }
  run.result["kind"] = "exhausted";
  run.absent(std::get<Exhaustion>(res.outcome).reason);
  return kExitAbsent;
}

struct SparsifyArgs {
  std::string graph, out, hitting = "greedy", diagnostics;
  SparsifyParams params;
  std::optional<double> p;
};

std::size_t parse_trials(const std::string& spec) {
  const std::string prefix = "trials=";
  if (spec.rfind(prefix, 0) != 0) throw ParameterError("--diagnostics expects trials=N");
  try {
    return std::stoull(spec.substr(prefix.size()));
  } catch (const std::logic_error&) {
    throw ParameterError("--diagnostics expects trials=N");
  }
}

Json mean_json(const MeanEstimate& m) {
  Json j{{"mean", m.mean}, {"std_error", m.std_error}};
  if (m.prediction) {
    j["prediction"] = *m.prediction;
    j["within_5_se"] = m.within(5.0);
  }
  return j;
}

int cmd_sparsify(Run& run, SparsifyArgs args, std::size_t jobs) {
  args.params.seed = derive_seed(Seed{run.seed}, kSparsifyStream);
  args.params.hitting = args.hitting == "per-cycle" ? HittingMode::PerCycle : HittingMode::Greedy;
  args.params.p_override = args.p;
  run.parameters = Json{{"graph", args.graph}, {"t", args.params.t}, {"k", args.params.k},
                        {"lambda", args.params.lambda_reg}, {"retries", args.params.max_retries},
                        {"hitting", to_string(args.params.hitting)}};
  if (args.p) run.parameters["p"] = *args.p;
  const BipartiteGraph g = load_graph(args.graph);

  if (!args.diagnostics.empty()) {
    const std::size_t trials = parse_trials(args.diagnostics);
    run.parameters["trials"] = trials;
    const auto rep = expectation_diagnostics(g, args.params, trials, jobs);
    run.result["expectation"] = Json{{"trials", rep.trials},
                                     {"vertices", mean_json(rep.vertices)},
                                     {"edges", mean_json(rep.edges)},
                                     {"x1", mean_json(rep.x1)},
                                     {"x2", mean_json(rep.x2)},
                                     {"edge_loss", mean_json(rep.edge_loss)},
                                     {"inequality_violations", rep.inequality_violations}};
    if (args.params.hitting == HittingMode::PerCycle) {
      run.audit("edge_loss_inequality", rep.inequality_violations == 0,
                std::to_string(rep.inequality_violations) + " violating trials");
    }
  }

  const auto res = sparsify_high_girth(g, args.params);
  const auto& d = res.diagnostics;
  run.result["plan"] = Json{{"d", str(d.plan.d)}, {"epsilon", str(d.plan.epsilon)}, {"p", d.plan.p}};
  run.result["best"] = Json{{"attempt", d.best_attempt},
                            {"sampled_vertices", d.sampled_vertices},
                            {"sampled_edges", d.sampled_edges},
                            {"short_cycles", d.short_cycles_found},
                            {"incident_tally", d.incident_tally},
                            {"vertices_deleted", d.vertices_deleted},
                            {"final_girth", girth_json(d.final_girth)},
                            {"final_avg_degree", str(d.final_avg_degree)}};
  run.result["density_chain"] = Json{{"d_eps_quarter", d.d_eps_quarter},
                                     {"reaches_t", d.d_eps_quarter >= static_cast<double>(args.params.t)}};
  run.counters = Json{{"attempts", d.attempts}, {"cycles_enumerated", d.short_cycles_found}};
  if (!res.selection) {
    run.absent("no attempt reached average degree t");
    return kExitAbsent;
  }
  const InducedGraph h = induced_subgraph(g, *res.selection);
  const std::size_t two_k = 2 * args.params.k;
  run.audit("no_short_cycles", count_short_cycles(h.graph, two_k, args.params.cycle_cap).total == 0);
  run.audit("girth_at_least_2k", girth_at_least(girth(h.graph), two_k));
  run.audit("avg_degree_at_least_t",
            average_degree(h.graph) >= Rational(static_cast<std::int64_t>(args.params.t)));
  run.result["selection"] = selection_json(*res.selection);
  if (!args.out.empty()) save_selection(run, args.out, *res.selection);
  return kExitOk;
}

struct VerifyArgs {
  std::string graph, witness, selection, min_avg;
  std::size_t girth = 0;
  std::optional<std::size_t> regular_a;
  std::size_t lambda = 0;
};

int cmd_verify(Run& run, const VerifyArgs& args) {
  run.parameters = Json{{"graph", args.graph}};
  const BipartiteGraph g = load_graph(args.graph);
  bool ok = true;
  std::string first_failure;
  auto check = [&](const std::string& name, std::optional<std::string> bad) {
    if (!run.audit(name, !bad, bad.value_or("")) && ok) {
      ok = false;
      first_failure = name + ": " + *bad;
    }
  };

  if (!args.witness.empty()) {
    run.parameters["witness"] = args.witness;
    std::ifstream in(args.witness);
    if (!in) throw GraphError("cannot open witness file '" + args.witness + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw GraphError(std::string("witness is not valid JSON: ") + e.what());
    }
    BicliqueWitness w;
    try {
      w = witness_from_json(j);
    } catch (const Json::exception& e) {
      throw GraphError(std::string("malformed witness: ") + e.what());
    }
    check("biclique_witness", biclique_violation(g, w));
  } else {
    run.parameters["selection"] = args.selection;
    const InducedSelection sel = load_selection(args.selection);
    validate_selection(g, sel);
    const InducedGraph h = induced_subgraph(g, sel);
    run.result["selection"] = selection_json(sel);
    run.result["girth"] = girth_json(girth(h.graph));
    run.result["avg_degree"] = str(average_degree(h.graph));
    if (args.girth > 0) {
      run.parameters["girth"] = args.girth;
      check("girth", girth_at_least(girth(h.graph), args.girth)
                         ? std::nullopt
                         : std::optional<std::string>("girth " + girth_to_string(girth(h.graph)) +
                                                      " is below " + std::to_string(args.girth)));
    }
    if (!args.min_avg.empty()) {
      const Rational bound = parse_rational(args.min_avg);
      run.parameters["min_avg"] = str(bound);
      const Rational avg = average_degree(h.graph);
      check("min_avg_degree", avg >= bound ? std::nullopt
                                           : std::optional<std::string>("average degree " + str(avg) +
                                                                        " is below " + str(bound)));
    }
    if (args.regular_a) {
      run.parameters["regular_a"] = *args.regular_a;
      run.parameters["lambda"] = args.lambda;
      check("regular_side", regular_side_violation(g, sel, *args.regular_a, args.lambda));
    }
  }
  if (!ok) {
    run.absent("verification failed: " + first_failure);
    return kExitAbsent;
  }
  return kExitOk;
}

struct ThresholdArgs {
  std::uint64_t r = 1, lambda = 1;
  std::size_t s = 0, t = 0;
  std::string c = "1";
};

int cmd_thresholds(Run& run, const ThresholdArgs& args) {
  run.parameters = Json{{"r", args.r}, {"lambda", args.lambda}};
  const auto th = lemma5_threshold(args.r, args.lambda);
  run.result["d_inner"] = str(th.d_inner);
  run.result["d_threshold"] = str(th.d_threshold);
  if (args.s > 0) {
    run.parameters.update(Json{{"s", args.s}, {"t", args.t}, {"c", args.c}});
    Json rows = Json::array();
    for (const auto& row : r1_lambda1_calculator(args.s, args.t, to_big(parse_rational(args.c)))) {
      rows.push_back(Json{{"s", row.s}, {"R1", str(row.r1)}, {"Lambda1", str(row.lambda1)}});
    }
    run.result["schedule"] = rows;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bipartite girth extraction, biclique detection and sparsification"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand; subcommands inherit this
  std::uint64_t seed = 0;
  std::string report_path;
  std::size_t jobs = 1;
  std::uint64_t cycle_cap = 0;
  bool cap_given = false;
  app.add_option("--seed", seed, "Master seed; components use derived sub-seeds");
  app.add_option("--report", report_path, "Write the JSON run report here instead of stdout");
  app.add_option("--jobs", jobs, "Worker threads where a command supports them")->check(CLI::PositiveNumber);
  app.add_option_function<std::uint64_t>(
         "--cycle-cap", [&](std::uint64_t v) { cycle_cap = v; cap_given = true; },
         "Cycle enumeration cap (0 = none; default from BIPGIRTH_CYCLE_CAP)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph");
  gen_cmd->require_subcommand(1);
  auto add_out = [&](CLI::App* c) { c->add_option("--out", gen.out, "Graph file")->required(); };
  auto* g_complete = gen_cmd->add_subcommand("complete", "Complete bipartite K_{s,t}");
  g_complete->add_option("--s", gen.s)->required();
  g_complete->add_option("--t", gen.t)->required();
  add_out(g_complete);
  auto* g_random = gen_cmd->add_subcommand("random", "Each pair is an edge with probability p");
  g_random->add_option("--na", gen.na)->required();
  g_random->add_option("--nb", gen.nb)->required();
  g_random->add_option("--p", gen.p)->required()->check(CLI::Range(0.0, 1.0));
  add_out(g_random);
  auto* g_bireg = gen_cmd->add_subcommand("biregular", "Configuration model with fixed A-degree");
  g_bireg->add_option("--na", gen.na)->required();
  g_bireg->add_option("--nb", gen.nb)->required();
  g_bireg->add_option("--deg", gen.deg)->required();
  add_out(g_bireg);
  auto* g_pg = gen_cmd->add_subcommand("pg", "Point-line incidence graph of PG(2,q)");
  g_pg->add_option("--q", gen.q)->required();
  add_out(g_pg);
  auto* g_nbr = gen_cmd->add_subcommand("nbr-regular", "One neighbour per block, block degrees d_i");
  g_nbr->add_option("--r", gen.r)->required();
  g_nbr->add_option("--degrees", gen.degrees)->required()->delimiter(',');
  g_nbr->add_option("--asize", gen.asize)->required();
  g_nbr->add_option("--blocks-out", gen.blocks_out, "Block sidecar (default: <out>.blocks)");
  add_out(g_nbr);

  AnalyzeArgs analyze;
  auto* an_cmd = app.add_subcommand("analyze", "Girth, short-cycle census, degrees, biclique probe");
  an_cmd->add_option("--graph", analyze.graph)->required();
  an_cmd->add_option("--k", analyze.k, "Census up to length 2k")->check(CLI::Range(2, 64));
  an_cmd->add_option("--probe-s", analyze.probe_s);
  an_cmd->add_option("--probe-t", analyze.probe_t);
  an_cmd->add_option("--work-limit", analyze.work_limit);

  RegularizeArgs reg;
  auto* reg_cmd = app.add_subcommand("regularize", "Induced subgraph with an r-regular side");
  reg_cmd->add_option("--graph", reg.graph)->required();
  reg_cmd->add_option("--out", reg.out, "Selection file")->required();
  reg_cmd->add_option("--r", reg.params.r)->required();
  reg_cmd->add_option("--lambda", reg.params.lambda)->required();
  reg_cmd->add_option("--retries", reg.params.max_retries);
  reg_cmd->add_option("--partition-budget", reg.params.partition_budget);
  reg_cmd->add_option("--accept", reg.accept, "Core fraction accepting a partition, e.g. 1/2");

  ExtractArgs ext;
  auto* ext_cmd = app.add_subcommand("extract-girth6", "K_{s,t} witness or girth-6 induced subgraph");
  ext_cmd->add_option("--graph", ext.graph)->required();
  ext_cmd->add_option("--out", ext.out, "Witness JSON or selection file")->required();
  ext_cmd->add_option("--s", ext.s)->required();
  ext_cmd->add_option("--t", ext.t)->required();
  ext_cmd->add_option("--c", ext.c, "Partition constant, rational");
  ext_cmd->add_option("--mode", ext.mode)->check(CLI::IsMember({"exact", "heuristic"}));
  ext_cmd->add_option("--blocks", ext.blocks, "Initial partition for the first search");
  ext_cmd->add_option("--attempts", ext.attempts, "Dichotomy attempts per level");
  ext_cmd->add_option("--restarts", ext.restarts);
  ext_cmd->add_option("--iterations", ext.iterations);
  ext_cmd->add_option("--exact-limit", ext.exact_limit);

  SparsifyArgs sp;
  auto* sp_cmd = app.add_subcommand("sparsify", "Random sampling plus short-cycle hitting");
  sp_cmd->add_option("--graph", sp.graph)->required();
  sp_cmd->add_option("--out", sp.out, "Selection file");
  sp_cmd->add_option("--t", sp.params.t)->required();
  sp_cmd->add_option("--k", sp.params.k)->required();
  sp_cmd->add_option("--lambda", sp.params.lambda_reg);
  sp_cmd->add_option("--retries", sp.params.max_retries);
  sp_cmd->add_option("--hitting", sp.hitting)->check(CLI::IsMember({"greedy", "per-cycle"}));
  sp_cmd->add_option("--p", sp.p, "Force the sampling probability")->check(CLI::Range(0.0, 1.0));
  sp_cmd->add_option("--diagnostics", sp.diagnostics, "Monte-Carlo expectations, trials=N");

  VerifyArgs ver;
  auto* ver_cmd = app.add_subcommand("verify", "Audit a witness or a selection");
  ver_cmd->alias("verify-witness");
  ver_cmd->add_option("--graph", ver.graph)->required();
  auto* w_opt = ver_cmd->add_option("--witness", ver.witness);
  auto* s_opt = ver_cmd->add_option("--selection", ver.selection);
  w_opt->excludes(s_opt);
  ver_cmd->add_option("--girth", ver.girth, "Required minimum girth of the selection");
  ver_cmd->add_option("--min-avg", ver.min_avg, "Required minimum average degree, rational");
  ver_cmd->add_option("--regular-a", ver.regular_a, "Required A-side regularity");
  ver_cmd->add_option("--lambda", ver.lambda, "Required |A| >= lambda |B| with --regular-a");

  ThresholdArgs th;
  auto* th_cmd = app.add_subcommand("thresholds", "Regularization threshold and R1/Lambda1 schedule");
  th_cmd->add_option("--r", th.r);
  th_cmd->add_option("--lambda", th.lambda);
  th_cmd->add_option("--s", th.s, "Also tabulate R1(s,t), Lambda1(s,t)");
  th_cmd->add_option("--t", th.t);
  th_cmd->add_option("--c", th.c, "Partition constant, rational");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (ver_cmd->parsed() && ver.witness.empty() && ver.selection.empty()) {
    std::cerr << "verify: one of --witness or --selection is required\n";
    return kExitUsage;
  }
  if (th_cmd->parsed() && th.s > 0 && th.t == 0) {
    std::cerr << "thresholds: --t is required with --s\n";
    return kExitUsage;
  }
  if (sp_cmd->parsed() && sp.out.empty() && sp.diagnostics.empty()) {
    std::cerr << "sparsify: --out is required\n";
    return kExitUsage;
  }

  Run run;
  run.seed = seed;
  const auto started = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    const std::uint64_t cap = cap_given ? cycle_cap : default_cycle_cap();
    analyze.cycle_cap = cap;
    sp.params.cycle_cap = cap;
    if (gen_cmd->parsed()) {
      run.command = "gen";
      for (auto* sub : gen_cmd->get_subcommands()) gen.kind = sub->get_name();
      code = cmd_gen(run, gen);
    } else if (an_cmd->parsed()) {
      run.command = "analyze";
      code = cmd_analyze(run, analyze);
    } else if (reg_cmd->parsed()) {
      run.command = "regularize";
      code = cmd_regularize(run, reg);
    } else if (ext_cmd->parsed()) {
      run.command = "extract-girth6";
      code = cmd_extract(run, ext);
    } else if (sp_cmd->parsed()) {
      run.command = "sparsify";
      code = cmd_sparsify(run, sp, jobs);
    } else if (ver_cmd->parsed()) {
      run.command = "verify";
      code = cmd_verify(run, ver);
    } else {
      run.command = "thresholds";
      code = cmd_thresholds(run, th);
    }
    if (code == kExitOk) {
      for (const auto& a : run.audits) {
        if (!a["pass"].get<bool>()) {
          run.status = "error";
          run.reason = "audit failed: " + a["name"].get<std::string>();
          code = kExitInternal;
          break;
        }
      }
    }
  } catch (const GraphError& e) {
    run.status = "error";
    run.reason = e.what();
    code = kExitUsage;
  } catch (const ParameterError& e) {
    run.status = "error";
    run.reason = e.what();
    code = kExitUsage;
  } catch (const BudgetExceeded& e) {
    run.absent(std::string("budget exceeded: ") + e.what());
    code = kExitAbsent;
  } catch (const std::exception& e) {
    run.status = "error";
    run.reason = std::string("internal error: ") + e.what();
    code = kExitInternal;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  Json report{{"schema_version", kSchemaVersion},
              {"command", run.command},
              {"parameters", run.parameters},
              {"seed", run.seed},
              {"outcome", Json{{"status", run.status}, {"exit_code", code}}},
              {"artifacts", run.artifacts},
              {"audits", run.audits},
              {"counters", run.counters},
              {"result", run.result},
              {"timing", Json{{"wall_seconds", seconds}}}};
  if (!run.reason.empty()) report["outcome"]["reason"] = run.reason;
  if (code != kExitOk && code != kExitAbsent) std::cerr << run.command << ": " << run.reason << "\n";

  const std::string text = report.dump(2) + "\n";
  if (report_path.empty()) {
    std::cout << text;
  } else {
    try {
      write_text(report_path, text);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return kExitUsage;
    }
  }
  return code;
}
