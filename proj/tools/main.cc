// hyperroute command-line tool: generators, matching, routing, splitting,
// verification, benchmarks and manifest replay.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperroute/engine.h"
#include "hyperroute/graph.h"
#include "hyperroute/halflayer.h"
#include "hyperroute/hypergraph.h"
#include "hyperroute/routing.h"
#include "hyperroute/splitting.h"
#include "manifest.h"

namespace hyperroute::cli {
namespace {

enum ExitCode {
  kOk = 0,
  kVerifyFailed = 1,
  kAlgorithmFailed = 2,
  kInputError = 3,
};

struct Options {
  std::uint64_t seed = 1;
  std::string manifest;
  std::string out = "-";

  // gen
  std::string family = "complete";
  int n = 0;
  int degree = 3;
  int cliques = 0;
  int clique_size = 0;

  // engine
  int delta = 0;
  std::string mu = "1/10";
  std::int64_t cap = 0;
  bool strict = false;
  std::string trace;
  std::string oracle;

  // match
  std::string input;
  std::string verify_haxell;
  std::string throttle = "1/2";
  int rank_limit = 0;

  // route / split / verify
  std::string graph;
  std::string demands;
  std::string phi;
  bool relaxed = false;
  int r = 0;
  int k = 0;
  std::string prefix;
  std::string summary = "-";
  std::string template_family = "random-regular";
  int template_degree = 2;
  std::uint64_t template_seed = 0;
  std::string c = "1/200";
  std::string bound = "phi-squared";
  std::string solution;

  // bench
  std::vector<std::string> families{"complete", "hypercube"};
  std::vector<int> sizes{8, 16};
  bool no_timing = false;

  // replay
  std::string replay_path;
};

class Context {
 public:
  explicit Context(RunManifest* manifest) : manifest_(manifest) {}

  std::ifstream OpenInput(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    if (manifest_) manifest_->inputs.push_back({path, HashFile(path)});
    return in;
  }

  // Runs `write` on stdout for "-", else on a fresh file recorded as output.
  void WriteOutput(const std::string& path,
                   const std::function<void(std::ostream&)>& write) {
    if (path == "-") {
      write(std::cout);
      std::cout.flush();
      return;
    }
    {
      std::ofstream out(path);
      if (!out) throw InputError("cannot write " + path);
      write(out);
    }
    outputs_.push_back(path);
  }

  std::ostream* OpenTrace(const std::string& path) {
    if (path.empty()) return nullptr;
    if (path == "-") return &std::cout;
    trace_file_ = std::make_unique<std::ofstream>(path);
    if (!*trace_file_) throw InputError("cannot write " + path);
    outputs_.push_back(path);
    return trace_file_.get();
  }

  void Finish() {
    if (trace_file_) trace_file_->close();
    if (!manifest_) return;
    for (const auto& path : outputs_) {
      manifest_->outputs.push_back({path, HashFile(path)});
    }
  }

 private:
  RunManifest* manifest_;
  std::vector<std::string> outputs_;
  std::unique_ptr<std::ofstream> trace_file_;
};

EngineConfig MakeEngineConfig(const Options& o, Context& ctx, int default_delta,
                              OracleKind default_oracle) {
  EngineConfig cfg;
  cfg.delta = o.delta > 0 ? o.delta : default_delta;
  cfg.mu = ParseRational(o.mu);
  cfg.iteration_cap = o.cap;
  cfg.strict_mode = o.strict;
  cfg.oracle.kind = o.oracle.empty() ? default_oracle : ParseOracleKind(o.oracle);
  cfg.oracle.rank_limit = o.rank_limit;
  cfg.oracle.throttle_fraction = ParseRational(o.throttle);
  cfg.trace = ctx.OpenTrace(o.trace);
  ValidateConfig(cfg);
  return cfg;
}

int CmdGen(const Options& o, Context& ctx) {
  GeneratorSpec spec;
  spec.family = ParseGraphFamily(o.family);
  spec.n = o.n;
  spec.degree = o.degree;
  spec.cliques = o.cliques;
  spec.clique_size = o.clique_size;
  spec.seed = o.seed;
  MultiGraph g = Generate(spec);
  ctx.WriteOutput(o.out, [&](std::ostream& out) { WriteGraph(out, g); });
  return kOk;
}

int CmdMatch(const Options& o, Context& ctx) {
  auto in = ctx.OpenInput(o.input);
  BipartiteHypergraph h = ReadHypergraph(in);
  if (!o.verify_haxell.empty()) {
    Rational phi = ParseRational(o.verify_haxell);
    try {
      HaxellReport report = CheckStrongHaxell(h, phi);
      std::cerr << "haxell phi=" << ToString(phi) << ": ";
      if (report.holds) {
        std::cerr << "holds\n";
      } else {
        std::cerr << "fails at S = {";
        for (std::size_t i = 0; i < report.witness.size(); ++i) {
          std::cerr << (i ? "," : "") << report.witness[i];
        }
        std::cerr << "} with tau = " << report.witness_tau << "\n";
      }
    } catch (const CapExceeded& e) {
      std::cerr << "haxell phi=" << ToString(phi) << ": not checked ("
                << e.what() << ")\n";
    }
  }
  EngineConfig cfg =
      MakeEngineConfig(o, ctx, EngineConfig{}.delta, OracleKind::kExplicitGreedy);
  MatchingResult result = HypergraphMatching(h, cfg);
  if (!IsPerfectMatching(h, result.matching)) {
    std::cerr << "internal error: engine returned a non-perfect matching\n";
    return kVerifyFailed;
  }
  ctx.WriteOutput(o.out,
                  [&](std::ostream& out) { WriteMatching(out, result.matching); });
  std::cerr << "matched " << result.matching.size() << " in "
            << result.stats.iterations << " iterations\n";
  return kOk;
}

RouteOptions MakeRouteOptions(const Options& o) {
  RouteOptions ro;
  if (!o.phi.empty()) ro.phi = ParseRational(o.phi);
  ro.relaxed = o.relaxed;
  ro.r = o.r;
  ro.delta = o.delta;
  return ro;
}

void PrintHypothesis(const RoutingInstance& inst, const RouteOptions& ro) {
  Rational phi = ro.phi;
  if (phi.numerator() == 0 && inst.graph.num_vertices() >= 2 &&
      inst.graph.num_vertices() <= ro.caps.conductance_n) {
    phi = ConductanceExact(inst.graph, ro.caps).phi;
  }
  std::cerr << ToString(CheckRoutingHypothesis(inst.graph, phi, inst.k)) << "\n";
}

int CmdRoute(const Options& o, Context& ctx) {
  auto gin = ctx.OpenInput(o.graph);
  MultiGraph g = ReadGraph(gin);
  auto din = ctx.OpenInput(o.demands);
  std::vector<Demand> demands = ReadDemands(din);
  RouteOptions ro = MakeRouteOptions(o);
  RoutingInstance inst = MakeRoutingInstance(std::move(g), std::move(demands), ro);
  Options eo = o;
  eo.delta = inst.delta;
  EngineConfig cfg =
      MakeEngineConfig(eo, ctx, inst.delta, OracleKind::kGraphBlockingFlow);
  std::cerr << "r = " << inst.r << ", delta = " << inst.delta
            << ", k = " << inst.k << "\n";
  try {
    RouteResult result = Route(inst, cfg);
    ctx.WriteOutput(o.out,
                    [&](std::ostream& out) { WriteSolution(out, result.solution); });
    std::cerr << "routed " << inst.demands.size() << " demands in "
              << result.stats.iterations << " iterations\n";
  } catch (const RoutingError& e) {
    std::cerr << e.what() << "\n";
    PrintHypothesis(inst, ro);
    return kAlgorithmFailed;
  }
  return kOk;
}

std::string PartPath(const std::string& prefix, int i) {
  return prefix + "." + std::to_string(i) + ".graph";
}

SplitBound ParseBound(const std::string& text) {
  if (text == "phi-squared") return SplitBound::kPhiSquared;
  if (text == "phi") return SplitBound::kPhi;
  throw InputError("unknown bound '" + text + "'");
}

void PrintRatios(const SplitReport& report) {
  for (std::size_t i = 0; i < report.ratio.size(); ++i) {
    std::cerr << "part " << i + 1 << ": phi_i * log2 n / phi = "
              << report.ratio[i] << "\n";
  }
  std::cerr << "phi^2 bound " << (report.phi_squared_bound ? "holds" : "fails")
            << ", phi bound " << (report.phi_bound ? "holds" : "fails") << "\n";
}

int CmdSplit(const Options& o, Context& ctx) {
  auto gin = ctx.OpenInput(o.graph);
  MultiGraph g = ReadGraph(gin);
  if (o.k < 1) throw InputError("--k must be >= 1");
  SplitConfig cfg;
  cfg.templ.generator.family = ParseGraphFamily(o.template_family);
  cfg.templ.generator.degree = o.template_degree;
  cfg.templ.generator.seed = o.template_seed ? o.template_seed : o.seed;
  cfg.route = MakeRouteOptions(o);
  cfg.engine = MakeEngineConfig(o, ctx, EngineConfig{}.delta,
                                OracleKind::kGraphBlockingFlow);
  SplitResult result;
  try {
    result = Split(g, o.k, cfg);
  } catch (const RoutingError& e) {
    std::cerr << e.what() << "\n";
    return kAlgorithmFailed;
  }
  for (int i = 0; i < o.k; ++i) {
    MultiGraph part = PartGraph(g, result.parts[i]);
    ctx.WriteOutput(PartPath(o.prefix, i + 1),
                    [&](std::ostream& out) { WriteGraph(out, part); });
  }
  SplitReport report;
  if (g.num_vertices() <= ExactCaps{}.conductance_n) {
    report = VerifySplit(g, result, ParseRational(o.c), ParseBound(o.bound));
    PrintRatios(report);
  }
  ctx.WriteOutput(o.summary, [&](std::ostream& out) {
    WriteSplitSummary(out, report, result);
  });
  if (report.violation) {
    std::cerr << "violation: " << *report.violation << "\n";
    return kVerifyFailed;
  }
  return kOk;
}

// Maps each edge of a part file back to the lowest unused parallel edge of g.
std::vector<GraphEdgeId> ResolvePart(const MultiGraph& g, const MultiGraph& part,
                                     std::vector<char>& used) {
  if (part.num_vertices() != g.num_vertices()) {
    throw InputError("part has a different vertex count");
  }
  std::vector<GraphEdgeId> ids;
  for (GraphEdgeId e = 0; e < part.num_edges(); ++e) {
    auto [u, v] = part.endpoints(e);
    GraphEdgeId pick = -1, fallback = -1;
    for (const Arc& arc : g.adjacency(u)) {
      if (arc.to != v) continue;
      if (fallback < 0) fallback = arc.id;
      if (!used[arc.id]) {
        pick = arc.id;
        break;
      }
    }
    if (pick < 0) pick = fallback;
    if (pick < 0) {
      throw InputError("part edge " + std::to_string(u) + "-" +
                       std::to_string(v) + " is not in the graph");
    }
    used[pick] = 1;
    ids.push_back(pick);
  }
  return ids;
}

int CmdVerify(const Options& o, Context& ctx) {
  auto gin = ctx.OpenInput(o.graph);
  MultiGraph g = ReadGraph(gin);
  if (!o.prefix.empty()) {
    if (o.k < 1) throw InputError("--k must be >= 1 with --split-prefix");
    SplitResult result;
    result.k = o.k;
    std::vector<char> used(g.num_edges(), 0);
    for (int i = 1; i <= o.k; ++i) {
      auto pin = ctx.OpenInput(PartPath(o.prefix, i));
      result.parts.push_back(ResolvePart(g, ReadGraph(pin), used));
    }
    SplitReport report =
        VerifySplit(g, result, ParseRational(o.c), ParseBound(o.bound));
    WriteSplitSummary(std::cout, report, result);
    PrintRatios(report);
    if (report.violation) {
      std::cout << "violation: " << *report.violation << "\n";
      return kVerifyFailed;
    }
    std::cout << "ok\n";
    return kOk;
  }

  auto din = ctx.OpenInput(o.demands);
  RoutingInstance inst;
  inst.demands = ReadDemands(din);
  inst.graph = std::move(g);
  inst.r = o.r > 0 ? o.r : std::max(1, inst.graph.num_vertices());
  inst.k = o.k > 0 ? o.k : std::max(1, MaxDemandMultiplicity(
                                           inst.graph.num_vertices(), inst.demands));
  inst.delta = 1;
  if (auto err = ValidateInstance(inst)) {
    std::cout << "violation: " << *err << "\n";
    return kVerifyFailed;
  }
  auto sin = ctx.OpenInput(o.solution);
  PathSolution sol = ReadSolution(sin, inst.graph);
  if (auto err = VerifySolution(inst, sol)) {
    std::cout << "violation: " << *err << "\n";
    return kVerifyFailed;
  }
  std::cout << "ok\n";
  return kOk;
}

// k rounds of a random pairing of the vertices; each vertex ends up in at
// most k demands.
std::vector<Demand> RandomDemands(int n, int k, std::mt19937_64& rng) {
  std::vector<Demand> demands;
  std::vector<Vertex> order(n);
  for (int round = 0; round < k; ++round) {
    for (int v = 0; v < n; ++v) order[v] = v;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);
    for (int i = 0; i + 1 < n; i += 2) demands.push_back({order[i], order[i + 1]});
  }
  return demands;
}

int CmdBench(const Options& o, Context& ctx) {
  std::vector<OracleKind> oracles;
  if (o.oracle.empty() || o.oracle == "both") {
    oracles = {OracleKind::kGraphBfs, OracleKind::kGraphBlockingFlow};
  } else {
    oracles = {ParseOracleKind(o.oracle)};
  }
  const int k = std::max(1, o.k);
  std::ostringstream csv;
  csv << "family,n,k,oracle,iters,wall_ms,status\n";
  std::vector<int> lengths;
  for (const auto& family : o.families) {
    for (int n : o.sizes) {
      for (OracleKind oracle : oracles) {
        std::string status = "ok";
        std::int64_t iters = 0;
        double wall_ms = 0;
        try {
          GeneratorSpec spec;
          spec.family = ParseGraphFamily(family);
          spec.n = n;
          spec.degree = o.degree;
          spec.cliques = o.cliques;
          spec.clique_size = o.clique_size;
          spec.seed = o.seed;
          MultiGraph g = Generate(spec);
          std::mt19937_64 rng(o.seed);
          RouteOptions ro;
          ro.relaxed = true;
          ro.r = o.r > 0 ? o.r : 4;
          ro.delta = o.delta > 0 ? o.delta : DefaultDelta(n);
          RoutingInstance inst =
              MakeRoutingInstance(std::move(g), RandomDemands(n, k, rng), ro);
          EngineConfig cfg;
          cfg.delta = inst.delta;
          cfg.mu = ParseRational(o.mu);
          cfg.iteration_cap = o.cap;
          cfg.oracle.kind = oracle;
          auto start = std::chrono::steady_clock::now();
          RouteResult result = Route(inst, cfg);
          wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
          iters = result.stats.iterations;
          lengths.push_back(result.stats.max_depth + 1);
        } catch (const RoutingError&) {
          status = "routing-failed";
        } catch (const std::exception& e) {
          status = "error";
          std::cerr << family << " n=" << n << ": " << e.what() << "\n";
        }
        csv << family << ',' << n << ',' << k << ',' << ToString(oracle) << ','
            << iters << ',';
        if (o.no_timing) {
          csv << '-';
        } else {
          csv << std::fixed << std::setprecision(3) << wall_ms
              << std::defaultfloat;
        }
        csv << ',' << status << '\n';
      }
    }
  }
  ctx.WriteOutput(o.out, [&](std::ostream& out) { out << csv.str(); });
  if (!lengths.empty()) {
    double mean = 0;
    for (int l : lengths) mean += l;
    mean /= lengths.size();
    std::cerr << "signature length: min "
              << *std::min_element(lengths.begin(), lengths.end()) << " mean "
              << mean << " max "
              << *std::max_element(lengths.begin(), lengths.end()) << " over "
              << lengths.size() << " runs\n";
  }
  return kOk;
}

int Dispatch(const std::vector<std::string>& args, bool allow_manifest);

int CmdReplay(const Options& o) {
  std::ifstream in(o.replay_path);
  if (!in) throw InputError("cannot open " + o.replay_path);
  RunManifest m;
  try {
    m = RunManifest::FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad manifest: ") + e.what());
  }
  for (const auto& f : m.inputs) {
    if (HashFile(f.path) != f.hash) {
      std::cerr << "replay: input " << f.path << " changed\n";
      return kInputError;
    }
  }
  int status = Dispatch(m.argv, false);
  bool same = status == m.status;
  if (!same) {
    std::cerr << "replay: status " << status << " != recorded " << m.status
              << "\n";
  }
  for (const auto& f : m.outputs) {
    if (HashFile(f.path) != f.hash) {
      std::cerr << "replay: output " << f.path << " differs\n";
      same = false;
    }
  }
  std::cout << (same ? "replay: identical" : "replay: differs") << "\n";
  return same ? kOk : kVerifyFailed;
}

void AddEngineOptions(CLI::App* sub, Options& o) {
  sub->add_option("--mu", o.mu, "Collapse threshold (rational)");
  sub->add_option("--cap", o.cap, "Main-loop iteration cap (0 = default)");
  sub->add_flag("--strict", o.strict, "Re-validate the forest every iteration");
  sub->add_option("--trace", o.trace, "Per-iteration trace file ('-' = stdout)");
}

void AddRouteOptions(CLI::App* sub, Options& o) {
  sub->add_option("--oracle", o.oracle, "bfs | blocking-flow");
  sub->add_option("--phi", o.phi, "Graph conductance (default: exact)");
  sub->add_flag("--relaxed", o.relaxed, "Allow --r/--delta overrides");
  sub->add_option("--r", o.r, "Path length bound (relaxed)");
  sub->add_option("--delta", o.delta, "Per-demand cap per half layer (relaxed)");
}

int Dispatch(const std::vector<std::string>& args, bool allow_manifest) {
  Options o;
  CLI::App app{"Edge-disjoint routing via hypergraph matching"};
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "Seed for every random choice");
  if (allow_manifest) {
    app.add_option("--manifest", o.manifest, "Write a replayable run manifest");
  }

  auto* gen = app.add_subcommand("gen", "Generate a graph");
  gen->add_option("--family", o.family,
                  "complete | hypercube | hypercube-square | random-regular | "
                  "ring-of-cliques");
  gen->add_option("--n", o.n, "Vertex count")->required();
  gen->add_option("--degree", o.degree, "Degree for random-regular");
  gen->add_option("--cliques", o.cliques, "Clique count for ring-of-cliques");
  gen->add_option("--clique-size", o.clique_size, "Clique size");
  gen->add_option("--out,-o", o.out, "Output graph file");

  auto* match = app.add_subcommand("match", "Perfect matching of a hypergraph");
  match->add_option("--input,-i", o.input, "Hypergraph file")->required();
  match->add_option("--out,-o", o.out, "Output matching file");
  match->add_option("--delta", o.delta, "Degree parameter (default 4)");
  match->add_option("--oracle", o.oracle, "explicit-greedy | throttled-test");
  match->add_option("--throttle", o.throttle, "Kept fraction for throttled-test");
  match->add_option("--rank-limit", o.rank_limit, "Half-layer rank limit r'");
  match->add_option("--verify-haxell", o.verify_haxell,
                    "Check the phi-strong Haxell condition first");
  AddEngineOptions(match, o);

  auto* route = app.add_subcommand("route", "Route demands on edge-disjoint paths");
  route->add_option("--graph,-g", o.graph, "Graph file")->required();
  route->add_option("--demands,-d", o.demands, "Demands file")->required();
  route->add_option("--out,-o", o.out, "Output solution file");
  AddRouteOptions(route, o);
  AddEngineOptions(route, o);

  auto* split = app.add_subcommand("split", "Split an expander into k parts");
  split->add_option("--graph,-g", o.graph, "Graph file")->required();
  split->add_option("--k", o.k, "Number of parts")->required();
  split->add_option("--prefix", o.prefix, "Part files: PREFIX.i.graph")
      ->required();
  split->add_option("--summary", o.summary, "Summary output");
  split->add_option("--template-family", o.template_family, "Template family");
  split->add_option("--template-degree", o.template_degree, "Template degree");
  split->add_option("--template-seed", o.template_seed,
                    "Template seed (default --seed)");
  split->add_option("--c", o.c, "Constant in the conductance bound");
  split->add_option("--bound", o.bound, "phi-squared | phi");
  AddRouteOptions(split, o);
  AddEngineOptions(split, o);

  auto* verify = app.add_subcommand("verify", "Verify a routing or a split");
  verify->add_option("--graph,-g", o.graph, "Graph file")->required();
  verify->add_option("--demands,-d", o.demands, "Demands file");
  verify->add_option("--solution,-s", o.solution, "Solution file");
  verify->add_option("--r", o.r, "Path length bound (default: none)");
  verify->add_option("--k", o.k, "Demand multiplicity bound / part count");
  verify->add_option("--split-prefix", o.prefix, "Verify PREFIX.1..k.graph");
  verify->add_option("--c", o.c, "Constant in the conductance bound");
  verify->add_option("--bound", o.bound, "phi-squared | phi");

  auto* bench = app.add_subcommand("bench", "Benchmark grid, CSV output");
  bench->add_option("--families", o.families, "Graph families")->delimiter(',');
  bench->add_option("--sizes", o.sizes, "Vertex counts")->delimiter(',');
  bench->add_option("--k", o.k, "Demand rounds per vertex");
  bench->add_option("--oracle", o.oracle, "bfs | blocking-flow | both");
  bench->add_option("--degree", o.degree, "Degree for random-regular");
  bench->add_option("--r", o.r, "Path length bound (default 4)");
  bench->add_option("--delta", o.delta, "Delta (default ceil(4 log2 n))");
  bench->add_option("--mu", o.mu, "Collapse threshold");
  bench->add_option("--cap", o.cap, "Iteration cap");
  bench->add_flag("--no-timing", o.no_timing, "Print '-' for wall_ms");
  bench->add_option("--out,-o", o.out, "CSV output");

  auto* replay = app.add_subcommand("replay", "Re-run a manifest and compare");
  replay->add_option("manifest", o.replay_path, "Manifest file")->required();

  std::vector<const char*> argv{"hyperroute"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  RunManifest manifest;
  const bool record = allow_manifest && !o.manifest.empty();
  Context ctx(record ? &manifest : nullptr);
  CLI::App* sub = app.get_subcommands().front();
  auto start = std::chrono::steady_clock::now();
  int status = kOk;
  try {
    if (sub == gen) status = CmdGen(o, ctx);
    else if (sub == match) status = CmdMatch(o, ctx);
    else if (sub == route) status = CmdRoute(o, ctx);
    else if (sub == split) status = CmdSplit(o, ctx);
    else if (sub == verify) status = CmdVerify(o, ctx);
    else if (sub == bench) status = CmdBench(o, ctx);
    else if (sub == replay) status = CmdReplay(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    status = kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    status = kInputError;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    status = kAlgorithmFailed;
  } catch (const NoProgressError& e) {
    std::cerr << e.what() << "\nlast signature: "
              << e.last_signature.ToString() << "\n";
    status = kAlgorithmFailed;
  } catch (const RoutingError& e) {
    std::cerr << e.what() << "\n";
    status = kAlgorithmFailed;
  }
  ctx.Finish();

  if (record) {
    manifest.command = sub->get_name();
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--manifest" && i + 1 < args.size()) {
        ++i;
        continue;
      }
      if (args[i].rfind("--manifest=", 0) == 0) continue;
      manifest.argv.push_back(args[i]);
    }
    manifest.seed = o.seed;
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->count() == 0 || opt->get_name() == "--help") continue;
      std::string value;
      for (const auto& r : opt->results()) value += (value.empty() ? "" : ",") + r;
      manifest.parameters[opt->get_name()] = value;
    }
    manifest.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    manifest.status = status;
    std::ofstream out(o.manifest);
    if (!out) {
      std::cerr << "cannot write manifest " << o.manifest << "\n";
      return kInputError;
    }
    out << manifest.ToJson().dump(2) << "\n";
  }
  return status;
}

}  // namespace
}  // namespace hyperroute::cli

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hyperroute::cli::Dispatch(args, true);
}
