#include "hyperroute/routing.h"

#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "corpus.h"
#include "oracles.h"

namespace hyperroute {
namespace {

RoutingInstance Instance(MultiGraph g, std::vector<Demand> demands, int r,
                         int delta) {
  RoutingInstance inst;
  inst.graph = std::move(g);
  inst.demands = std::move(demands);
  inst.k = std::max(1, MaxDemandMultiplicity(inst.graph.num_vertices(),
                                             inst.demands));
  inst.r = r;
  inst.delta = delta;
  return inst;
}

MultiGraph PathGraph(int n) {
  MultiGraph g(n);
  for (int v = 0; v + 1 < n; ++v) g.AddEdge(v, v + 1);
  return g;
}

EngineConfig GraphConfig(OracleKind kind) {
  EngineConfig cfg;
  cfg.oracle.kind = kind;
  return cfg;
}

TEST(Instance, Validation) {
  RoutingInstance inst = Instance(PathGraph(3), {{0, 2}}, 2, 1);
  EXPECT_FALSE(ValidateInstance(inst).has_value());
  inst.demands = {{1, 1}};
  EXPECT_TRUE(ValidateInstance(inst).has_value());
  inst.demands = {{0, 3}};
  EXPECT_TRUE(ValidateInstance(inst).has_value());
  inst.demands = {{0, 1}, {0, 2}};
  inst.k = 1;
  EXPECT_TRUE(ValidateInstance(inst).has_value());
  inst.k = 2;
  EXPECT_FALSE(ValidateInstance(inst).has_value());
  inst.r = 0;
  EXPECT_TRUE(ValidateInstance(inst).has_value());
  EXPECT_EQ(MaxDemandMultiplicity(3, inst.demands), 2);
}

TEST(Instance, MakeRoutingInstance) {
  MultiGraph k6 = Generate({GraphFamily::kComplete, 6});
  RouteOptions options;
  RoutingInstance inst = MakeRoutingInstance(k6, {{0, 1}, {2, 3}}, options);
  // phi(K_6) = 9/15 = 3/5; 18 log2 6 / (3/5) = 77.5..
  EXPECT_EQ(inst.r, 77);
  EXPECT_EQ(inst.delta, 11);
  EXPECT_EQ(inst.k, 1);
  options.r = 3;
  EXPECT_THROW(MakeRoutingInstance(k6, {{0, 1}}, options), InputError);
  options.relaxed = true;
  options.delta = 2;
  inst = MakeRoutingInstance(k6, {{0, 1}}, options);
  EXPECT_EQ(inst.r, 3);
  EXPECT_EQ(inst.delta, 2);
  EXPECT_THROW(MakeRoutingInstance(k6, {{0, 0}}, options), InputError);
  MultiGraph split(4);
  split.AddEdge(0, 1);
  split.AddEdge(2, 3);
  EXPECT_THROW(MakeRoutingInstance(split, {{0, 1}}, RouteOptions{}), InputError);
}

TEST(Defaults, PathLengthAndDelta) {
  EXPECT_EQ(DefaultPathLength(16, Rational(1, 3)), 216);
  EXPECT_EQ(DefaultPathLength(2, Rational(18)), 1);
  EXPECT_EQ(DefaultDelta(16), 16);
  EXPECT_EQ(DefaultDelta(6), 11);
  EXPECT_THROW(DefaultPathLength(4, Rational(0)), std::invalid_argument);
}

TEST(Hypothesis, Report) {
  MultiGraph k4 = Generate({GraphFamily::kComplete, 4});
  HypothesisReport report = CheckRoutingHypothesis(k4, Rational(2, 3), 1);
  EXPECT_FALSE(report.holds);
  EXPECT_EQ(report.min_degree, 3);
  EXPECT_NEAR(report.lhs, 8.0 / 27 * 3, 1e-12);
  EXPECT_NEAR(report.rhs, 70.0 * 70 * 70, 1e-6);
  EXPECT_NE(ToString(report).find("does not hold"), std::string::npos);
}

TEST(ForbiddenEdges, MatchedPathsAndBPrime) {
  RoutingInstance inst = Instance(PathGraph(4), {{0, 1}, {2, 3}}, 3, 1);
  DemandPathHypergraph dph(inst);
  EdgeId p = dph.Intern(0, RoutedPath{{0, 1}, {0}});
  std::vector<BVertex> forbidden{1};
  HalfLayerState state =
      HalfLayerState::Make(dph.hypergraph(), std::vector<AVertex>{1}, forbidden,
                           Matching{p}, 1);
  EXPECT_EQ(StateToForbiddenEdges(dph, state), (std::vector<GraphEdgeId>{0, 1}));
}

TEST(DemandPathHypergraph, InternIsStable) {
  RoutingInstance inst = Instance(Generate({GraphFamily::kComplete, 4}),
                                  {{0, 1}}, 2, 1);
  DemandPathHypergraph dph(inst);
  RoutedPath direct{{0, 1}, {0}};
  EdgeId a = dph.Intern(0, direct);
  EdgeId b = dph.Intern(0, direct);
  EXPECT_EQ(a, b);
  EXPECT_EQ(dph.hypergraph().num_edges(), 1);
  EXPECT_EQ(dph.path(a).vertices, direct.vertices);
}

TEST(GraphOracle, NoActiveDemands) {
  for (OracleKind kind : {OracleKind::kGraphBfs, OracleKind::kGraphBlockingFlow}) {
    RoutingInstance inst = Instance(PathGraph(3), {{0, 2}}, 2, 1);
    DemandPathHypergraph dph(inst);
    HalfLayerOracleSpec spec;
    spec.kind = kind;
    auto oracle = MakeGraphOracle(dph, spec);
    HalfLayerState state = HalfLayerState::Make(dph.hypergraph(), {}, {}, {}, 1);
    Layer out = oracle->Build(state);
    EXPECT_TRUE(out.x.empty());
    EXPECT_TRUE(out.y.empty());
  }
}

TEST(GraphOracle, PathTooLong) {
  RoutingInstance inst = Instance(PathGraph(4), {{0, 3}}, 2, 1);
  DemandPathHypergraph dph(inst);
  BfsHalfLayerOracle oracle(dph, 2);
  std::vector<AVertex> active{0};
  Layer out = oracle.Build(HalfLayerState::Make(dph.hypergraph(), active, {}, {}, 1));
  EXPECT_TRUE(out.x.empty());
}

TEST(GraphOracle, BlocksMatchedPath) {
  // Demand 0 holds 0-1-2; demand 1 (0, 2) can only go through edge 1 or 2.
  MultiGraph g(4);
  g.AddEdge(0, 1);  // 0
  g.AddEdge(1, 2);  // 1
  g.AddEdge(0, 3);  // 2
  g.AddEdge(3, 2);  // 3
  RoutingInstance inst = Instance(g, {{0, 2}, {0, 2}}, 2, 1);
  DemandPathHypergraph dph(inst);
  EdgeId held = dph.Intern(0, RoutedPath{{0, 1, 2}, {0, 1}});
  std::vector<AVertex> active{1};
  std::vector<BVertex> forbidden{3};
  HalfLayerState state = HalfLayerState::Make(dph.hypergraph(), active,
                                              forbidden, Matching{held}, 1);
  BfsHalfLayerOracle oracle(dph, 2);
  Layer out = oracle.Build(state);
  ASSERT_EQ(out.x.size(), 1u);
  EXPECT_EQ(dph.path(out.x[0]).vertices, (std::vector<Vertex>{0, 1, 2}));
  EXPECT_EQ(out.y, std::vector<EdgeId>{held});
}

TEST(GraphOracle, PreconditionChecked) {
  RoutingInstance inst = Instance(PathGraph(3), {{0, 1}}, 2, 1);
  DemandPathHypergraph dph(inst);
  EdgeId held = dph.Intern(0, RoutedPath{{0, 1}, {0}});
  std::vector<AVertex> active{0};
  HalfLayerState state =
      HalfLayerState::Make(dph.hypergraph(), active, {}, Matching{held}, 2);
  BfsHalfLayerOracle oracle(dph, 2);
  EXPECT_THROW(oracle.Build(state), std::invalid_argument);
  EXPECT_THROW(BfsHalfLayerOracle(dph, 3), std::invalid_argument);
}

TEST(GraphOracle, SoundAgainstMaterialization) {
  std::mt19937_64 rng(51);
  int calls = 0;
  for (int trial = 0; trial < 80; ++trial) {
    int n = 4 + static_cast<int>(rng() % 7);
    MultiGraph g = corpus::RandomConnectedGraph(rng, n, 0.45);
    int k = 1 + static_cast<int>(rng() % 2);
    auto demands = corpus::RandomDemands(rng, n, 1 + static_cast<int>(rng() % n), k);
    int r = 2 + static_cast<int>(rng() % 3);
    int delta = 1 + static_cast<int>(rng() % 3);
    RoutingInstance inst = Instance(g, demands, r, delta);
    oracles::MaterializedHypergraph mat = oracles::MaterializeDemandPathHypergraph(inst);
    for (OracleKind kind : {OracleKind::kGraphBfs, OracleKind::kGraphBlockingFlow}) {
      DemandPathHypergraph dph(inst);
      HalfLayerOracleSpec spec;
      spec.kind = kind;
      spec.rank_limit = 1 + static_cast<int>(rng() % r);
      auto inner = MakeGraphOracle(dph, spec);
      oracles::CheckedGraphOracle checked(*inner, dph, mat);
      EngineConfig cfg = GraphConfig(kind);
      cfg.delta = delta;
      cfg.iteration_cap = 200;
      oracles::EngineTrace(checked, cfg);
      ASSERT_EQ(checked.failures(), 0)
          << "trial " << trial << ' ' << ToString(kind) << ": "
          << checked.first_failure();
      calls += checked.calls();
    }
  }
  EXPECT_GT(calls, 200);
}

TEST(BlockingFlow, ClaimsShortestPaths) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 5 + static_cast<int>(rng() % 8);
    MultiGraph g = corpus::RandomConnectedGraph(rng, n, 0.35);
    auto demands = corpus::RandomDemands(rng, n, n, 3);
    RoutingInstance inst = Instance(g, demands, n, 2);
    DemandPathHypergraph dph(inst);
    BlockingFlowHalfLayerOracle oracle(dph, n);
    int claims = 0;
    oracle.set_claim_observer([&](const ClaimEvent& event) {
      // Within a phase every claimed path is a shortest path in G \ F.
      std::vector<int> dist = BfsDistances(event.view, event.path.vertices.front());
      ASSERT_EQ(dist[event.path.vertices.back()],
                static_cast<int>(event.path.edges.size()));
      ++claims;
    });
    std::vector<AVertex> active;
    for (int d = 0; d < static_cast<int>(demands.size()); ++d) active.push_back(d);
    Layer out = oracle.Build(HalfLayerState::Make(dph.hypergraph(), active, {}, {}, 2));
    EXPECT_EQ(claims, static_cast<int>(out.x.size()));
  }
}

TEST(BfsOracle, MaximalByExhaustiveSearch) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 4 + static_cast<int>(rng() % 6);
    MultiGraph g = corpus::RandomConnectedGraph(rng, n, 0.5);
    auto demands = corpus::RandomDemands(rng, n, 1 + static_cast<int>(rng() % n), 2);
    RoutingInstance inst = Instance(g, demands, 3, 2);
    DemandPathHypergraph dph(inst);
    BfsHalfLayerOracle oracle(dph, 3);
    std::vector<AVertex> active;
    for (int d = 0; d < static_cast<int>(demands.size()); ++d) active.push_back(d);
    Layer out = oracle.Build(HalfLayerState::Make(dph.hypergraph(), active, {}, {}, 2));
    std::set<int> used;
    for (EdgeId e : out.x) {
      for (int edge : dph.path(e).edges) ASSERT_TRUE(used.insert(edge).second);
    }
    std::vector<int> per_demand(demands.size(), 0);
    for (EdgeId e : out.x) ++per_demand[dph.hypergraph().edge(e).a];
    for (std::size_t d = 0; d < demands.size(); ++d) {
      if (per_demand[d] == 2) continue;
      for (const RoutedPath& p :
           oracles::SimplePaths(g, demands[d].s, demands[d].t, 3)) {
        bool free = true;
        for (int edge : p.edges) free = free && !used.count(edge);
        ASSERT_FALSE(free) << "trial " << trial << " demand " << d;
      }
    }
  }
}

TEST(Route, CompleteSixThreePairs) {
  RoutingInstance inst = Instance(Generate({GraphFamily::kComplete, 6}),
                                  {{0, 1}, {2, 3}, {4, 5}}, 3, 2);
  for (OracleKind kind : {OracleKind::kGraphBfs, OracleKind::kGraphBlockingFlow}) {
    RouteResult result = Route(inst, GraphConfig(kind));
    EXPECT_FALSE(VerifySolution(inst, result.solution).has_value());
    ASSERT_EQ(result.solution.paths.size(), 3u);
    for (const RoutedPath& p : result.solution.paths) {
      EXPECT_LE(p.edges.size(), 3u);
    }
  }
}

TEST(Route, ZeroDemands) {
  RoutingInstance inst = Instance(PathGraph(3), {}, 2, 1);
  RouteResult result = Route(inst, GraphConfig(OracleKind::kGraphBfs));
  EXPECT_TRUE(result.solution.paths.empty());
  EXPECT_EQ(result.stats.iterations, 0);
}

TEST(Route, ImpossibleInstanceFails) {
  RoutingInstance inst = Instance(PathGraph(3), {{0, 2}, {0, 2}}, 2, 1);
  EXPECT_THROW(Route(inst, GraphConfig(OracleKind::kGraphBfs)), RoutingError);
}

TEST(Route, RandomInstancesVerified) {
  std::mt19937_64 rng(54);
  int routed = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = 6 + static_cast<int>(rng() % 10);
    MultiGraph g = corpus::RandomConnectedGraph(rng, n, 0.5);
    auto demands = corpus::RandomDemands(rng, n, n / 3, 1);
    RoutingInstance inst = Instance(g, demands, 4, 2);
    try {
      RouteResult result = Route(inst, GraphConfig(OracleKind::kGraphBlockingFlow));
      ASSERT_FALSE(VerifySolution(inst, result.solution).has_value());
      ++routed;
    } catch (const RoutingError&) {
    }
  }
  EXPECT_GT(routed, 30);
}

TEST(Verify, Violations) {
  MultiGraph g(4);
  g.AddEdge(0, 1);  // 0
  g.AddEdge(1, 2);  // 1
  g.AddEdge(2, 3);  // 2
  g.AddEdge(0, 2);  // 3
  RoutingInstance inst = Instance(g, {{0, 2}, {1, 3}}, 2, 1);
  PathSolution ok{{RoutedPath{{0, 2}, {3}}, RoutedPath{{1, 2, 3}, {1, 2}}}};
  EXPECT_FALSE(VerifySolution(inst, ok).has_value());

  PathSolution shared{{RoutedPath{{0, 1, 2}, {0, 1}}, RoutedPath{{1, 2, 3}, {1, 2}}}};
  EXPECT_TRUE(VerifySolution(inst, shared).has_value());

  PathSolution wrong_end{{RoutedPath{{0, 1}, {0}}, RoutedPath{{1, 2, 3}, {1, 2}}}};
  EXPECT_TRUE(VerifySolution(inst, wrong_end).has_value());

  PathSolution bad_edge{{RoutedPath{{0, 2}, {1}}, RoutedPath{{1, 2, 3}, {1, 2}}}};
  EXPECT_TRUE(VerifySolution(inst, bad_edge).has_value());

  inst.r = 1;
  EXPECT_TRUE(VerifySolution(inst, ok).has_value());

  PathSolution missing{{RoutedPath{{0, 2}, {3}}}};
  EXPECT_TRUE(VerifySolution(Instance(g, {{0, 2}, {1, 3}}, 2, 1), missing).has_value());

  RoutingInstance loop = Instance(g, {{0, 2}}, 4, 1);
  PathSolution revisit{{RoutedPath{{0, 1, 0, 2}, {0, 0, 3}}}};
  EXPECT_TRUE(VerifySolution(loop, revisit).has_value());
}

TEST(VertexDisjoint, Greedy) {
  std::vector<Demand> demands{{0, 1}, {1, 2}, {2, 3}, {4, 0}, {5, 6}};
  EXPECT_EQ(VertexDisjointSubset(demands), (std::vector<int>{0, 2, 4}));
  EXPECT_TRUE(VertexDisjointSubset({}).empty());
}

TEST(RoutingIo, DemandsAndSolutions) {
  std::vector<Demand> demands{{0, 2}, {0, 2}};
  std::ostringstream out;
  WriteDemands(out, demands);
  std::istringstream in(out.str());
  EXPECT_EQ(ReadDemands(in), demands);

  MultiGraph g(3);
  g.AddEdge(0, 1);
  g.AddEdge(1, 2);
  g.AddEdge(0, 1);
  g.AddEdge(1, 2);
  std::istringstream sol_in("0 1 2\n0 1 2\n");
  PathSolution sol = ReadSolution(sol_in, g);
  ASSERT_EQ(sol.paths.size(), 2u);
  EXPECT_EQ(sol.paths[0].edges, (std::vector<GraphEdgeId>{0, 1}));
  EXPECT_EQ(sol.paths[1].edges, (std::vector<GraphEdgeId>{2, 3}));
  std::ostringstream sol_out;
  WriteSolution(sol_out, sol);
  EXPECT_EQ(sol_out.str(), "0 1 2\n0 1 2\n");

  std::istringstream bad("0 x\n");
  EXPECT_THROW(ReadDemands(bad), InputError);
  // A step without an edge is kept as -1 for the verifier to report.
  std::istringstream no_edge("0 2\n");
  PathSolution gap = ReadSolution(no_edge, g);
  EXPECT_EQ(gap.paths[0].edges, std::vector<GraphEdgeId>{-1});
}

}  // namespace
}  // namespace hyperroute
