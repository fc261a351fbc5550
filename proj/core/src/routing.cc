#include "hyperroute/routing.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

namespace hyperroute {

int MaxDemandMultiplicity(int num_vertices, std::span<const Demand> demands) {
  std::vector<int> count(num_vertices, 0);
  int best = 0;
  for (const Demand& d : demands) {
    if (d.s < 0 || d.t < 0 || d.s >= num_vertices || d.t >= num_vertices) {
      continue;
    }
    best = std::max(best, ++count[d.s]);
    if (d.t != d.s) best = std::max(best, ++count[d.t]);
  }
  return best;
}

std::optional<std::string> ValidateInstance(const RoutingInstance& inst) {
  const int n = inst.graph.num_vertices();
  if (inst.r < 1) return "r must be >= 1";
  if (inst.delta < 1) return "delta must be >= 1";
  for (std::size_t i = 0; i < inst.demands.size(); ++i) {
    const Demand& d = inst.demands[i];
    std::string where = "demand " + std::to_string(i) + ": ";
    if (d.s < 0 || d.t < 0 || d.s >= n || d.t >= n) {
      return where + "endpoint out of range";
    }
    if (d.s == d.t) return where + "s = t";
  }
  if (MaxDemandMultiplicity(n, inst.demands) > inst.k) {
    return "a vertex appears in more than k demands";
  }
  return std::nullopt;
}

DemandPathHypergraph::DemandPathHypergraph(const RoutingInstance& inst)
    : inst_(&inst),
      h_(static_cast<int>(inst.demands.size()), inst.graph.num_edges(),
         inst.r) {}

EdgeId DemandPathHypergraph::Intern(int demand, const RoutedPath& path) {
  std::vector<BVertex> key(path.edges.begin(), path.edges.end());
  std::sort(key.begin(), key.end());
  auto [it, inserted] = index_.try_emplace({demand, key}, kNone);
  if (inserted) {
    it->second = h_.AddEdge(demand, std::move(key));
    paths_.push_back(path);
  }
  return it->second;
}

std::vector<GraphEdgeId> StateToForbiddenEdges(const DemandPathHypergraph& dph,
                                               const HalfLayerState& state) {
  const BipartiteHypergraph& h = dph.hypergraph();
  std::vector<char> mark(h.num_b(), 0);
  for (EdgeId f : state.matching) {
    for (BVertex b : h.edge(f).b) mark[b] = 1;
  }
  for (std::size_t b = 0; b < state.forbidden_b.size(); ++b) {
    if (state.forbidden_b[b]) mark[b] = 1;
  }
  std::vector<GraphEdgeId> out;
  for (int b = 0; b < h.num_b(); ++b) {
    if (mark[b]) out.push_back(b);
  }
  return out;
}

GraphHalfLayerOracle::GraphHalfLayerOracle(DemandPathHypergraph& dph,
                                           int r_prime)
    : dph_(dph), r_prime_(r_prime) {
  if (r_prime < 1 || r_prime > dph.instance().r) {
    throw std::invalid_argument("path length limit must be in [1, r]");
  }
}

Layer GraphHalfLayerOracle::Build(const HalfLayerState& state) {
  const BipartiteHypergraph& h = dph_.hypergraph();
  const MultiGraph& g = dph_.instance().graph;
  const int num_demands = h.num_a();
  Scratch scratch{EdgeDeletionView(g),
                  std::vector<EdgeId>(g.num_edges(), kNone),
                  std::vector<char>(h.num_edges(), 0),
                  std::vector<int>(num_demands, 0),
                  {}};
  for (std::size_t b = 0; b < state.forbidden_b.size(); ++b) {
    if (state.forbidden_b[b]) scratch.view.Remove(static_cast<int>(b));
  }
  std::vector<EdgeId> matched_at(num_demands, kNone);
  for (EdgeId f : state.matching) {
    matched_at[h.edge(f).a] = f;
    for (BVertex b : h.edge(f).b) scratch.path_owner[b] = f;
  }
  for (AVertex a = 0; a < num_demands; ++a) {
    if (!state.active_a[a]) continue;
    if (EdgeId f = matched_at[a]; f != kNone) {
      for (BVertex b : h.edge(f).b) {
        if (!state.forbidden_b[b]) {
          throw std::invalid_argument(
              "active matched demand " + std::to_string(a) +
              " has its matched path outside B'");
        }
      }
    }
    scratch.capacity[a] = std::max(0, state.delta - state.used(a));
  }
  Fill(state, scratch);
  std::sort(scratch.out.x.begin(), scratch.out.x.end());
  std::sort(scratch.out.y.begin(), scratch.out.y.end());
  return std::move(scratch.out);
}

void GraphHalfLayerOracle::Claim(int demand, RoutedPath path,
                                 Scratch& scratch) {
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    GraphEdgeId e = path.edges[i];
    if (scratch.view.removed(e)) {
      throw std::logic_error("claimed path uses a forbidden edge");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (path.edges[j] == e) throw std::logic_error("claimed path repeats an edge");
    }
  }
  if (observer_) observer_(ClaimEvent{demand, path, scratch.view});
  EdgeId id = dph_.Intern(demand, path);
  scratch.out.x.push_back(id);
  for (GraphEdgeId e : path.edges) scratch.view.Remove(e);
  const BipartiteHypergraph& h = dph_.hypergraph();
  for (GraphEdgeId e : path.edges) {
    EdgeId f = scratch.path_owner[e];
    if (f == kNone || scratch.expanded[f]) continue;
    scratch.expanded[f] = 1;
    scratch.out.y.push_back(f);
    for (BVertex b : h.edge(f).b) scratch.view.Remove(b);
  }
  --scratch.capacity[demand];
}

namespace {

// Shortest s-t path of length <= limit in the view; neighbors are visited in
// ascending vertex order, the first discovery fixes the parent.
std::optional<RoutedPath> BoundedBfs(const EdgeDeletionView& view, Vertex s,
                                     Vertex t, int limit) {
  const int n = view.graph().num_vertices();
  std::vector<int> dist(n, -1);
  std::vector<Arc> parent(n, Arc{-1, -1});
  std::queue<Vertex> queue;
  dist[s] = 0;
  queue.push(s);
  while (!queue.empty() && dist[t] < 0) {
    Vertex u = queue.front();
    queue.pop();
    if (dist[u] >= limit) continue;
    view.ForEachArc(u, [&](const Arc& arc) {
      if (dist[arc.to] >= 0) return;
      dist[arc.to] = dist[u] + 1;
      parent[arc.to] = Arc{u, arc.id};
      queue.push(arc.to);
    });
  }
  if (dist[t] < 0) return std::nullopt;
  RoutedPath path;
  for (Vertex v = t; v != s; v = parent[v].to) {
    path.vertices.push_back(v);
    path.edges.push_back(parent[v].id);
  }
  path.vertices.push_back(s);
  std::reverse(path.vertices.begin(), path.vertices.end());
  std::reverse(path.edges.begin(), path.edges.end());
  return path;
}

}  // namespace

void BfsHalfLayerOracle::Fill(const HalfLayerState&, Scratch& scratch) {
  const auto& demands = dph_.instance().demands;
  for (int a = 0; a < static_cast<int>(demands.size()); ++a) {
    while (scratch.capacity[a] > 0) {
      auto path =
          BoundedBfs(scratch.view, demands[a].s, demands[a].t, r_prime_);
      if (!path) break;
      Claim(a, std::move(*path), scratch);
    }
  }
}

void BlockingFlowHalfLayerOracle::Fill(const HalfLayerState&,
                                       Scratch& scratch) {
  const auto& demands = dph_.instance().demands;
  const MultiGraph& g = dph_.instance().graph;
  const int n = g.num_vertices();

  std::map<Vertex, std::vector<int>> by_source;
  for (int a = 0; a < static_cast<int>(demands.size()); ++a) {
    if (scratch.capacity[a] > 0) by_source[demands[a].s].push_back(a);
  }
  std::vector<int> target_cap(n, 0);
  std::vector<int> dist(n);
  std::vector<std::size_t> next_arc(n);

  for (const auto& [s, group] : by_source) {
    for (int a : group) target_cap[demands[a].t] += scratch.capacity[a];
    while (true) {
      // Level graph of G \ F from s, cut at depth r'.
      std::fill(dist.begin(), dist.end(), -1);
      std::queue<Vertex> queue;
      dist[s] = 0;
      queue.push(s);
      while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop();
        if (dist[u] >= r_prime_) continue;
        scratch.view.ForEachArc(u, [&](const Arc& arc) {
          if (dist[arc.to] < 0) {
            dist[arc.to] = dist[u] + 1;
            queue.push(arc.to);
          }
        });
      }
      int phase_dist = -1;
      for (int a : group) {
        Vertex t = demands[a].t;
        if (target_cap[t] > 0 && dist[t] > 0 &&
            (phase_dist < 0 || dist[t] < phase_dist)) {
          phase_dist = dist[t];
        }
      }
      if (phase_dist < 0) break;

      std::fill(next_arc.begin(), next_arc.end(), 0);
      RoutedPath path;
      path.vertices.push_back(s);
      int claimed = 0;
      while (true) {
        Vertex u = path.vertices.back();
        if (dist[u] == phase_dist && target_cap[u] > 0) {
          int demand = -1;
          for (int a : group) {
            if (demands[a].t == u && scratch.capacity[a] > 0) {
              demand = a;
              break;
            }
          }
          --target_cap[u];
          Claim(demand, path, scratch);
          ++claimed;
          path.vertices.assign(1, s);
          path.edges.clear();
          continue;
        }
        const auto& adj = g.adjacency(u);
        std::size_t& i = next_arc[u];
        while (i < adj.size()) {
          const Arc& arc = adj[i];
          if (!scratch.view.removed(arc.id) && dist[arc.to] == dist[u] + 1 &&
              dist[arc.to] <= phase_dist) {
            break;
          }
          ++i;
        }
        if (i < adj.size()) {
          path.vertices.push_back(adj[i].to);
          path.edges.push_back(adj[i].id);
          continue;
        }
        // Dead end: retreat and drop the arc that led here.
        if (u == s) break;
        path.vertices.pop_back();
        path.edges.pop_back();
        ++next_arc[path.vertices.back()];
      }
      if (claimed == 0) break;
    }
    for (int a : group) target_cap[demands[a].t] = 0;
  }
}

std::unique_ptr<GraphHalfLayerOracle> MakeGraphOracle(
    DemandPathHypergraph& dph, const HalfLayerOracleSpec& spec) {
  int r_prime = spec.rank_limit > 0 ? spec.rank_limit : dph.instance().r;
  switch (spec.kind) {
    case OracleKind::kGraphBfs:
      return std::make_unique<BfsHalfLayerOracle>(dph, r_prime);
    case OracleKind::kGraphBlockingFlow:
      return std::make_unique<BlockingFlowHalfLayerOracle>(dph, r_prime);
    default:
      throw std::invalid_argument("routing needs the bfs or blocking-flow oracle");
  }
}

int DefaultPathLength(int n, const Rational& phi) {
  if (phi <= 0) throw std::invalid_argument("phi must be positive");
  long double value = 18.0L * std::log2(static_cast<long double>(std::max(n, 2))) *
                      phi.denominator() / phi.numerator();
  return std::max(1, static_cast<int>(std::floor(value + 1e-12L)));
}

int DefaultDelta(int n) {
  long double value = 4.0L * std::log2(static_cast<long double>(std::max(n, 2)));
  return std::max(1, static_cast<int>(std::ceil(value - 1e-12L)));
}

HypothesisReport CheckRoutingHypothesis(const MultiGraph& g,
                                        const Rational& phi, int k) {
  HypothesisReport report;
  report.phi = phi;
  report.min_degree = g.min_degree();
  report.k = k;
  double p = boost::rational_cast<double>(phi);
  double log_n = std::log2(std::max(g.num_vertices(), 2));
  report.lhs = p * p * p * report.min_degree;
  report.rhs = std::pow(35.0 * log_n, 3) * k;
  report.holds = report.lhs >= report.rhs;
  return report;
}

std::string ToString(const HypothesisReport& report) {
  std::ostringstream out;
  out << "hypothesis phi^3*delta >= (35 log n)^3*k: phi=" << ToString(report.phi)
      << " delta=" << report.min_degree << " k=" << report.k
      << " lhs=" << report.lhs << " rhs=" << report.rhs
      << (report.holds ? " holds" : " does not hold");
  return out.str();
}

RoutingInstance MakeRoutingInstance(MultiGraph g, std::vector<Demand> demands,
                                    const RouteOptions& options) {
  if (!options.relaxed && (options.r != 0 || options.delta != 0)) {
    throw InputError("overriding r or delta requires relaxed mode");
  }
  if (options.r < 0 || options.delta < 0) {
    throw InputError("r and delta must be positive");
  }
  RoutingInstance inst;
  inst.graph = std::move(g);
  inst.demands = std::move(demands);
  const int n = inst.graph.num_vertices();
  inst.k = std::max(1, MaxDemandMultiplicity(n, inst.demands));
  if (options.r > 0) {
    inst.r = options.r;
  } else {
    Rational phi = options.phi;
    if (phi.numerator() == 0) phi = ConductanceExact(inst.graph, options.caps).phi;
    if (phi <= 0) throw InputError("graph has conductance 0");
    inst.r = DefaultPathLength(n, phi);
  }
  inst.delta = options.delta > 0 ? options.delta : DefaultDelta(n);
  if (auto err = ValidateInstance(inst)) throw InputError(*err);
  return inst;
}

RouteResult Route(const RoutingInstance& inst, const EngineConfig& cfg,
                  const ClaimObserver& observer) {
  if (auto err = ValidateInstance(inst)) throw InputError(*err);
  EngineConfig c = cfg;
  c.delta = inst.delta;
  if (c.oracle.rank_limit <= 0) c.oracle.rank_limit = inst.r;
  DemandPathHypergraph dph(inst);
  auto oracle = MakeGraphOracle(dph, c.oracle);
  if (observer) oracle->set_claim_observer(observer);
  MatchingEngine engine(*oracle, c);
  MatchingResult matched;
  try {
    matched = engine.Run();
  } catch (const NoProgressError& e) {
    throw RoutingError(std::string("routing failed within iteration bound: ") +
                       e.what());
  }
  RouteResult result;
  result.stats = matched.stats;
  result.solution.paths.resize(inst.demands.size());
  for (EdgeId e : matched.matching) {
    result.solution.paths[dph.hypergraph().edge(e).a] = dph.path(e);
  }
  if (auto err = VerifySolution(inst, result.solution)) {
    throw std::logic_error("engine produced an invalid routing: " + *err);
  }
  return result;
}

std::optional<std::string> VerifySolution(const RoutingInstance& inst,
                                          const PathSolution& sol) {
  const MultiGraph& g = inst.graph;
  if (sol.paths.size() != inst.demands.size()) {
    return "path count " + std::to_string(sol.paths.size()) + " != demand count " +
           std::to_string(inst.demands.size());
  }
  std::vector<int> used_by(g.num_edges(), -1);
  for (std::size_t i = 0; i < sol.paths.size(); ++i) {
    const RoutedPath& p = sol.paths[i];
    const Demand& d = inst.demands[i];
    std::string where = "demand " + std::to_string(i) + ": ";
    if (p.vertices.empty()) return where + "empty path";
    if (p.edges.size() + 1 != p.vertices.size()) {
      return where + "edge list does not match vertex list";
    }
    if (p.vertices.front() != d.s || p.vertices.back() != d.t) {
      return where + "wrong endpoints";
    }
    std::vector<Vertex> seen = p.vertices;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      return where + "repeated vertex";
    }
    for (std::size_t j = 0; j < p.edges.size(); ++j) {
      GraphEdgeId e = p.edges[j];
      if (e < 0 || e >= g.num_edges()) return where + "not a path in the graph";
      auto [u, v] = g.endpoints(e);
      Vertex x = p.vertices[j], y = p.vertices[j + 1];
      if (!((u == x && v == y) || (u == y && v == x))) {
        return where + "not a path in the graph";
      }
      if (used_by[e] >= 0) {
        return where + "edge reuse (edge " + std::to_string(e) +
               " also on demand " + std::to_string(used_by[e]) + ")";
      }
      used_by[e] = static_cast<int>(i);
    }
    if (static_cast<int>(p.edges.size()) > inst.r) {
      return where + "length bound (" + std::to_string(p.edges.size()) +
             " > r = " + std::to_string(inst.r) + ")";
    }
  }
  return std::nullopt;
}

std::vector<int> VertexDisjointSubset(std::span<const Demand> demands) {
  std::vector<int> chosen;
  std::vector<Vertex> taken;
  auto is_taken = [&taken](Vertex v) {
    return std::find(taken.begin(), taken.end(), v) != taken.end();
  };
  for (int i = 0; i < static_cast<int>(demands.size()); ++i) {
    const Demand& d = demands[i];
    if (is_taken(d.s) || is_taken(d.t)) continue;
    chosen.push_back(i);
    taken.push_back(d.s);
    taken.push_back(d.t);
  }
  return chosen;
}

std::vector<Demand> ReadDemands(std::istream& in) {
  std::vector<Demand> demands;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    Demand d{};
    std::string extra;
    if (!(ls >> d.s >> d.t) || (ls >> extra)) {
      throw InputError("demands line " + std::to_string(line_no) +
                       ": expected 's t'");
    }
    demands.push_back(d);
  }
  return demands;
}

void WriteDemands(std::ostream& out, std::span<const Demand> demands) {
  for (const Demand& d : demands) out << d.s << ' ' << d.t << '\n';
}

PathSolution ReadSolution(std::istream& in, const MultiGraph& g) {
  PathSolution sol;
  std::vector<char> used(g.num_edges(), 0);
  std::string line;
  while (std::getline(in, line)) {
    RoutedPath p;
    std::istringstream ls(line);
    long long v;
    while (ls >> v) {
      if (v < 0 || v >= g.num_vertices()) {
        throw InputError("solution line " + std::to_string(sol.paths.size() + 1) +
                         ": vertex out of range");
      }
      p.vertices.push_back(static_cast<Vertex>(v));
    }
    if (!ls.eof()) {
      throw InputError("solution line " + std::to_string(sol.paths.size() + 1) +
                       ": not a vertex list");
    }
    for (std::size_t j = 0; j + 1 < p.vertices.size(); ++j) {
      GraphEdgeId pick = -1, fallback = -1;
      for (const Arc& arc : g.adjacency(p.vertices[j])) {
        if (arc.to != p.vertices[j + 1]) continue;
        if (fallback < 0) fallback = arc.id;
        if (!used[arc.id]) {
          pick = arc.id;
          break;
        }
      }
      if (pick < 0) pick = fallback;
      if (pick >= 0) used[pick] = 1;
      p.edges.push_back(pick);
    }
    sol.paths.push_back(std::move(p));
  }
  return sol;
}

void WriteSolution(std::ostream& out, const PathSolution& sol) {
  for (const RoutedPath& p : sol.paths) {
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
      out << (i ? " " : "") << p.vertices[i];
    }
    out << '\n';
  }
}

}  // namespace hyperroute
