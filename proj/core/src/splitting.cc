#include "hyperroute/splitting.h"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace hyperroute {

SplitResult Split(const MultiGraph& g, int k, const SplitConfig& cfg) {
  const int n = g.num_vertices();
  if (k < 1) throw InputError("k must be >= 1");
  if (n < 2) throw InputError("graph needs at least 2 vertices");
  if (!IsConnected(g)) throw InputError("graph is disconnected");

  SplitResult result;
  result.k = k;
  GeneratorSpec spec = cfg.templ.generator;
  spec.n = n;
  result.template_graph = Generate(spec);
  const MultiGraph& gx = result.template_graph;
  if (gx.max_degree() > cfg.templ.max_degree) {
    throw InputError("template max degree " + std::to_string(gx.max_degree()) +
                     " exceeds " + std::to_string(cfg.templ.max_degree));
  }
  if (cfg.templ.verify_conductance && n <= cfg.route.caps.conductance_n) {
    Rational phi = ConductanceExact(gx, cfg.route.caps).phi;
    if (phi <= 0) throw InputError("template has conductance 0");
    result.template_phi = phi;
  }

  std::vector<Demand> demands;
  demands.reserve(static_cast<std::size_t>(k) * gx.num_edges());
  for (int i = 0; i < k; ++i) {
    for (GraphEdgeId e = 0; e < gx.num_edges(); ++e) {
      auto [u, v] = gx.endpoints(e);
      demands.push_back({u, v});
    }
  }
  RoutingInstance inst = MakeRoutingInstance(g, std::move(demands), cfg.route);
  result.r = inst.r;
  result.delta = inst.delta;
  RouteResult routed = Route(inst, cfg.engine);
  result.stats = routed.stats;

  result.parts.assign(k, {});
  const int per_copy = gx.num_edges();
  for (std::size_t d = 0; d < routed.solution.paths.size(); ++d) {
    auto& part = result.parts[d / per_copy];
    const auto& edges = routed.solution.paths[d].edges;
    part.insert(part.end(), edges.begin(), edges.end());
  }
  for (auto& part : result.parts) std::sort(part.begin(), part.end());
  result.routing = std::move(routed.solution);
  return result;
}

MultiGraph PartGraph(const MultiGraph& g, const std::vector<GraphEdgeId>& part) {
  std::vector<GraphEdgeId> ids = part;
  std::sort(ids.begin(), ids.end());
  MultiGraph out(g.num_vertices());
  for (GraphEdgeId e : ids) {
    auto [u, v] = g.endpoints(e);
    out.AddEdge(u, v);
  }
  return out;
}

SplitReport VerifySplit(const MultiGraph& g, const SplitResult& result,
                        const Rational& c, SplitBound bound,
                        const ExactCaps& caps) {
  SplitReport report;
  auto fail = [&report](std::string msg) {
    if (!report.violation) report.violation = std::move(msg);
  };
  if (static_cast<int>(result.parts.size()) != result.k) {
    fail("expected " + std::to_string(result.k) + " parts, got " +
         std::to_string(result.parts.size()));
  }
  std::vector<int> owner(g.num_edges(), -1);
  for (std::size_t i = 0; i < result.parts.size(); ++i) {
    for (GraphEdgeId e : result.parts[i]) {
      if (e < 0 || e >= g.num_edges()) {
        fail("part " + std::to_string(i + 1) + ": edge " + std::to_string(e) +
             " not in the graph");
        continue;
      }
      if (owner[e] >= 0) {
        fail("overlap: edge " + std::to_string(e) + " in parts " +
             std::to_string(owner[e] + 1) + " and " + std::to_string(i + 1));
      }
      owner[e] = static_cast<int>(i);
    }
  }
  if (report.violation) return report;

  report.graph_phi = ConductanceExact(g, caps).phi;
  const long double log_n = std::log2(static_cast<long double>(g.num_vertices()));
  const long double phi = boost::rational_cast<long double>(report.graph_phi);
  const long double cc = boost::rational_cast<long double>(c);
  report.phi_squared_bound = true;
  report.phi_bound = true;
  for (std::size_t i = 0; i < result.parts.size(); ++i) {
    Rational phi_i = ConductanceExact(PartGraph(g, result.parts[i]), caps).phi;
    report.part_phi.push_back(phi_i);
    long double p = boost::rational_cast<long double>(phi_i);
    report.ratio.push_back(phi > 0 ? static_cast<double>(p * log_n / phi) : 0.0);
    bool sq = p * log_n >= cc * phi * phi;
    bool lin = p * log_n >= cc * phi;
    report.phi_squared_bound = report.phi_squared_bound && sq;
    report.phi_bound = report.phi_bound && lin;
    if (phi_i.numerator() == 0) {
      fail("part " + std::to_string(i + 1) + ": conductance 0");
    } else if (!(bound == SplitBound::kPhiSquared ? sq : lin)) {
      fail("part " + std::to_string(i + 1) + ": conductance " +
           ToString(phi_i) + " below the bound");
    }
  }
  return report;
}

void WriteSplitSummary(std::ostream& out, const SplitReport& report,
                       const SplitResult& result) {
  for (std::size_t i = 0; i < result.parts.size(); ++i) {
    out << i + 1 << ' ' << result.parts[i].size();
    if (i < report.part_phi.size()) {
      out << ' ' << report.part_phi[i].numerator() << ' '
          << report.part_phi[i].denominator();
    }
    out << '\n';
  }
}

}  // namespace hyperroute
