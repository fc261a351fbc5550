#ifndef HYPERROUTE_SPLITTING_H_
#define HYPERROUTE_SPLITTING_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyperroute/common.h"
#include "hyperroute/engine.h"
#include "hyperroute/graph.h"
#include "hyperroute/routing.h"

namespace hyperroute {

struct TemplateConfig {
  // n is taken from the input graph.
  // Degree 2 gives a random Hamiltonian cycle.
  GeneratorSpec generator{GraphFamily::kRandomRegular, 0, 2, 0, 0, 1};
  int max_degree = 9;
  // Require exact conductance > 0 when n is within caps.conductance_n.
  bool verify_conductance = true;
};

struct SplitConfig {
  TemplateConfig templ;
  RouteOptions route;
  EngineConfig engine;
  SplitConfig() { engine.oracle.kind = OracleKind::kGraphBlockingFlow; }
};

struct SplitResult {
  int k = 0;
  MultiGraph template_graph;
  std::optional<Rational> template_phi;
  std::vector<std::vector<GraphEdgeId>> parts;  // E_1..E_k, ascending ids
  // Demand d is copy d / |E(G_X)| of template edge d % |E(G_X)|.
  PathSolution routing;
  EngineStats stats;
  int r = 0;
  int delta = 0;
};

// Routes k copies of every template edge through g and lets E_i collect the
// edges of the i-th copies. Throws InputError when g is disconnected or the
// template is unsuitable, RoutingError when routing fails.
SplitResult Split(const MultiGraph& g, int k, const SplitConfig& cfg);

// G_i = (V, E_i) with edges renumbered in ascending order of their ids in g.
MultiGraph PartGraph(const MultiGraph& g, const std::vector<GraphEdgeId>& part);

enum class SplitBound {
  kPhiSquared,  // Φ(G_i) >= c * Φ(G)^2 / log2 n
  kPhi,         // Φ(G_i) >= c * Φ(G) / log2 n
};

struct SplitReport {
  std::optional<std::string> violation;  // first failed check
  Rational graph_phi{0};
  std::vector<Rational> part_phi;
  // Φ(G_i) log2 n / Φ(G), the measured constant for the linear bound.
  std::vector<double> ratio;
  bool phi_squared_bound = false;
  bool phi_bound = false;
};

// Disjointness and containment of the parts, and the conductance bound
// selected by `bound` with constant c. Both bounds are always reported.
SplitReport VerifySplit(const MultiGraph& g, const SplitResult& result,
                        const Rational& c = Rational(1, 200),
                        SplitBound bound = SplitBound::kPhiSquared,
                        const ExactCaps& caps = {});

// One line per part: "i |E_i| phi_num phi_den" (1-based i).
void WriteSplitSummary(std::ostream& out, const SplitReport& report,
                       const SplitResult& result);

}  // namespace hyperroute

#endif  // HYPERROUTE_SPLITTING_H_
