#ifndef HYPERROUTE_ROUTING_H_
#define HYPERROUTE_ROUTING_H_

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperroute/common.h"
#include "hyperroute/engine.h"
#include "hyperroute/graph.h"
#include "hyperroute/halflayer.h"
#include "hyperroute/hypergraph.h"

namespace hyperroute {

struct Demand {
  Vertex s;
  Vertex t;
  friend bool operator==(const Demand&, const Demand&) = default;
};

struct RoutingInstance {
  MultiGraph graph;
  std::vector<Demand> demands;
  int k = 1;      // max demands per vertex
  int r = 1;      // max path length in edges
  int delta = 1;  // per-demand path cap inside one half layer
};

// Largest number of demands any single vertex takes part in.
int MaxDemandMultiplicity(int num_vertices, std::span<const Demand> demands);

// First problem with the instance: s = t, out-of-range endpoint, multiplicity
// above k, r < 1 or delta < 1.
std::optional<std::string> ValidateInstance(const RoutingInstance& inst);

struct RoutedPath {
  std::vector<Vertex> vertices;     // s ... t
  std::vector<GraphEdgeId> edges;   // edges[i] joins vertices[i], vertices[i+1]
};

struct PathSolution {
  std::vector<RoutedPath> paths;  // one per demand, in demand order
};

// The demand-path hypergraph, discovered lazily: A = demands, B = graph
// edges, and a hyperedge for each (demand, simple path of length <= r) that an
// oracle has produced so far. Hyperedge ids are stable.
class DemandPathHypergraph {
 public:
  explicit DemandPathHypergraph(const RoutingInstance& inst);

  const RoutingInstance& instance() const { return *inst_; }
  const BipartiteHypergraph& hypergraph() const { return h_; }
  // Id of the hyperedge for this path, adding it on first sight.
  EdgeId Intern(int demand, const RoutedPath& path);
  const RoutedPath& path(EdgeId e) const { return paths_[e]; }

 private:
  const RoutingInstance* inst_;
  BipartiteHypergraph h_;
  std::vector<RoutedPath> paths_;
  std::map<std::pair<int, std::vector<BVertex>>, EdgeId> index_;
};

// Edges of every matched path together with the edges named by B'.
std::vector<GraphEdgeId> StateToForbiddenEdges(const DemandPathHypergraph& dph,
                                               const HalfLayerState& state);

// Reported for every claimed path, before its edges are removed.
struct ClaimEvent {
  int demand;
  const RoutedPath& path;
  const EdgeDeletionView& view;  // G \ F at claim time
};
using ClaimObserver = std::function<void(const ClaimEvent&)>;

// Half-layer oracle over the implicit hypergraph. Paths avoid the edges in
// B'; claiming a path that shares an edge with a matched path also removes
// every edge of that matched path and puts it into Y.
//
// Requires that each active matched demand has its own matched path inside
// B' (always true for engine states); throws std::invalid_argument otherwise.
class GraphHalfLayerOracle : public HalfLayerOracle {
 public:
  GraphHalfLayerOracle(DemandPathHypergraph& dph, int r_prime);

  const BipartiteHypergraph& hypergraph() const override {
    return dph_.hypergraph();
  }
  Layer Build(const HalfLayerState& state) override;
  bool maximal() const override { return true; }

  void set_claim_observer(ClaimObserver observer) {
    observer_ = std::move(observer);
  }
  int r_prime() const { return r_prime_; }

 protected:
  struct Scratch {
    EdgeDeletionView view;
    std::vector<EdgeId> path_owner;   // graph edge -> matched hyperedge
    std::vector<char> expanded;       // per hyperedge id
    std::vector<int> capacity;        // per demand: Delta - used
    Layer out;
  };
  virtual void Fill(const HalfLayerState& state, Scratch& scratch) = 0;
  void Claim(int demand, RoutedPath path, Scratch& scratch);

  DemandPathHypergraph& dph_;
  int r_prime_;
  ClaimObserver observer_;
};

// For each active demand in ascending order, up to its spare capacity: BFS in
// G \ F for a path of length <= r', lowest neighbor first, and claim it.
class BfsHalfLayerOracle : public GraphHalfLayerOracle {
 public:
  using GraphHalfLayerOracle::GraphHalfLayerOracle;

 protected:
  void Fill(const HalfLayerState& state, Scratch& scratch) override;
};

// Per source vertex in ascending order: Dinitz-style phases on the BFS level
// graph toward a super-terminal whose arc from each target t has capacity
// equal to the spare capacity of the demands (s, t). A current-arc DFS claims
// a shortest path, restarts from s, and drops dead arcs for the rest of the
// phase. Phases continue while the shortest distance is <= r'.
class BlockingFlowHalfLayerOracle : public GraphHalfLayerOracle {
 public:
  using GraphHalfLayerOracle::GraphHalfLayerOracle;

 protected:
  void Fill(const HalfLayerState& state, Scratch& scratch) override;
};

std::unique_ptr<GraphHalfLayerOracle> MakeGraphOracle(
    DemandPathHypergraph& dph, const HalfLayerOracleSpec& spec);

// Default parameters from the conductance phi of the graph.
int DefaultPathLength(int n, const Rational& phi);  // floor(18 log2 n / phi)
int DefaultDelta(int n);                            // ceil(4 log2 n)

// phi^3 delta >= (35 log2 n)^3 k, with delta the minimum degree.
struct HypothesisReport {
  Rational phi{0};
  int min_degree = 0;
  int k = 0;
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
};
HypothesisReport CheckRoutingHypothesis(const MultiGraph& g,
                                        const Rational& phi, int k);
std::string ToString(const HypothesisReport& report);

struct RouteOptions {
  Rational phi{0};   // conductance; 0 means compute it exactly
  bool relaxed = false;
  int r = 0;         // override, only with relaxed
  int delta = 0;     // override, only with relaxed
  ExactCaps caps;
};

// Instance with k from the demands and r, Delta from the defaults or the
// relaxed overrides. Throws InputError on invalid demands or overrides
// without `relaxed`.
RoutingInstance MakeRoutingInstance(MultiGraph g, std::vector<Demand> demands,
                                    const RouteOptions& options);

class RoutingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RouteResult {
  PathSolution solution;
  EngineStats stats;
};

// Runs the matching engine on the demand-path hypergraph of `inst` with
// cfg.oracle.kind one of the graph oracles; Delta and r come from the
// instance. The solution is always verified before it is returned. Throws
// RoutingError when the engine stops without a perfect matching.
RouteResult Route(const RoutingInstance& inst, const EngineConfig& cfg,
                  const ClaimObserver& observer = {});

// Endpoints, adjacency, simplicity, pairwise edge-disjointness and the length
// bound r. Returns the first violation.
std::optional<std::string> VerifySolution(const RoutingInstance& inst,
                                          const PathSolution& sol);

// Greedy pass admitting each demand whose endpoints avoid all admitted ones.
// Returns ascending demand indices.
std::vector<int> VertexDisjointSubset(std::span<const Demand> demands);

// Demands: one "s t" pair per line. Solutions: line i lists the vertices of
// the path for demand i. Reading a solution resolves each step to the
// lowest-id edge between the two vertices not yet used by an earlier path.
std::vector<Demand> ReadDemands(std::istream& in);
void WriteDemands(std::ostream& out, std::span<const Demand> demands);
PathSolution ReadSolution(std::istream& in, const MultiGraph& g);
void WriteSolution(std::ostream& out, const PathSolution& sol);

}  // namespace hyperroute

#endif  // HYPERROUTE_ROUTING_H_
