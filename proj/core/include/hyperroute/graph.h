#ifndef HYPERROUTE_GRAPH_H_
#define HYPERROUTE_GRAPH_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperroute/common.h"

namespace hyperroute {

using Vertex = int;
using GraphEdgeId = int;

struct Arc {
  Vertex to;
  GraphEdgeId id;
};

// Undirected multigraph with stable edge ids (insertion order). Adjacency
// lists are kept sorted by (neighbor, edge id).
class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(int num_vertices);

  // Throws InputError on self-loops or out-of-range endpoints.
  GraphEdgeId AddEdge(Vertex u, Vertex v);

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  int num_edges() const { return static_cast<int>(ends_.size()); }
  std::pair<Vertex, Vertex> endpoints(GraphEdgeId e) const { return ends_[e]; }
  Vertex Other(GraphEdgeId e, Vertex v) const {
    return ends_[e].first == v ? ends_[e].second : ends_[e].first;
  }
  const std::vector<Arc>& adjacency(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int min_degree() const;
  int max_degree() const;

 private:
  std::vector<std::pair<Vertex, Vertex>> ends_;
  std::vector<std::vector<Arc>> adj_;
};

// G \ F without copying: deletion marks over a shared graph.
class EdgeDeletionView {
 public:
  explicit EdgeDeletionView(const MultiGraph& g)
      : g_(&g), removed_(g.num_edges(), 0) {}

  const MultiGraph& graph() const { return *g_; }
  void Remove(GraphEdgeId e) { removed_[e] = 1; }
  void Restore(GraphEdgeId e) { removed_[e] = 0; }
  bool removed(GraphEdgeId e) const { return removed_[e] != 0; }
  int degree(Vertex v) const;

  template <typename Fn>
  void ForEachArc(Vertex v, Fn&& fn) const {
    for (const Arc& arc : g_->adjacency(v)) {
      if (!removed_[arc.id]) fn(arc);
    }
  }

 private:
  const MultiGraph* g_;
  std::vector<char> removed_;
};

// Throws std::out_of_range on unknown ids.
EdgeDeletionView RemoveEdges(const MultiGraph& g,
                             std::span<const GraphEdgeId> f);

// Hop distances from `source`; -1 when unreachable.
std::vector<int> BfsDistances(const EdgeDeletionView& view, Vertex source);
bool IsConnected(const MultiGraph& g);

struct CutReport {
  std::vector<Vertex> subset;  // ascending
  std::int64_t boundary = 0;
  std::int64_t volume = 0;
  std::int64_t complement_volume = 0;
  Rational conductance{0};
};

// Φ(S) of one cut, computed directly. A side of volume zero gives 0.
CutReport EvaluateCut(const MultiGraph& g, std::span<const Vertex> subset);

struct ConductanceResult {
  Rational phi{0};
  CutReport witness;
};

// Exact min over nonempty proper subsets, by Gray-code enumeration with
// incremental boundary and volume updates. A disconnected graph yields 0 with
// the component of vertex 0 as witness, at any size. Throws CapExceeded when
// n > caps.conductance_n and std::invalid_argument when n < 2.
ConductanceResult ConductanceExact(const MultiGraph& g,
                                   const ExactCaps& caps = {});

enum class GraphFamily {
  kComplete,
  kHypercube,
  kRandomRegular,
  kRingOfCliques,
  kHypercubeSquare,  // Q_d plus all Hamming-distance-2 pairs
};

std::string ToString(GraphFamily family);
GraphFamily ParseGraphFamily(const std::string& text);

struct GeneratorSpec {
  GraphFamily family = GraphFamily::kComplete;
  int n = 0;             // vertices; for ring-of-cliques cliques * clique_size
  int degree = 3;        // random-regular
  int cliques = 0;       // ring-of-cliques
  int clique_size = 0;   // ring-of-cliques
  std::uint64_t seed = 1;
};

// Deterministic for a given spec. Random-regular graphs come from the pairing
// model: random point pairs that would create a loop or parallel edge are
// re-drawn, a stuck or disconnected attempt restarts, bounded retries.
// Throws InputError on infeasible parameters.
MultiGraph Generate(const GeneratorSpec& spec);

// Text format: "n m", then m lines "u v", 0-based; edge ids follow line order.
MultiGraph ReadGraph(std::istream& in);
void WriteGraph(std::ostream& out, const MultiGraph& g);

}  // namespace hyperroute

#endif  // HYPERROUTE_GRAPH_H_
