#include "hyperroute/graph.h"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <queue>
#include <random>
#include <set>
#include <tuple>
#include <stdexcept>

namespace hyperroute {

MultiGraph::MultiGraph(int num_vertices) {
  if (num_vertices < 0) throw InputError("negative vertex count");
  adj_.resize(num_vertices);
}

GraphEdgeId MultiGraph::AddEdge(Vertex u, Vertex v) {
  if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices()) {
    throw InputError("edge endpoint out of range");
  }
  if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
  GraphEdgeId id = num_edges();
  ends_.emplace_back(u, v);
  auto insert = [this](Vertex from, Arc arc) {
    auto& list = adj_[from];
    auto pos = std::upper_bound(
        list.begin(), list.end(), arc, [](const Arc& x, const Arc& y) {
          return std::tie(x.to, x.id) < std::tie(y.to, y.id);
        });
    list.insert(pos, arc);
  };
  insert(u, {v, id});
  insert(v, {u, id});
  return id;
}

int MultiGraph::min_degree() const {
  int best = num_vertices() ? degree(0) : 0;
  for (Vertex v = 1; v < num_vertices(); ++v) best = std::min(best, degree(v));
  return best;
}

int MultiGraph::max_degree() const {
  int best = 0;
  for (Vertex v = 0; v < num_vertices(); ++v) best = std::max(best, degree(v));
  return best;
}

int EdgeDeletionView::degree(Vertex v) const {
  int d = 0;
  ForEachArc(v, [&d](const Arc&) { ++d; });
  return d;
}

EdgeDeletionView RemoveEdges(const MultiGraph& g,
                             std::span<const GraphEdgeId> f) {
  EdgeDeletionView view(g);
  for (GraphEdgeId e : f) {
    if (e < 0 || e >= g.num_edges()) throw std::out_of_range("edge id");
    view.Remove(e);
  }
  return view;
}

std::vector<int> BfsDistances(const EdgeDeletionView& view, Vertex source) {
  std::vector<int> dist(view.graph().num_vertices(), -1);
  std::queue<Vertex> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop();
    view.ForEachArc(u, [&](const Arc& arc) {
      if (dist[arc.to] < 0) {
        dist[arc.to] = dist[u] + 1;
        queue.push(arc.to);
      }
    });
  }
  return dist;
}

bool IsConnected(const MultiGraph& g) {
  if (g.num_vertices() <= 1) return true;
  auto dist = BfsDistances(EdgeDeletionView(g), 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

CutReport EvaluateCut(const MultiGraph& g, std::span<const Vertex> subset) {
  CutReport report;
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : subset) {
    if (v < 0 || v >= g.num_vertices()) throw std::out_of_range("vertex");
    in[v] = 1;
  }
  std::int64_t total = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    total += g.degree(v);
    if (!in[v]) continue;
    report.subset.push_back(v);
    report.volume += g.degree(v);
  }
  for (GraphEdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    if (in[u] != in[v]) ++report.boundary;
  }
  report.complement_volume = total - report.volume;
  std::int64_t denom = std::min(report.volume, report.complement_volume);
  report.conductance = denom > 0 ? Rational(report.boundary, denom) : Rational(0);
  return report;
}

ConductanceResult ConductanceExact(const MultiGraph& g, const ExactCaps& caps) {
  const int n = g.num_vertices();
  if (n < 2) throw std::invalid_argument("conductance needs >= 2 vertices");
  ConductanceResult result;
  auto dist = BfsDistances(EdgeDeletionView(g), 0);
  if (std::any_of(dist.begin(), dist.end(), [](int d) { return d < 0; })) {
    std::vector<Vertex> component;
    for (Vertex v = 0; v < n; ++v) {
      if (dist[v] >= 0) component.push_back(v);
    }
    result.witness = EvaluateCut(g, component);
    result.phi = 0;
    return result;
  }
  if (n > caps.conductance_n) {
    throw CapExceeded("graph too large for exact conductance");
  }

  // Vertex n-1 stays outside S; Φ(S) = Φ(V \ S) covers the other half.
  const std::int64_t total = 2 * static_cast<std::int64_t>(g.num_edges());
  std::vector<char> in(n, 0);
  std::int64_t boundary = 0, volume = 0;
  std::int64_t best_num = 1, best_den = 0;  // +infinity
  std::uint32_t mask = 0, best_mask = 0;
  const std::uint32_t count = std::uint32_t{1} << (n - 1);
  for (std::uint32_t i = 1; i < count; ++i) {
    Vertex v = std::countr_zero(i);
    std::int64_t to_s = 0;
    for (const Arc& arc : g.adjacency(v)) to_s += in[arc.to];
    std::int64_t deg = g.degree(v);
    if (in[v]) {
      boundary -= deg - 2 * to_s;
      volume -= deg;
    } else {
      boundary += deg - 2 * to_s;
      volume += deg;
    }
    in[v] ^= 1;
    mask ^= std::uint32_t{1} << v;
    std::int64_t denom = std::min(volume, total - volume);
    if (best_den == 0 || boundary * best_den < best_num * denom) {
      best_num = boundary;
      best_den = denom;
      best_mask = mask;
    }
  }
  std::vector<Vertex> subset;
  for (Vertex v = 0; v < n; ++v) {
    if (best_mask >> v & 1) subset.push_back(v);
  }
  result.witness = EvaluateCut(g, subset);
  result.phi = result.witness.conductance;
  return result;
}

std::string ToString(GraphFamily family) {
  switch (family) {
    case GraphFamily::kComplete: return "complete";
    case GraphFamily::kHypercube: return "hypercube";
    case GraphFamily::kRandomRegular: return "random-regular";
    case GraphFamily::kRingOfCliques: return "ring-of-cliques";
    case GraphFamily::kHypercubeSquare: return "hypercube-square";
  }
  return "?";
}

GraphFamily ParseGraphFamily(const std::string& text) {
  for (auto f : {GraphFamily::kComplete, GraphFamily::kHypercube,
                 GraphFamily::kRandomRegular, GraphFamily::kRingOfCliques,
                 GraphFamily::kHypercubeSquare}) {
    if (ToString(f) == text) return f;
  }
  throw InputError("unknown graph family '" + text + "'");
}

namespace {

MultiGraph Complete(int n) {
  MultiGraph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) g.AddEdge(u, v);
  }
  return g;
}

int CubeDimension(int n) {
  if (n < 1 || !std::has_single_bit(static_cast<unsigned>(n))) {
    throw InputError("hypercube needs n a power of two");
  }
  return std::countr_zero(static_cast<unsigned>(n));
}

MultiGraph Hypercube(int n, bool square) {
  CubeDimension(n);
  MultiGraph g(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      int dist = std::popcount(static_cast<unsigned>(u ^ v));
      if (dist == 1 || (square && dist == 2)) g.AddEdge(u, v);
    }
  }
  return g;
}

MultiGraph RingOfCliques(int cliques, int size) {
  if (cliques < 1 || size < 2) throw InputError("bad ring-of-cliques shape");
  MultiGraph g(cliques * size);
  for (int c = 0; c < cliques; ++c) {
    for (int i = 0; i < size; ++i) {
      for (int j = i + 1; j < size; ++j) g.AddEdge(c * size + i, c * size + j);
    }
  }
  // Clique c connects its last vertex to the first vertex of clique c+1.
  int links = cliques == 1 ? 0 : (cliques == 2 ? 1 : cliques);
  for (int c = 0; c < links; ++c) {
    int next = (c + 1) % cliques;
    g.AddEdge(c * size + size - 1, next * size);
  }
  return g;
}

MultiGraph RandomRegular(int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1 || d >= n || (static_cast<std::int64_t>(n) * d) % 2) {
    throw InputError("random-regular needs 1 <= d < n and d*n even");
  }
  std::mt19937_64 rng(seed);
  constexpr int kRestarts = 1000;
  for (int attempt = 0; attempt < kRestarts; ++attempt) {
    std::vector<Vertex> points;
    points.reserve(static_cast<std::size_t>(n) * d);
    for (Vertex v = 0; v < n; ++v) {
      for (int i = 0; i < d; ++i) points.push_back(v);
    }
    std::set<std::pair<Vertex, Vertex>> seen;
    std::vector<std::pair<Vertex, Vertex>> edges;
    bool stuck = false;
    while (!points.empty() && !stuck) {
      int tries = 0;
      while (true) {
        std::size_t i = rng() % points.size();
        std::size_t j = rng() % points.size();
        Vertex u = points[i], v = points[j];
        auto key = std::minmax(u, v);
        if (i != j && u != v && !seen.count(key)) {
          seen.insert(key);
          edges.emplace_back(key);
          if (i < j) std::swap(i, j);
          points[i] = points.back();
          points.pop_back();
          points[j] = points.back();
          points.pop_back();
          break;
        }
        if (++tries > 50 * static_cast<int>(points.size()) + 100) {
          stuck = true;
          break;
        }
      }
    }
    if (stuck) continue;
    MultiGraph g(n);
    for (auto [u, v] : edges) g.AddEdge(u, v);
    if (IsConnected(g)) return g;
  }
  throw InputError("random-regular generation did not converge");
}

}  // namespace

MultiGraph Generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case GraphFamily::kComplete:
      if (spec.n < 1) throw InputError("complete graph needs n >= 1");
      return Complete(spec.n);
    case GraphFamily::kHypercube:
      return Hypercube(spec.n, false);
    case GraphFamily::kHypercubeSquare:
      return Hypercube(spec.n, true);
    case GraphFamily::kRandomRegular:
      return RandomRegular(spec.n, spec.degree, spec.seed);
    case GraphFamily::kRingOfCliques: {
      int cliques = spec.cliques, size = spec.clique_size;
      if (cliques <= 0 && size > 0 && spec.n % size == 0) cliques = spec.n / size;
      if (size <= 0 && cliques > 0 && spec.n % cliques == 0) size = spec.n / cliques;
      if (spec.n != 0 && cliques * size != spec.n) {
        throw InputError("ring-of-cliques: n != cliques * clique_size");
      }
      return RingOfCliques(cliques, size);
    }
  }
  throw InputError("unknown graph family");
}

MultiGraph ReadGraph(std::istream& in) {
  std::int64_t n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw InputError("bad graph header");
  MultiGraph g(static_cast<int>(n));
  for (std::int64_t i = 0; i < m; ++i) {
    std::int64_t u = -1, v = -1;
    if (!(in >> u >> v)) {
      throw InputError("graph edge " + std::to_string(i) + ": expected u v");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("graph edge " + std::to_string(i) + ": out of range");
    }
    g.AddEdge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return g;
}

void WriteGraph(std::ostream& out, const MultiGraph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (GraphEdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.endpoints(e);
    out << u << ' ' << v << '\n';
  }
}

}  // namespace hyperroute
