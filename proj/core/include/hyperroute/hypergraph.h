#ifndef HYPERROUTE_HYPERGRAPH_H_
#define HYPERROUTE_HYPERGRAPH_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperroute/common.h"

namespace hyperroute {

using AVertex = int;
using BVertex = int;
using EdgeId = int;
inline constexpr int kNone = -1;

struct Hyperedge {
  AVertex a = kNone;
  std::vector<BVertex> b;  // sorted ascending
};

// Bipartite hypergraph H = (A, B, E): every hyperedge holds exactly one
// A-vertex and a non-empty set of at most `rank_bound` B-vertices. Edge ids
// are stable and dense; new edges may be appended, which is how the implicit
// demand-path hypergraph grows as oracles discover paths.
class BipartiteHypergraph {
 public:
  BipartiteHypergraph() = default;
  BipartiteHypergraph(int num_a, int num_b, int rank_bound);

  // Appends an edge. B is sorted but not otherwise checked; see Validate().
  EdgeId AddEdge(AVertex a, std::vector<BVertex> b);

  int num_a() const { return num_a_; }
  int num_b() const { return num_b_; }
  int rank_bound() const { return rank_bound_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  bool valid_id(EdgeId e) const { return e >= 0 && e < num_edges(); }

  const Hyperedge& edge(EdgeId e) const { return edges_[e]; }
  std::span<const Hyperedge> edges() const { return edges_; }
  // Edges containing `a`, ascending by id.
  std::span<const EdgeId> incident(AVertex a) const { return incident_[a]; }

  // p(H) = sum over edges of |e| (the A-vertex counts once per edge).
  std::int64_t volume() const { return volume_; }
  // Largest |e ∩ B| actually present.
  int max_rank() const;

 private:
  int num_a_ = 0;
  int num_b_ = 0;
  int rank_bound_ = 0;
  std::int64_t volume_ = 0;
  std::vector<Hyperedge> edges_;
  std::vector<std::vector<EdgeId>> incident_;
};

using Matching = std::vector<EdgeId>;

// Returns nullopt when every structural invariant holds, otherwise a message
// naming the first offending edge.
std::optional<std::string> Validate(const BipartiteHypergraph& h);

// Pairwise vertex-disjoint on both sides. Throws InputError on unknown ids.
bool IsMatching(const BipartiteHypergraph& h, std::span<const EdgeId> m);
bool IsPerfectMatching(const BipartiteHypergraph& h, std::span<const EdgeId> m);

// {f in m : f ∩ e ∩ B != ∅}; intersections in A are ignored. Ascending ids.
std::vector<EdgeId> BlockingEdges(const BipartiteHypergraph& h, EdgeId e,
                                  std::span<const EdgeId> m);

// Edges incident to any vertex of `s`, ascending.
std::vector<EdgeId> EdgesOf(const BipartiteHypergraph& h,
                            std::span<const AVertex> s);

// tau(E_S): minimum number of B-vertices hitting every edge incident to S.
// Exact branch and bound; throws CapExceeded when |B(E_S)| > caps.tau_b.
int Tau(const BipartiteHypergraph& h, std::span<const AVertex> s,
        const ExactCaps& caps = {});

// Decides tau(E_S) >= target without computing tau exactly when the answer
// is no; used by the Haxell verifier.
bool TauAtLeast(const BipartiteHypergraph& h, std::span<const AVertex> s,
                int target, const ExactCaps& caps = {});

struct HaxellReport {
  bool holds = true;
  std::vector<AVertex> witness;  // first S with tau(E_S) < phi |S|
  int witness_tau = 0;
};

// tau(E_S) >= phi |S| for every non-empty S ⊆ A. Throws CapExceeded when
// |A| > caps.haxell_a.
HaxellReport CheckStrongHaxell(const BipartiteHypergraph& h, Rational phi,
                               const ExactCaps& caps = {});
bool VerifyStrongHaxell(const BipartiteHypergraph& h, Rational phi,
                        const ExactCaps& caps = {});

// Sub-hypergraph of the edges with |e ∩ B| <= max_rank (ids renumbered).
BipartiteHypergraph RankRestricted(const BipartiteHypergraph& h, int max_rank);

// Backtracking search, A-vertices in order, edges ascending. Throws
// CapExceeded when |A| > caps.matching_a.
std::optional<Matching> BruteForcePerfectMatching(const BipartiteHypergraph& h,
                                                  const ExactCaps& caps = {});

// Text format: "nA nB mE r" then mE lines "a k b1 .. bk". Throws InputError.
BipartiteHypergraph ReadHypergraph(std::istream& in);
void WriteHypergraph(std::ostream& out, const BipartiteHypergraph& h);

// One edge id per line.
Matching ReadMatching(std::istream& in);
void WriteMatching(std::ostream& out, std::span<const EdgeId> m);

}  // namespace hyperroute

#endif  // HYPERROUTE_HYPERGRAPH_H_
