#ifndef HYPERROUTE_HALFLAYER_H_
#define HYPERROUTE_HALFLAYER_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hyperroute/common.h"
#include "hyperroute/hypergraph.h"

namespace hyperroute {

// The state (A', B', M) and degree parameter Delta against which half layers
// are defined. A' and B' are dense membership vectors indexed by vertex.
//
// `degree_used` lets a caller extend an existing layer X': it holds, per
// A-vertex, how many edges of X' already sit at that vertex, and the Delta cap
// then applies to X' and the new edges together. Empty means all zeros.
struct HalfLayerState {
  std::vector<char> active_a;     // A'
  std::vector<char> forbidden_b;  // B'
  Matching matching;              // M
  int delta = 1;                  // Delta
  std::vector<int> degree_used;

  static HalfLayerState Make(const BipartiteHypergraph& h,
                             std::span<const AVertex> active,
                             std::span<const BVertex> forbidden,
                             Matching matching, int delta);

  int used(AVertex a) const { return degree_used.empty() ? 0 : degree_used[a]; }
};

// A half layer X together with its blocking set Y ⊆ M.
struct Layer {
  std::vector<EdgeId> x;
  std::vector<EdgeId> y;
};

enum class OracleKind {
  kExplicitGreedy,
  kGraphBfs,
  kGraphBlockingFlow,
  kThrottledTest,
};

std::string ToString(OracleKind kind);
OracleKind ParseOracleKind(const std::string& text);

struct HalfLayerOracleSpec {
  OracleKind kind = OracleKind::kExplicitGreedy;
  int rank_limit = 0;                 // r'; 0 means the host rank bound
  Rational approx_alpha{1};           // declared alpha >= 1
  Rational throttle_fraction{1, 2};   // only for kThrottledTest
};

// Source of half layers for the matching engine. Hyperedge ids refer to
// hypergraph(); implicit oracles append newly discovered edges to it.
class HalfLayerOracle {
 public:
  virtual ~HalfLayerOracle() = default;
  virtual const BipartiteHypergraph& hypergraph() const = 0;
  // Returns a half layer w.r.t. `state` and its exact blocking set.
  virtual Layer Build(const HalfLayerState& state) = 0;
  // Whether Build() always returns an r-maximal half layer.
  virtual bool maximal() const = 0;
};

// Conditions 1-3 of a half layer, plus Z ⊆ E \ M.
bool IsHalfLayer(const BipartiteHypergraph& h, std::span<const EdgeId> z,
                 const HalfLayerState& state);

// No edge of rank <= r_prime outside z can be added while keeping z a half
// layer. Throws std::invalid_argument if z is not a half layer.
bool IsRMaximal(const BipartiteHypergraph& h, std::span<const EdgeId> z,
                const HalfLayerState& state, int r_prime);

// Linear-time greedy scan over edges in ascending id: accept an edge when its
// A-vertex is active with spare degree, its rank is <= r_prime and it avoids
// the forbidden set; then forbid B(e) and the B-part of every matching edge it
// touches. `work`, when given, accumulates the number of B-vertex visits.
Layer GreedyMaximalHalfLayer(const BipartiteHypergraph& h,
                             const HalfLayerState& state, int r_prime,
                             std::int64_t* work = nullptr);

// Union of blocking edges over z, ascending.
std::vector<EdgeId> BlockingSet(const BipartiteHypergraph& h,
                                std::span<const EdgeId> z,
                                std::span<const EdgeId> m);

struct ApproxRatio {
  Rational value{1};
  bool infinite = false;  // |z| = 0 while a non-empty half layer exists
  int best = 0;           // largest rank-<=r' half layer found
};

// max |Z'| / |z| over all half layers Z' of rank <= r_prime, by exhaustive
// branch and bound. 0/0 is reported as 1. Throws CapExceeded when the number
// of candidate edges exceeds caps.half_layer_edges.
ApproxRatio CheckApproxRatio(const BipartiteHypergraph& h,
                             std::span<const EdgeId> z,
                             const HalfLayerState& state, int r_prime,
                             const ExactCaps& caps = {});

// Oracle backed by GreedyMaximalHalfLayer over an explicit hypergraph.
class GreedyHalfLayerOracle : public HalfLayerOracle {
 public:
  GreedyHalfLayerOracle(const BipartiteHypergraph& h, int r_prime);
  const BipartiteHypergraph& hypergraph() const override { return h_; }
  Layer Build(const HalfLayerState& state) override;
  bool maximal() const override { return true; }
  std::int64_t work() const { return work_; }

 private:
  const BipartiteHypergraph& h_;
  int r_prime_;
  std::int64_t work_ = 0;
};

// Test oracle: runs the greedy scan, then keeps only the first
// ceil(fraction * |Z|) accepted edges. Deliberately non-maximal.
class ThrottledHalfLayerOracle : public HalfLayerOracle {
 public:
  ThrottledHalfLayerOracle(const BipartiteHypergraph& h, int r_prime,
                           Rational fraction);
  const BipartiteHypergraph& hypergraph() const override { return h_; }
  Layer Build(const HalfLayerState& state) override;
  bool maximal() const override { return false; }

 private:
  const BipartiteHypergraph& h_;
  int r_prime_;
  Rational fraction_;
};

// Explicit-hypergraph oracle for the given spec (greedy or throttled).
std::unique_ptr<HalfLayerOracle> MakeExplicitOracle(
    const BipartiteHypergraph& h, const HalfLayerOracleSpec& spec);

// Debug dump: X ids on the first line, Y ids on the second.
void WriteLayer(std::ostream& out, const Layer& layer);

}  // namespace hyperroute

#endif  // HYPERROUTE_HALFLAYER_H_
