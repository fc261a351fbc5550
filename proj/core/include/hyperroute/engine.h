#ifndef HYPERROUTE_ENGINE_H_
#define HYPERROUTE_ENGINE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperroute/common.h"
#include "hyperroute/halflayer.h"
#include "hyperroute/hypergraph.h"
#include "hyperroute/signature.h"

namespace hyperroute {

struct EngineConfig {
  int delta = 4;                  // Delta, the per-vertex half-layer degree cap
  Rational mu{1, 10};             // collapse / superpose threshold
  std::int64_t iteration_cap = 0; // 0: DefaultIterationCap(|A|, delta)
  HalfLayerOracleSpec oracle;
  // Re-validate the whole forest every main-loop iteration (quadratic) and
  // record the potential-function observations in EngineStats.
  bool strict_mode = false;
  // One line per main-loop iteration; see FormatTraceLine.
  std::ostream* trace = nullptr;
};

// Throws std::invalid_argument unless 0 < mu < 1, delta >= 1, cap >= 0.
void ValidateConfig(const EngineConfig& cfg);

// ceil(9 log2 n / log2 delta); n when delta < 2.
int LayerDepthBound(int n, int delta);

// 4 * 2^ceil(sqrt(l^2 + l log2 n)) with l = LayerDepthBound(n, delta),
// saturated at 2^40.
std::int64_t DefaultIterationCap(int n, int delta);

// Signals that the main loop could not finish; when the hypergraph satisfies
// the strong Haxell condition for the configured Delta this does not happen.
class NoProgressError : public std::runtime_error {
 public:
  NoProgressError(const std::string& what, Signature last, std::int64_t iters)
      : std::runtime_error(what), last_signature(std::move(last)),
        iterations(iters) {}
  Signature last_signature;
  std::int64_t iterations;
};

// A strict-mode check found the forest in a state the algorithm never
// produces. The message carries a dump of the forest.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Layers (L_0, ..., L_l) with L_0 = (∅, unmatched A-vertices), together with
// the partial matching M they are defined against. Besides the layers it keeps
// the indices every operation needs in O(1): the matching edge at each A- and
// B-vertex, and how many forest edges cover each B-vertex.
class AlternatingForest {
 public:
  AlternatingForest() = default;
  // Empty forest over the given matching; Y_0 = A \ A(M).
  AlternatingForest(const BipartiteHypergraph& h, std::span<const EdgeId> m);

  int depth() const { return static_cast<int>(layers_.size()) - 1; }
  const Layer& layer(int t) const { return layers_.at(t); }
  std::vector<AVertex> unmatched() const;  // Y_0, ascending
  bool is_unmatched(AVertex a) const { return unmatched_[a] != 0; }
  int num_unmatched() const { return num_unmatched_; }
  int num_a() const { return static_cast<int>(matched_at_.size()); }
  int num_b() const { return static_cast<int>(owner_.size()); }

  EdgeId matched_at(AVertex a) const { return matched_at_[a]; }
  EdgeId owner(BVertex b) const { return owner_[b]; }
  Matching matching() const;  // ascending ids
  int matching_size() const { return matching_size_; }

  // b ∈ B(X_{<=l} ∪ Y_{<=l}).
  bool in_forest(BVertex b) const { return b_count_[b] > 0; }
  // A(Y_t) ascending; for t = 0 the unmatched vertices.
  std::vector<AVertex> ActiveA(const BipartiteHypergraph& h, int t) const;
  // (|X_t|, |Y_t|) for t = 0..l.
  std::vector<std::pair<std::int64_t, std::int64_t>> LayerSizes() const;

  // Low-level mutation used by the engine operations.
  void PushLayer(const BipartiteHypergraph& h, Layer layer);
  void PopLayer(const BipartiteHypergraph& h);
  void ReplaceTop(const BipartiteHypergraph& h, Layer layer);
  // Adds e to M; its A-vertex must be free.
  void Match(const BipartiteHypergraph& h, EdgeId e);
  // Removes f from M and, when t >= 1, from Y_t.
  void Unmatch(const BipartiteHypergraph& h, EdgeId f, int t);

  std::string Dump() const;

 private:
  void Count(const BipartiteHypergraph& h, const Layer& layer, int sign);

  std::vector<EdgeId> matched_at_;
  std::vector<EdgeId> owner_;
  std::vector<char> unmatched_;
  int num_unmatched_ = 0;
  int matching_size_ = 0;
  std::vector<Layer> layers_{Layer{}};  // layers_[0] is a placeholder for L_0
  std::vector<int> b_count_;
};

// Accumulated layer (X', Y') under construction.
using LayerSeed = Layer;

// e is Delta-addable w.r.t. (forest, seed): its A-vertex has fewer than Delta
// edges in seed.x and B(e) avoids B(X_{<=l} ∪ Y_{<=l} ∪ X' ∪ Y').
bool IsAddable(const BipartiteHypergraph& h, const AlternatingForest& forest,
               const LayerSeed& seed, EdgeId e, int delta);
// Addable and not blocked by any matching edge.
bool IsImmediatelyAddable(const BipartiteHypergraph& h,
                          const AlternatingForest& forest,
                          const LayerSeed& seed, EdgeId e, int delta);

// Lowest-id edge at `a` that is (immediately) addable, if any. Matching edges
// are never returned.
std::optional<EdgeId> AddableEdge(const BipartiteHypergraph& h,
                                  const AlternatingForest& forest,
                                  const LayerSeed& seed, AVertex a,
                                  const EngineConfig& cfg,
                                  bool immediately = false);

// Extends `seed`, a layer w.r.t. the state on top of layer `top`, by asking
// the oracle for a half layer over (A(Y_top), B(forest) ∪ B(seed), M, Delta).
// Layers above `top` may only be the seed itself. top = -1 means the current
// depth.
Layer BuildLayer(const AlternatingForest& forest, const LayerSeed& seed,
                 HalfLayerOracle& oracle, const EngineConfig& cfg,
                 int top = -1);

struct EngineStats {
  std::int64_t iterations = 0;        // main-loop iterations
  std::int64_t collapses = 0;         // executions of the collapse loop body
  std::int64_t swapped_edges = 0;     // edges moved into M by swaps
  std::int64_t superpose_attempts = 0;
  std::int64_t superpose_kept = 0;
  std::int64_t oracle_calls = 0;
  int max_depth = 0;
  // Strict-mode observations at each main-loop start. Under the strong Haxell
  // condition with phi >= Delta r^2 all of these stay zero.
  std::int64_t signature_violations = 0;  // potential did not strictly drop
  std::int64_t ratio_violations = 0;      // |Y_t| < (1 - mu)|X_t|
  std::int64_t growth_violations = 0;     // |X_i| <= (Delta/10)|Y_{<=i-1}|
  std::int64_t depth_violations = 0;      // l > 9 log2 n / log2 Delta
  std::int64_t observations = 0;          // main-loop starts inspected
};

enum class TraceEvent { kGrow, kSwap, kSuperpose, kCollapse };
std::string ToString(TraceEvent event);

// "iter l |M| signature-hash event", the hash as 16 hex digits. The event is
// `collapse` when the matching grew, else `superpose` when a superpose-build
// was kept, else `swap` when the collapse loop ran, else `grow`.
std::string FormatTraceLine(std::int64_t iter, int depth, int matched,
                            std::uint64_t signature_hash, TraceEvent event);

struct CollapseOutcome {
  int collapses = 0;
  int swapped = 0;
  int superpose_attempts = 0;
  int superpose_kept = 0;
  bool matching_grew = false;
};

// While the top layer holds more than mu |X_l| immediately addable edges:
// swap them in for their matching edges in Y_{l-1} (or for unmatched
// vertices when l = 1), discard L_l, try a superpose-build of L_{l-1}, keep it
// only if it grew X_{l-1} by a factor >= 1 + mu, and decrement l.
CollapseOutcome CollapseForest(AlternatingForest& forest,
                               HalfLayerOracle& oracle,
                               const EngineConfig& cfg);

Signature ComputeSignature(const AlternatingForest& forest);

// Structural invariants of the forest (layers valid against their states,
// L_0, cross-layer disjointness, index consistency, non-collapsibility).
// Returns a description of the first breach.
std::optional<std::string> CheckForest(const BipartiteHypergraph& h,
                                       const AlternatingForest& forest,
                                       const EngineConfig& cfg);

struct MatchingResult {
  Matching matching;  // ascending ids
  EngineStats stats;
};

// The alternating-forest local search. Generic over the half-layer oracle:
// with a maximal oracle it is the plain algorithm, with an (r', alpha)
// approximate oracle it is the faster variant.
class MatchingEngine {
 public:
  MatchingEngine(HalfLayerOracle& oracle, EngineConfig cfg);

  bool done() const { return forest_.num_unmatched() == 0; }
  // One main-loop iteration: build and push a layer, then collapse.
  TraceEvent Step();
  // Steps until every A-vertex is matched. Throws NoProgressError.
  MatchingResult Run();

  const AlternatingForest& forest() const { return forest_; }
  const EngineStats& stats() const { return stats_; }
  const EngineConfig& config() const { return cfg_; }
  std::int64_t iteration_cap() const { return cap_; }

 private:
  void Observe();

  HalfLayerOracle& oracle_;
  EngineConfig cfg_;
  std::int64_t cap_;
  AlternatingForest forest_;
  EngineStats stats_;
  SignatureCalculator signatures_;
  std::optional<Signature> last_signature_;
};

// Perfect matching of an explicit hypergraph with the oracle named in
// cfg.oracle (explicit-greedy or throttled-test).
MatchingResult HypergraphMatching(const BipartiteHypergraph& h,
                                  const EngineConfig& cfg);

}  // namespace hyperroute

#endif  // HYPERROUTE_ENGINE_H_
