#include "hyperroute/halflayer.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace hyperroute {
namespace {

// b -> matching edge containing b, or kNone.
std::vector<EdgeId> OwnerIndex(const BipartiteHypergraph& h,
                               std::span<const EdgeId> m) {
  std::vector<EdgeId> owner(h.num_b(), kNone);
  for (EdgeId f : m) {
    for (BVertex b : h.edge(f).b) owner[b] = f;
  }
  return owner;
}

// a -> matching edge at a, or kNone.
std::vector<EdgeId> MatchedAt(const BipartiteHypergraph& h,
                              std::span<const EdgeId> m) {
  std::vector<EdgeId> at(h.num_a(), kNone);
  for (EdgeId f : m) at[h.edge(f).a] = f;
  return at;
}

bool Touches(const Hyperedge& e, const std::vector<char>& marks) {
  return std::any_of(e.b.begin(), e.b.end(), [&](BVertex b) { return marks[b]; });
}

}  // namespace

HalfLayerState HalfLayerState::Make(const BipartiteHypergraph& h,
                                    std::span<const AVertex> active,
                                    std::span<const BVertex> forbidden,
                                    Matching matching, int delta) {
  HalfLayerState state;
  state.active_a.assign(h.num_a(), 0);
  state.forbidden_b.assign(h.num_b(), 0);
  for (AVertex a : active) state.active_a.at(a) = 1;
  for (BVertex b : forbidden) state.forbidden_b.at(b) = 1;
  state.matching = std::move(matching);
  state.delta = delta;
  return state;
}

std::string ToString(OracleKind kind) {
  switch (kind) {
    case OracleKind::kExplicitGreedy: return "explicit-greedy";
    case OracleKind::kGraphBfs: return "bfs";
    case OracleKind::kGraphBlockingFlow: return "blocking-flow";
    case OracleKind::kThrottledTest: return "throttled-test";
  }
  return "unknown";
}

OracleKind ParseOracleKind(const std::string& text) {
  if (text == "explicit-greedy" || text == "greedy") {
    return OracleKind::kExplicitGreedy;
  }
  if (text == "bfs" || text == "graph-bfs") return OracleKind::kGraphBfs;
  if (text == "blocking-flow" || text == "graph-blocking-flow") {
    return OracleKind::kGraphBlockingFlow;
  }
  if (text == "throttled-test" || text == "throttled") {
    return OracleKind::kThrottledTest;
  }
  throw InputError("unknown oracle kind '" + text + "'");
}

bool IsHalfLayer(const BipartiteHypergraph& h, std::span<const EdgeId> z,
                 const HalfLayerState& state) {
  std::vector<EdgeId> matched_at = MatchedAt(h, state.matching);
  std::vector<EdgeId> owner = OwnerIndex(h, state.matching);
  std::vector<int> degree(h.num_a(), 0);
  std::vector<char> used_b(h.num_b(), 0);
  std::vector<EdgeId> claimed_by;  // matching edge -> z edge touching it
  auto claim = [&](EdgeId f, EdgeId e) {
    if (static_cast<int>(claimed_by.size()) <= f) {
      claimed_by.resize(f + 1, kNone);
    }
    if (claimed_by[f] != kNone && claimed_by[f] != e) return false;
    claimed_by[f] = e;
    return true;
  };
  for (EdgeId id : z) {
    if (!h.valid_id(id)) return false;
    const Hyperedge& e = h.edge(id);
    if (matched_at[e.a] == id) return false;  // Z ⊆ E \ M
    // Condition 1.
    if (!state.active_a[e.a]) return false;
    if (++degree[e.a] + state.used(e.a) > state.delta) return false;
    // Condition 2.
    for (BVertex b : e.b) {
      if (state.forbidden_b[b] || used_b[b]) return false;
      used_b[b] = 1;
    }
    // Condition 3.
    for (BVertex b : e.b) {
      if (owner[b] != kNone && !claim(owner[b], id)) return false;
    }
  }
  return true;
}

std::vector<EdgeId> BlockingSet(const BipartiteHypergraph& h,
                                std::span<const EdgeId> z,
                                std::span<const EdgeId> m) {
  std::vector<EdgeId> owner = OwnerIndex(h, m);
  std::vector<EdgeId> out;
  for (EdgeId id : z) {
    for (BVertex b : h.edge(id).b) {
      if (owner[b] != kNone) out.push_back(owner[b]);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool IsRMaximal(const BipartiteHypergraph& h, std::span<const EdgeId> z,
                const HalfLayerState& state, int r_prime) {
  if (!IsHalfLayer(h, z, state)) {
    throw std::invalid_argument("IsRMaximal: z is not a half layer");
  }
  std::vector<EdgeId> matched_at = MatchedAt(h, state.matching);
  std::vector<char> blocked = state.forbidden_b;
  std::vector<int> degree(h.num_a(), 0);
  std::vector<char> in_z(h.num_edges(), 0);
  for (EdgeId id : z) {
    in_z[id] = 1;
    ++degree[h.edge(id).a];
    for (BVertex b : h.edge(id).b) blocked[b] = 1;
  }
  for (EdgeId f : BlockingSet(h, z, state.matching)) {
    for (BVertex b : h.edge(f).b) blocked[b] = 1;
  }
  for (EdgeId id = 0; id < h.num_edges(); ++id) {
    const Hyperedge& e = h.edge(id);
    if (in_z[id] || matched_at[e.a] == id) continue;
    if (static_cast<int>(e.b.size()) > r_prime) continue;
    if (!state.active_a[e.a]) continue;
    if (degree[e.a] + state.used(e.a) >= state.delta) continue;
    if (Touches(e, blocked)) continue;
    return false;
  }
  return true;
}

Layer GreedyMaximalHalfLayer(const BipartiteHypergraph& h,
                             const HalfLayerState& state, int r_prime,
                             std::int64_t* work) {
  std::int64_t touched = 0;
  std::vector<EdgeId> owner(h.num_b(), kNone);
  std::vector<EdgeId> matched_at(h.num_a(), kNone);
  for (EdgeId f : state.matching) {
    matched_at[h.edge(f).a] = f;
    for (BVertex b : h.edge(f).b) owner[b] = f;
    touched += static_cast<std::int64_t>(h.edge(f).b.size());
  }
  std::vector<char> forbidden = state.forbidden_b;
  std::vector<int> degree(h.num_a(), 0);

  std::vector<EdgeId> candidates;
  for (AVertex a = 0; a < h.num_a(); ++a) {
    if (!state.active_a[a]) continue;
    auto inc = h.incident(a);
    candidates.insert(candidates.end(), inc.begin(), inc.end());
  }
  std::sort(candidates.begin(), candidates.end());

  Layer layer;
  for (EdgeId id : candidates) {
    const Hyperedge& e = h.edge(id);
    if (matched_at[e.a] == id) continue;
    if (static_cast<int>(e.b.size()) > r_prime) continue;
    if (degree[e.a] + state.used(e.a) >= state.delta) continue;
    touched += static_cast<std::int64_t>(e.b.size());
    if (Touches(e, forbidden)) continue;
    layer.x.push_back(id);
    ++degree[e.a];
    for (BVertex b : e.b) forbidden[b] = 1;
    for (BVertex b : e.b) {
      EdgeId f = owner[b];
      if (f == kNone) continue;
      // Forbidding all of B(f) keeps any later edge from touching f, which
      // is what makes condition 3 hold. Each f is expanded once.
      layer.y.push_back(f);
      for (BVertex fb : h.edge(f).b) {
        forbidden[fb] = 1;
        owner[fb] = kNone;
      }
      touched += static_cast<std::int64_t>(h.edge(f).b.size());
    }
  }
  std::sort(layer.y.begin(), layer.y.end());
  if (work != nullptr) *work += touched;
  return layer;
}

namespace {

class ExhaustiveHalfLayerSearch {
 public:
  ExhaustiveHalfLayerSearch(const BipartiteHypergraph& h,
                            const HalfLayerState& state,
                            std::vector<EdgeId> candidates)
      : h_(h),
        state_(state),
        candidates_(std::move(candidates)),
        owner_(OwnerIndex(h, state.matching)),
        b_used_(h.num_b(), 0),
        degree_(h.num_a(), 0),
        owner_used_(h.num_edges(), 0) {}

  int Run() {
    Recurse(0, 0);
    return best_;
  }

 private:
  bool CanAdd(const Hyperedge& e) const {
    if (degree_[e.a] + state_.used(e.a) >= state_.delta) return false;
    for (BVertex b : e.b) {
      if (b_used_[b]) return false;
      if (owner_[b] != kNone && owner_used_[owner_[b]]) return false;
    }
    return true;
  }

  void Toggle(const Hyperedge& e, int delta) {
    degree_[e.a] += delta;
    for (BVertex b : e.b) {
      b_used_[b] += delta;
      if (owner_[b] != kNone) owner_used_[owner_[b]] += delta;
    }
  }

  void Recurse(std::size_t i, int size) {
    best_ = std::max(best_, size);
    if (i == candidates_.size()) return;
    if (size + static_cast<int>(candidates_.size() - i) <= best_) return;
    const Hyperedge& e = h_.edge(candidates_[i]);
    if (CanAdd(e)) {
      Toggle(e, +1);
      Recurse(i + 1, size + 1);
      Toggle(e, -1);
    }
    Recurse(i + 1, size);
  }

  const BipartiteHypergraph& h_;
  const HalfLayerState& state_;
  std::vector<EdgeId> candidates_;
  std::vector<EdgeId> owner_;
  std::vector<int> b_used_;
  std::vector<int> degree_;
  std::vector<int> owner_used_;  // number of chosen edges touching each f
  int best_ = 0;
};

}  // namespace

ApproxRatio CheckApproxRatio(const BipartiteHypergraph& h,
                             std::span<const EdgeId> z,
                             const HalfLayerState& state, int r_prime,
                             const ExactCaps& caps) {
  std::vector<EdgeId> matched_at = MatchedAt(h, state.matching);
  std::vector<EdgeId> candidates;
  for (EdgeId id = 0; id < h.num_edges(); ++id) {
    const Hyperedge& e = h.edge(id);
    if (matched_at[e.a] == id || !state.active_a[e.a]) continue;
    if (static_cast<int>(e.b.size()) > r_prime) continue;
    if (state.used(e.a) >= state.delta) continue;
    if (Touches(e, state.forbidden_b)) continue;
    candidates.push_back(id);
  }
  if (static_cast<int>(candidates.size()) > caps.half_layer_edges) {
    throw CapExceeded("too many candidate edges for exhaustive half layers: " +
                      std::to_string(candidates.size()) + " > " +
                      std::to_string(caps.half_layer_edges));
  }
  ApproxRatio ratio;
  ratio.best = ExhaustiveHalfLayerSearch(h, state, std::move(candidates)).Run();
  if (z.empty()) {
    ratio.infinite = ratio.best > 0;
    ratio.value = Rational(1);
  } else {
    ratio.value = Rational(ratio.best, static_cast<std::int64_t>(z.size()));
  }
  return ratio;
}

GreedyHalfLayerOracle::GreedyHalfLayerOracle(const BipartiteHypergraph& h,
                                             int r_prime)
    : h_(h), r_prime_(r_prime) {}

Layer GreedyHalfLayerOracle::Build(const HalfLayerState& state) {
  return GreedyMaximalHalfLayer(h_, state, r_prime_, &work_);
}

ThrottledHalfLayerOracle::ThrottledHalfLayerOracle(const BipartiteHypergraph& h,
                                                   int r_prime,
                                                   Rational fraction)
    : h_(h), r_prime_(r_prime), fraction_(fraction) {
  if (fraction <= Rational(0) || fraction > Rational(1)) {
    throw std::invalid_argument("throttle fraction must lie in (0, 1]");
  }
}

Layer ThrottledHalfLayerOracle::Build(const HalfLayerState& state) {
  Layer full = GreedyMaximalHalfLayer(h_, state, r_prime_);
  Rational want = fraction_ * static_cast<std::int64_t>(full.x.size());
  auto keep = static_cast<std::size_t>(boost::rational_cast<std::int64_t>(want));
  if (Rational(static_cast<std::int64_t>(keep)) < want) ++keep;
  Layer layer;
  layer.x.assign(full.x.begin(), full.x.begin() + std::min(keep, full.x.size()));
  layer.y = BlockingSet(h_, layer.x, state.matching);
  return layer;
}

std::unique_ptr<HalfLayerOracle> MakeExplicitOracle(
    const BipartiteHypergraph& h, const HalfLayerOracleSpec& spec) {
  int r_prime = spec.rank_limit > 0 ? spec.rank_limit : h.rank_bound();
  if (r_prime > h.rank_bound()) {
    throw std::invalid_argument("rank limit exceeds the host rank bound");
  }
  if (spec.approx_alpha < Rational(1)) {
    throw std::invalid_argument("approximation ratio must be >= 1");
  }
  switch (spec.kind) {
    case OracleKind::kExplicitGreedy:
      return std::make_unique<GreedyHalfLayerOracle>(h, r_prime);
    case OracleKind::kThrottledTest:
      return std::make_unique<ThrottledHalfLayerOracle>(h, r_prime,
                                                        spec.throttle_fraction);
    default:
      throw std::invalid_argument("oracle kind " + ToString(spec.kind) +
                                  " needs a routing instance");
  }
}

void WriteLayer(std::ostream& out, const Layer& layer) {
  auto line = [&](const std::vector<EdgeId>& ids) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out << ' ';
      out << ids[i];
    }
    out << '\n';
  };
  line(layer.x);
  line(layer.y);
}

}  // namespace hyperroute
