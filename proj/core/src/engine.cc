#include "hyperroute/engine.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace hyperroute {
namespace {

void SortUnique(std::vector<EdgeId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// count > mu * total, exactly.
bool Exceeds(std::int64_t count, const Rational& mu, std::int64_t total) {
  return count * mu.denominator() > mu.numerator() * total;
}

std::string IdList(const std::vector<EdgeId>& ids) {
  std::ostringstream out;
  for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? " " : "") << ids[i];
  return out.str();
}

}  // namespace

void ValidateConfig(const EngineConfig& cfg) {
  if (cfg.delta < 1) throw std::invalid_argument("delta must be >= 1");
  if (cfg.mu <= 0 || cfg.mu >= 1) {
    throw std::invalid_argument("mu must lie strictly between 0 and 1");
  }
  if (cfg.iteration_cap < 0) {
    throw std::invalid_argument("iteration cap must be >= 0");
  }
  if (cfg.oracle.rank_limit < 0) {
    throw std::invalid_argument("rank limit must be >= 0");
  }
  if (cfg.oracle.approx_alpha < 1) {
    throw std::invalid_argument("alpha must be >= 1");
  }
}

int LayerDepthBound(int n, int delta) {
  n = std::max(n, 2);
  if (delta < 2) return n;
  double bound = 9.0 * std::log2(n) / std::log2(delta);
  return static_cast<int>(std::ceil(bound - 1e-9));
}

std::int64_t DefaultIterationCap(int n, int delta) {
  double l = LayerDepthBound(n, delta);
  double exponent = std::ceil(std::sqrt(l * l + l * std::log2(std::max(n, 2))));
  if (exponent >= 38) return std::int64_t{1} << 40;
  return std::int64_t{4} << static_cast<int>(exponent);
}

AlternatingForest::AlternatingForest(const BipartiteHypergraph& h,
                                     std::span<const EdgeId> m)
    : matched_at_(h.num_a(), kNone),
      owner_(h.num_b(), kNone),
      unmatched_(h.num_a(), 1),
      num_unmatched_(h.num_a()),
      b_count_(h.num_b(), 0) {
  if (!IsMatching(h, m)) throw std::invalid_argument("not a matching");
  for (EdgeId e : m) Match(h, e);
}

std::vector<AVertex> AlternatingForest::unmatched() const {
  std::vector<AVertex> out;
  out.reserve(num_unmatched_);
  for (AVertex a = 0; a < num_a(); ++a) {
    if (unmatched_[a]) out.push_back(a);
  }
  return out;
}

Matching AlternatingForest::matching() const {
  Matching m;
  m.reserve(matching_size_);
  for (EdgeId e : matched_at_) {
    if (e != kNone) m.push_back(e);
  }
  std::sort(m.begin(), m.end());
  return m;
}

std::vector<AVertex> AlternatingForest::ActiveA(const BipartiteHypergraph& h,
                                                int t) const {
  if (t == 0) return unmatched();
  std::vector<AVertex> out;
  for (EdgeId f : layer(t).y) out.push_back(h.edge(f).a);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>>
AlternatingForest::LayerSizes() const {
  std::vector<std::pair<std::int64_t, std::int64_t>> sizes;
  sizes.reserve(layers_.size());
  sizes.emplace_back(0, num_unmatched_);
  for (std::size_t t = 1; t < layers_.size(); ++t) {
    sizes.emplace_back(layers_[t].x.size(), layers_[t].y.size());
  }
  return sizes;
}

void AlternatingForest::Count(const BipartiteHypergraph& h, const Layer& layer,
                              int sign) {
  for (const auto* part : {&layer.x, &layer.y}) {
    for (EdgeId e : *part) {
      for (BVertex b : h.edge(e).b) b_count_[b] += sign;
    }
  }
}

void AlternatingForest::PushLayer(const BipartiteHypergraph& h, Layer layer) {
  Count(h, layer, +1);
  layers_.push_back(std::move(layer));
}

void AlternatingForest::PopLayer(const BipartiteHypergraph& h) {
  if (depth() == 0) throw std::logic_error("PopLayer on an empty forest");
  Count(h, layers_.back(), -1);
  layers_.pop_back();
}

void AlternatingForest::ReplaceTop(const BipartiteHypergraph& h, Layer layer) {
  PopLayer(h);
  PushLayer(h, std::move(layer));
}

void AlternatingForest::Match(const BipartiteHypergraph& h, EdgeId e) {
  const Hyperedge& edge = h.edge(e);
  if (matched_at_[edge.a] != kNone) {
    throw std::logic_error("Match: A-vertex already matched");
  }
  for (BVertex b : edge.b) {
    if (owner_[b] != kNone) throw std::logic_error("Match: B-vertex taken");
  }
  matched_at_[edge.a] = e;
  for (BVertex b : edge.b) owner_[b] = e;
  if (unmatched_[edge.a]) {
    unmatched_[edge.a] = 0;
    --num_unmatched_;
  }
  ++matching_size_;
}

void AlternatingForest::Unmatch(const BipartiteHypergraph& h, EdgeId f,
                                int t) {
  const Hyperedge& edge = h.edge(f);
  if (matched_at_[edge.a] != f) throw std::logic_error("Unmatch: not in M");
  matched_at_[edge.a] = kNone;
  for (BVertex b : edge.b) owner_[b] = kNone;
  --matching_size_;
  if (t >= 1) {
    auto& y = layers_.at(t).y;
    auto it = std::lower_bound(y.begin(), y.end(), f);
    if (it == y.end() || *it != f) throw std::logic_error("Unmatch: not in Y_t");
    y.erase(it);
    for (BVertex b : edge.b) --b_count_[b];
  } else {
    unmatched_[edge.a] = 1;
    ++num_unmatched_;
  }
}

std::string AlternatingForest::Dump() const {
  std::ostringstream out;
  out << "M: " << IdList(matching()) << "\n";
  out << "L0 Y: ";
  bool first = true;
  for (AVertex a : unmatched()) {
    out << (first ? "" : " ") << "a" << a;
    first = false;
  }
  out << "\n";
  for (int t = 1; t <= depth(); ++t) {
    out << "L" << t << " X: " << IdList(layers_[t].x) << "\n";
    out << "L" << t << " Y: " << IdList(layers_[t].y) << "\n";
  }
  return out.str();
}

namespace {

// B(seed) as a dense mask; empty when the seed is empty.
std::vector<char> SeedMask(const BipartiteHypergraph& h,
                           const AlternatingForest& forest,
                           const LayerSeed& seed) {
  std::vector<char> mask;
  if (seed.x.empty() && seed.y.empty()) return mask;
  mask.assign(forest.num_b(), 0);
  for (const auto* part : {&seed.x, &seed.y}) {
    for (EdgeId e : *part) {
      for (BVertex b : h.edge(e).b) mask[b] = 1;
    }
  }
  return mask;
}

bool AddableWithMask(const BipartiteHypergraph& h,
                     const AlternatingForest& forest, const LayerSeed& seed,
                     const std::vector<char>& mask, EdgeId e, int delta,
                     bool immediately) {
  const Hyperedge& edge = h.edge(e);
  if (forest.matched_at(edge.a) == e) return false;
  auto at_a = std::count_if(seed.x.begin(), seed.x.end(),
                            [&](EdgeId x) { return h.edge(x).a == edge.a; });
  if (at_a >= delta) return false;
  for (BVertex b : edge.b) {
    if (forest.in_forest(b)) return false;
    if (!mask.empty() && mask[b]) return false;
    if (immediately && forest.owner(b) != kNone) return false;
  }
  return true;
}

}  // namespace

bool IsAddable(const BipartiteHypergraph& h, const AlternatingForest& forest,
               const LayerSeed& seed, EdgeId e, int delta) {
  return AddableWithMask(h, forest, seed, SeedMask(h, forest, seed), e, delta,
                         false);
}

bool IsImmediatelyAddable(const BipartiteHypergraph& h,
                          const AlternatingForest& forest,
                          const LayerSeed& seed, EdgeId e, int delta) {
  return AddableWithMask(h, forest, seed, SeedMask(h, forest, seed), e, delta,
                         true);
}

std::optional<EdgeId> AddableEdge(const BipartiteHypergraph& h,
                                  const AlternatingForest& forest,
                                  const LayerSeed& seed, AVertex a,
                                  const EngineConfig& cfg, bool immediately) {
  if (a < 0 || a >= h.num_a()) throw std::out_of_range("A-vertex");
  std::vector<char> mask = SeedMask(h, forest, seed);
  int r_prime = cfg.oracle.rank_limit > 0 ? cfg.oracle.rank_limit
                                          : h.rank_bound();
  for (EdgeId e : h.incident(a)) {
    if (static_cast<int>(h.edge(e).b.size()) > r_prime) continue;
    if (AddableWithMask(h, forest, seed, mask, e, cfg.delta, immediately)) {
      return e;
    }
  }
  return std::nullopt;
}

Layer BuildLayer(const AlternatingForest& forest, const LayerSeed& seed,
                 HalfLayerOracle& oracle, const EngineConfig& cfg, int top) {
  const BipartiteHypergraph& h = oracle.hypergraph();
  if (top < 0) top = forest.depth();
  if (top > forest.depth() || top < forest.depth() - 1) {
    throw std::invalid_argument("BuildLayer: bad top layer");
  }
  HalfLayerState state;
  state.active_a.assign(forest.num_a(), 0);
  for (AVertex a : forest.ActiveA(h, top)) state.active_a[a] = 1;
  state.forbidden_b.assign(forest.num_b(), 0);
  for (BVertex b = 0; b < forest.num_b(); ++b) {
    state.forbidden_b[b] = forest.in_forest(b) ? 1 : 0;
  }
  for (const auto* part : {&seed.x, &seed.y}) {
    for (EdgeId e : *part) {
      for (BVertex b : h.edge(e).b) state.forbidden_b[b] = 1;
    }
  }
  state.matching = forest.matching();
  state.delta = cfg.delta;
  if (!seed.x.empty()) {
    state.degree_used.assign(forest.num_a(), 0);
    for (EdgeId e : seed.x) ++state.degree_used[h.edge(e).a];
  }

  Layer built = oracle.Build(state);
  Layer out = seed;
  out.x.insert(out.x.end(), built.x.begin(), built.x.end());
  out.y.insert(out.y.end(), built.y.begin(), built.y.end());
  SortUnique(out.x);
  SortUnique(out.y);
  return out;
}

std::string ToString(TraceEvent event) {
  switch (event) {
    case TraceEvent::kGrow: return "grow";
    case TraceEvent::kSwap: return "swap";
    case TraceEvent::kSuperpose: return "superpose";
    case TraceEvent::kCollapse: return "collapse";
  }
  return "?";
}

std::string FormatTraceLine(std::int64_t iter, int depth, int matched,
                            std::uint64_t signature_hash, TraceEvent event) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(signature_hash));
  std::ostringstream out;
  out << iter << ' ' << depth << ' ' << matched << ' ' << hash << ' '
      << ToString(event);
  return out.str();
}

CollapseOutcome CollapseForest(AlternatingForest& forest,
                               HalfLayerOracle& oracle,
                               const EngineConfig& cfg) {
  const BipartiteHypergraph& h = oracle.hypergraph();
  CollapseOutcome outcome;
  const int matched_before = forest.matching_size();
  std::vector<EdgeId> witness(forest.num_a(), kNone);

  while (forest.depth() >= 1) {
    const int l = forest.depth();
    const Layer& top = forest.layer(l);
    std::int64_t addable = 0;
    std::vector<AVertex> touched;
    for (EdgeId e : top.x) {
      const Hyperedge& edge = h.edge(e);
      bool free = std::none_of(edge.b.begin(), edge.b.end(), [&](BVertex b) {
        return forest.owner(b) != kNone;
      });
      if (!free) continue;
      ++addable;
      if (witness[edge.a] == kNone) {
        witness[edge.a] = e;
        touched.push_back(edge.a);
      }
    }
    if (!Exceeds(addable, cfg.mu, static_cast<std::int64_t>(top.x.size()))) {
      for (AVertex a : touched) witness[a] = kNone;
      break;
    }
    ++outcome.collapses;

    if (l == 1) {
      for (AVertex a : forest.unmatched()) {
        if (witness[a] == kNone) continue;
        forest.Match(h, witness[a]);
        ++outcome.swapped;
      }
    } else {
      const std::vector<EdgeId> below = forest.layer(l - 1).y;
      for (EdgeId f : below) {
        AVertex a = h.edge(f).a;
        if (witness[a] == kNone) continue;
        forest.Unmatch(h, f, l - 1);
        forest.Match(h, witness[a]);
        ++outcome.swapped;
      }
    }
    for (AVertex a : touched) witness[a] = kNone;
    forest.PopLayer(h);

    if (l >= 2) {
      LayerSeed seed = forest.layer(l - 1);
      Layer grown = BuildLayer(forest, seed, oracle, cfg, l - 2);
      ++outcome.superpose_attempts;
      std::int64_t den = cfg.mu.denominator();
      std::int64_t num = cfg.mu.numerator();
      if (static_cast<std::int64_t>(grown.x.size()) * den >=
          (den + num) * static_cast<std::int64_t>(seed.x.size())) {
        forest.ReplaceTop(h, std::move(grown));
        ++outcome.superpose_kept;
      }
    }
  }
  outcome.matching_grew = forest.matching_size() > matched_before;
  return outcome;
}

Signature ComputeSignature(const AlternatingForest& forest) {
  SignatureCalculator calc;
  return calc.Compute(forest.LayerSizes());
}

std::optional<std::string> CheckForest(const BipartiteHypergraph& h,
                                       const AlternatingForest& forest,
                                       const EngineConfig& cfg) {
  auto fail = [](const std::string& msg) {
    return std::optional<std::string>(msg);
  };
  Matching m = forest.matching();
  if (!IsMatching(h, m)) return fail("M is not a matching");
  if (static_cast<int>(m.size()) != forest.matching_size()) {
    return fail("matching size out of sync");
  }
  std::vector<EdgeId> owner(forest.num_b(), kNone);
  for (EdgeId e : m) {
    for (BVertex b : h.edge(e).b) owner[b] = e;
  }
  for (BVertex b = 0; b < forest.num_b(); ++b) {
    if (owner[b] != forest.owner(b)) return fail("B-owner index out of sync");
  }
  int unmatched = 0;
  for (AVertex a = 0; a < forest.num_a(); ++a) {
    bool free = forest.matched_at(a) == kNone;
    if (free != forest.is_unmatched(a)) return fail("L0 differs from A \\ A(M)");
    unmatched += free;
  }
  if (unmatched != forest.num_unmatched()) return fail("L0 size out of sync");

  std::vector<int> count(forest.num_b(), 0);
  std::vector<char> covered(forest.num_b(), 0);
  for (int t = 1; t <= forest.depth(); ++t) {
    const Layer& layer = forest.layer(t);
    if (!std::is_sorted(layer.x.begin(), layer.x.end()) ||
        !std::is_sorted(layer.y.begin(), layer.y.end())) {
      return fail("layer " + std::to_string(t) + " not sorted");
    }
    HalfLayerState state;
    state.active_a.assign(forest.num_a(), 0);
    for (AVertex a : forest.ActiveA(h, t - 1)) state.active_a[a] = 1;
    state.forbidden_b = covered;
    state.matching = m;
    state.delta = cfg.delta;
    if (!IsHalfLayer(h, layer.x, state)) {
      return fail("X_" + std::to_string(t) + " is not a half layer");
    }
    if (BlockingSet(h, layer.x, m) != layer.y) {
      return fail("Y_" + std::to_string(t) + " is not the blocking set");
    }
    for (const auto* part : {&layer.x, &layer.y}) {
      for (EdgeId e : *part) {
        for (BVertex b : h.edge(e).b) ++count[b];
      }
    }
    // Y edges of one layer may share nothing with earlier layers either.
    for (EdgeId f : layer.y) {
      for (BVertex b : h.edge(f).b) {
        if (covered[b]) {
          return fail("Y_" + std::to_string(t) + " meets an earlier layer");
        }
      }
    }
    for (const auto* part : {&layer.x, &layer.y}) {
      for (EdgeId e : *part) {
        for (BVertex b : h.edge(e).b) covered[b] = 1;
      }
    }
    std::int64_t addable = 0;
    for (EdgeId e : layer.x) {
      const auto& b = h.edge(e).b;
      if (std::none_of(b.begin(), b.end(),
                       [&](BVertex v) { return owner[v] != kNone; })) {
        ++addable;
      }
    }
    if (Exceeds(addable, cfg.mu, static_cast<std::int64_t>(layer.x.size()))) {
      return fail("layer " + std::to_string(t) + " is collapsible");
    }
  }
  for (BVertex b = 0; b < forest.num_b(); ++b) {
    if ((count[b] > 0) != forest.in_forest(b)) {
      return fail("forest B-count out of sync");
    }
  }
  return std::nullopt;
}

MatchingEngine::MatchingEngine(HalfLayerOracle& oracle, EngineConfig cfg)
    : oracle_(oracle), cfg_(std::move(cfg)) {
  ValidateConfig(cfg_);
  const BipartiteHypergraph& h = oracle_.hypergraph();
  cap_ = cfg_.iteration_cap > 0 ? cfg_.iteration_cap
                                : DefaultIterationCap(h.num_a(), cfg_.delta);
  forest_ = AlternatingForest(h, Matching{});
}

void MatchingEngine::Observe() {
  const BipartiteHypergraph& h = oracle_.hypergraph();
  if (auto breach = CheckForest(h, forest_, cfg_)) {
    throw InvariantError(*breach + "\n" + forest_.Dump());
  }
  ++stats_.observations;
  auto sizes = forest_.LayerSizes();
  Signature sig = signatures_.Compute(sizes);
  if (last_signature_ && !(sig < *last_signature_)) {
    ++stats_.signature_violations;
  }
  last_signature_ = sig;
  std::int64_t den = cfg_.mu.denominator();
  std::int64_t num = cfg_.mu.numerator();
  std::int64_t y_below = sizes[0].second;
  for (std::size_t t = 1; t < sizes.size(); ++t) {
    auto [x, y] = sizes[t];
    if (y * den < (den - num) * x) ++stats_.ratio_violations;
    if (10 * x <= static_cast<std::int64_t>(cfg_.delta) * y_below) {
      ++stats_.growth_violations;
    }
    y_below += y;
  }
  double lhs = forest_.depth() * std::log2(cfg_.delta);
  double rhs = 9.0 * std::log2(std::max(h.num_a(), 1));
  if (lhs > rhs + 1e-9) ++stats_.depth_violations;
}

TraceEvent MatchingEngine::Step() {
  const BipartiteHypergraph& h = oracle_.hypergraph();
  if (cfg_.strict_mode) Observe();
  if (stats_.iterations >= cap_) {
    throw NoProgressError(
        "no perfect matching found within " + std::to_string(cap_) +
            " iterations",
        signatures_.Compute(forest_.LayerSizes()), stats_.iterations);
  }
  ++stats_.iterations;

  ++stats_.oracle_calls;
  Layer layer = BuildLayer(forest_, LayerSeed{}, oracle_, cfg_);
  if (layer.x.empty()) {
    // Nothing new can ever be reached from here: the next layer would be
    // built from the same state.
    throw NoProgressError("stalled: new layer is empty",
                          signatures_.Compute(forest_.LayerSizes()),
                          stats_.iterations);
  }
  forest_.PushLayer(h, std::move(layer));
  stats_.max_depth = std::max(stats_.max_depth, forest_.depth());

  CollapseOutcome outcome = CollapseForest(forest_, oracle_, cfg_);
  stats_.collapses += outcome.collapses;
  stats_.swapped_edges += outcome.swapped;
  stats_.superpose_attempts += outcome.superpose_attempts;
  stats_.superpose_kept += outcome.superpose_kept;
  stats_.oracle_calls += outcome.superpose_attempts;

  TraceEvent event = TraceEvent::kGrow;
  if (outcome.matching_grew) {
    event = TraceEvent::kCollapse;
  } else if (outcome.superpose_kept > 0) {
    event = TraceEvent::kSuperpose;
  } else if (outcome.collapses > 0) {
    event = TraceEvent::kSwap;
  }

  if (cfg_.trace) {
    Signature sig = signatures_.Compute(forest_.LayerSizes());
    *cfg_.trace << FormatTraceLine(stats_.iterations, forest_.depth(),
                                   forest_.matching_size(), sig.Hash(), event)
                << '\n';
  }
  return event;
}

MatchingResult MatchingEngine::Run() {
  while (!done()) {
    Step();
  }
  if (cfg_.strict_mode) {
    if (auto breach = CheckForest(oracle_.hypergraph(), forest_, cfg_)) {
      throw InvariantError(*breach + "\n" + forest_.Dump());
    }
  }
  return {forest_.matching(), stats_};
}

MatchingResult HypergraphMatching(const BipartiteHypergraph& h,
                                  const EngineConfig& cfg) {
  if (auto err = Validate(h)) throw InputError(*err);
  auto oracle = MakeExplicitOracle(h, cfg.oracle);
  MatchingEngine engine(*oracle, cfg);
  return engine.Run();
}

}  // namespace hyperroute
