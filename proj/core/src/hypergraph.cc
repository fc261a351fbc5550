#include "hyperroute/hypergraph.h"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace hyperroute {

BipartiteHypergraph::BipartiteHypergraph(int num_a, int num_b, int rank_bound)
    : num_a_(num_a), num_b_(num_b), rank_bound_(rank_bound) {
  if (num_a < 0 || num_b < 0 || rank_bound < 0) {
    throw InputError("hypergraph sizes must be non-negative");
  }
  incident_.resize(num_a);
}

EdgeId BipartiteHypergraph::AddEdge(AVertex a, std::vector<BVertex> b) {
  if (a < 0 || a >= num_a_) {
    throw InputError("A-vertex " + std::to_string(a) + " out of range");
  }
  std::sort(b.begin(), b.end());
  EdgeId id = num_edges();
  volume_ += 1 + static_cast<std::int64_t>(b.size());
  edges_.push_back({a, std::move(b)});
  incident_[a].push_back(id);
  return id;
}

int BipartiteHypergraph::max_rank() const {
  std::size_t best = 0;
  for (const auto& e : edges_) best = std::max(best, e.b.size());
  return static_cast<int>(best);
}

std::optional<std::string> Validate(const BipartiteHypergraph& h) {
  for (EdgeId id = 0; id < h.num_edges(); ++id) {
    const Hyperedge& e = h.edge(id);
    auto fail = [id](const std::string& what) {
      return "edge " + std::to_string(id) + ": " + what;
    };
    if (e.b.empty()) return fail("empty B-part");
    if (static_cast<int>(e.b.size()) > h.rank_bound()) {
      return fail("rank exceeds bound");
    }
    if (e.b.front() < 0 || e.b.back() >= h.num_b()) {
      return fail("B-vertex out of range");
    }
    if (std::adjacent_find(e.b.begin(), e.b.end()) != e.b.end()) {
      return fail("repeated B-vertex");
    }
  }
  return std::nullopt;
}

bool IsMatching(const BipartiteHypergraph& h, std::span<const EdgeId> m) {
  std::vector<char> used_a(h.num_a(), 0);
  std::vector<char> used_b(h.num_b(), 0);
  for (EdgeId id : m) {
    if (!h.valid_id(id)) {
      throw InputError("unknown edge id " + std::to_string(id));
    }
    const Hyperedge& e = h.edge(id);
    if (used_a[e.a]) return false;
    used_a[e.a] = 1;
    for (BVertex b : e.b) {
      if (used_b[b]) return false;
      used_b[b] = 1;
    }
  }
  return true;
}

bool IsPerfectMatching(const BipartiteHypergraph& h,
                       std::span<const EdgeId> m) {
  return IsMatching(h, m) && static_cast<int>(m.size()) == h.num_a();
}

std::vector<EdgeId> BlockingEdges(const BipartiteHypergraph& h, EdgeId e,
                                  std::span<const EdgeId> m) {
  const auto& eb = h.edge(e).b;
  std::vector<EdgeId> out;
  for (EdgeId f : m) {
    const auto& fb = h.edge(f).b;
    // Both sides sorted: linear merge.
    auto i = eb.begin();
    auto j = fb.begin();
    while (i != eb.end() && j != fb.end()) {
      if (*i == *j) {
        out.push_back(f);
        break;
      }
      if (*i < *j) ++i; else ++j;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<EdgeId> EdgesOf(const BipartiteHypergraph& h,
                            std::span<const AVertex> s) {
  std::vector<EdgeId> out;
  for (AVertex a : s) {
    auto inc = h.incident(a);
    out.insert(out.end(), inc.begin(), inc.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Minimum hitting set over a small universe by branching on an uncovered set
// and trying each of its elements.
class HittingSetSearch {
 public:
  // `sets` over universe [0, universe).
  HittingSetSearch(std::vector<std::vector<int>> sets, int universe)
      : sets_(std::move(sets)), chosen_(universe, 0) {
    ReduceSupersets();
  }

  // Smallest cover size strictly below `limit`, or `limit` when none exists.
  int Solve(int limit) {
    best_ = limit;
    Recurse(0);
    return best_;
  }

 private:
  void ReduceSupersets() {
    std::sort(sets_.begin(), sets_.end(), [](const auto& x, const auto& y) {
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
    std::vector<std::vector<int>> kept;
    for (auto& s : sets_) {
      bool dominated = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
        return std::includes(s.begin(), s.end(), k.begin(), k.end());
      });
      if (!dominated) kept.push_back(std::move(s));
    }
    sets_ = std::move(kept);
  }

  bool Covered(const std::vector<int>& s) const {
    return std::any_of(s.begin(), s.end(), [&](int x) { return chosen_[x]; });
  }

  void Recurse(int depth) {
    if (depth >= best_) return;
    // Lower bound: a greedy packing of pairwise-disjoint uncovered sets each
    // needs its own element.
    const std::vector<int>* branch = nullptr;
    int packing = 0;
    packed_.assign(chosen_.size(), 0);
    for (const auto& s : sets_) {
      if (Covered(s)) continue;
      if (branch == nullptr) branch = &s;  // sets_ is sorted by size
      if (std::none_of(s.begin(), s.end(), [&](int x) { return packed_[x]; })) {
        ++packing;
        for (int x : s) packed_[x] = 1;
      }
    }
    if (branch == nullptr) {
      best_ = depth;
      return;
    }
    if (depth + packing >= best_) return;
    for (int x : *branch) {
      chosen_[x] = 1;
      Recurse(depth + 1);
      chosen_[x] = 0;
      if (depth + 1 >= best_) return;
    }
  }

  std::vector<std::vector<int>> sets_;
  std::vector<char> chosen_;
  std::vector<char> packed_;
  int best_ = 0;
};

HittingSetSearch BuildSearch(const BipartiteHypergraph& h,
                             std::span<const AVertex> s, const ExactCaps& caps,
                             int* universe_out) {
  std::vector<EdgeId> ids = EdgesOf(h, s);
  std::vector<BVertex> universe;
  for (EdgeId id : ids) {
    const auto& b = h.edge(id).b;
    universe.insert(universe.end(), b.begin(), b.end());
  }
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  if (static_cast<int>(universe.size()) > caps.tau_b) {
    throw CapExceeded("too large for exact tau: |B(E_S)| = " +
                      std::to_string(universe.size()) + " > " +
                      std::to_string(caps.tau_b));
  }
  std::vector<std::vector<int>> sets;
  sets.reserve(ids.size());
  for (EdgeId id : ids) {
    std::vector<int> local;
    for (BVertex b : h.edge(id).b) {
      local.push_back(static_cast<int>(
          std::lower_bound(universe.begin(), universe.end(), b) -
          universe.begin()));
    }
    sets.push_back(std::move(local));
  }
  *universe_out = static_cast<int>(universe.size());
  return HittingSetSearch(std::move(sets), *universe_out);
}

}  // namespace

int Tau(const BipartiteHypergraph& h, std::span<const AVertex> s,
        const ExactCaps& caps) {
  int universe = 0;
  HittingSetSearch search = BuildSearch(h, s, caps, &universe);
  // The whole universe is always a cover, so universe + 1 is a safe limit.
  return search.Solve(universe + 1);
}

bool TauAtLeast(const BipartiteHypergraph& h, std::span<const AVertex> s,
                int target, const ExactCaps& caps) {
  if (target <= 0) return true;
  int universe = 0;
  HittingSetSearch search = BuildSearch(h, s, caps, &universe);
  // B(E_S) itself is a cover.
  if (universe < target) return false;
  return search.Solve(target) >= target;
}

HaxellReport CheckStrongHaxell(const BipartiteHypergraph& h, Rational phi,
                               const ExactCaps& caps) {
  const int n = h.num_a();
  if (n > caps.haxell_a) {
    throw CapExceeded("too many A-vertices for Haxell enumeration: " +
                      std::to_string(n) + " > " + std::to_string(caps.haxell_a));
  }
  HaxellReport report;
  std::vector<AVertex> s;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    s.clear();
    for (int a = 0; a < n; ++a) {
      if (mask >> a & 1) s.push_back(a);
    }
    Rational need = phi * static_cast<std::int64_t>(s.size());
    std::int64_t target = boost::rational_cast<std::int64_t>(need);
    if (Rational(target) < need) ++target;  // ceil for positive values
    if (target <= 0) continue;
    if (!TauAtLeast(h, s, static_cast<int>(target), caps)) {
      report.holds = false;
      report.witness = s;
      report.witness_tau = Tau(h, s, caps);
      return report;
    }
  }
  return report;
}

bool VerifyStrongHaxell(const BipartiteHypergraph& h, Rational phi,
                        const ExactCaps& caps) {
  return CheckStrongHaxell(h, phi, caps).holds;
}

BipartiteHypergraph RankRestricted(const BipartiteHypergraph& h, int max_rank) {
  BipartiteHypergraph out(h.num_a(), h.num_b(),
                          std::min(h.rank_bound(), max_rank));
  for (const auto& e : h.edges()) {
    if (static_cast<int>(e.b.size()) <= max_rank) out.AddEdge(e.a, e.b);
  }
  return out;
}

namespace {

bool Backtrack(const BipartiteHypergraph& h, AVertex a,
               std::vector<char>& used_b, Matching& chosen) {
  if (a == h.num_a()) return true;
  for (EdgeId id : h.incident(a)) {
    const auto& b = h.edge(id).b;
    if (std::any_of(b.begin(), b.end(), [&](BVertex x) { return used_b[x]; })) {
      continue;
    }
    for (BVertex x : b) used_b[x] = 1;
    chosen.push_back(id);
    if (Backtrack(h, a + 1, used_b, chosen)) return true;
    chosen.pop_back();
    for (BVertex x : b) used_b[x] = 0;
  }
  return false;
}

}  // namespace

std::optional<Matching> BruteForcePerfectMatching(const BipartiteHypergraph& h,
                                                  const ExactCaps& caps) {
  if (h.num_a() > caps.matching_a) {
    throw CapExceeded("too many A-vertices for brute-force matching: " +
                      std::to_string(h.num_a()) + " > " +
                      std::to_string(caps.matching_a));
  }
  std::vector<char> used_b(h.num_b(), 0);
  Matching chosen;
  if (Backtrack(h, 0, used_b, chosen)) return chosen;
  return std::nullopt;
}

namespace {

std::int64_t ReadCount(std::istream& in, const char* what) {
  std::int64_t value = 0;
  if (!(in >> value)) throw InputError(std::string("expected ") + what);
  return value;
}

}  // namespace

BipartiteHypergraph ReadHypergraph(std::istream& in) {
  std::int64_t na = ReadCount(in, "nA");
  std::int64_t nb = ReadCount(in, "nB");
  std::int64_t me = ReadCount(in, "mE");
  std::int64_t r = ReadCount(in, "r");
  if (na < 0 || nb < 0 || me < 0 || r < 1) {
    throw InputError("bad hypergraph header");
  }
  BipartiteHypergraph h(static_cast<int>(na), static_cast<int>(nb),
                        static_cast<int>(r));
  for (std::int64_t i = 0; i < me; ++i) {
    std::int64_t a = ReadCount(in, "A-vertex");
    std::int64_t k = ReadCount(in, "edge size");
    if (a < 0 || a >= na) {
      throw InputError("edge " + std::to_string(i) + ": A-vertex out of range");
    }
    if (k < 0 || k > nb) {
      throw InputError("edge " + std::to_string(i) + ": bad edge size");
    }
    std::vector<BVertex> b(k);
    for (auto& x : b) x = static_cast<BVertex>(ReadCount(in, "B-vertex"));
    h.AddEdge(static_cast<AVertex>(a), std::move(b));
  }
  if (auto violation = Validate(h)) throw InputError(*violation);
  return h;
}

void WriteHypergraph(std::ostream& out, const BipartiteHypergraph& h) {
  out << h.num_a() << ' ' << h.num_b() << ' ' << h.num_edges() << ' '
      << h.rank_bound() << '\n';
  for (const auto& e : h.edges()) {
    out << e.a << ' ' << e.b.size();
    for (BVertex b : e.b) out << ' ' << b;
    out << '\n';
  }
}

Matching ReadMatching(std::istream& in) {
  Matching m;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    EdgeId id;
    if (!(ls >> id)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw InputError("bad matching line: '" + line + "'");
    }
    m.push_back(id);
  }
  return m;
}

void WriteMatching(std::ostream& out, std::span<const EdgeId> m) {
  for (EdgeId id : m) out << id << '\n';
}

}  // namespace hyperroute
