#include "hyperroute/hypergraph.h"

#include <algorithm>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "corpus.h"
#include "oracles.h"

namespace hyperroute {
namespace {

// tau by trying every subset of B(E_S), smallest first.
int SubsetTau(const BipartiteHypergraph& h, const std::vector<AVertex>& s) {
  std::vector<BVertex> universe;
  std::vector<const Hyperedge*> edges;
  for (AVertex a : s) {
    for (EdgeId e : h.incident(a)) {
      edges.push_back(&h.edge(e));
      universe.insert(universe.end(), h.edge(e).b.begin(), h.edge(e).b.end());
    }
  }
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  const int u = static_cast<int>(universe.size());
  int best = u;
  for (std::uint32_t mask = 0; mask < (1u << u); ++mask) {
    int size = __builtin_popcount(mask);
    if (size >= best) continue;
    bool hits_all = std::all_of(edges.begin(), edges.end(), [&](const Hyperedge* e) {
      return std::any_of(e->b.begin(), e->b.end(), [&](BVertex b) {
        int i = static_cast<int>(std::lower_bound(universe.begin(), universe.end(), b) -
                                 universe.begin());
        return (mask >> i & 1) != 0;
      });
    });
    if (hits_all) best = size;
  }
  return edges.empty() ? 0 : best;
}

bool SubsetHaxell(const BipartiteHypergraph& h, Rational phi) {
  for (std::uint32_t mask = 1; mask < (1u << h.num_a()); ++mask) {
    std::vector<AVertex> s;
    for (int a = 0; a < h.num_a(); ++a) {
      if (mask >> a & 1) s.push_back(a);
    }
    if (Rational(SubsetTau(h, s)) < phi * static_cast<std::int64_t>(s.size())) {
      return false;
    }
  }
  return true;
}

TEST(Validate, MinimalInstanceIsValid) {
  BipartiteHypergraph h(2, 3, 2);
  h.AddEdge(0, {0});
  h.AddEdge(1, {1, 2});
  EXPECT_FALSE(Validate(h).has_value());
}

TEST(Validate, EmptyBPart) {
  BipartiteHypergraph h(1, 2, 2);
  h.AddEdge(0, {});
  auto v = Validate(h);
  ASSERT_TRUE(v.has_value());
  EXPECT_NE(v->find("empty B-part"), std::string::npos);
}

TEST(Validate, RankAboveBound) {
  BipartiteHypergraph h(1, 3, 1);
  h.AddEdge(0, {0, 1});
  auto v = Validate(h);
  ASSERT_TRUE(v.has_value());
  EXPECT_NE(v->find("rank exceeds bound"), std::string::npos);
}

TEST(Validate, OutOfRangeAndRepeatedB) {
  BipartiteHypergraph h(1, 2, 3);
  h.AddEdge(0, {0, 5});
  EXPECT_NE(Validate(h)->find("out of range"), std::string::npos);
  BipartiteHypergraph g(1, 2, 3);
  g.AddEdge(0, {1, 1});
  EXPECT_NE(Validate(g)->find("repeated"), std::string::npos);
}

TEST(PerfectMatching, SingleEdge) {
  BipartiteHypergraph h(1, 1, 1);
  h.AddEdge(0, {0});
  std::vector<EdgeId> m{0};
  EXPECT_TRUE(IsPerfectMatching(h, m));
}

TEST(PerfectMatching, CollisionInB) {
  BipartiteHypergraph h(2, 1, 1);
  h.AddEdge(0, {0});
  h.AddEdge(1, {0});
  std::vector<EdgeId> m{0, 1};
  EXPECT_FALSE(IsMatching(h, m));
  EXPECT_FALSE(IsPerfectMatching(h, m));
}

TEST(PerfectMatching, ValidButNotPerfect) {
  BipartiteHypergraph h(2, 2, 1);
  h.AddEdge(0, {0});
  h.AddEdge(1, {1});
  std::vector<EdgeId> m{0};
  EXPECT_TRUE(IsMatching(h, m));
  EXPECT_FALSE(IsPerfectMatching(h, m));
}

TEST(PerfectMatching, UnknownIdThrows) {
  BipartiteHypergraph h(1, 1, 1);
  h.AddEdge(0, {0});
  std::vector<EdgeId> m{3};
  EXPECT_THROW(IsMatching(h, m), InputError);
}

TEST(BlockingEdges, Cases) {
  BipartiteHypergraph h(3, 4, 2);
  EdgeId m0 = h.AddEdge(0, {1, 2});
  EdgeId e1 = h.AddEdge(1, {0, 1});
  std::vector<EdgeId> m{m0};
  EXPECT_EQ(BlockingEdges(h, e1, m), std::vector<EdgeId>{m0});

  EdgeId far = h.AddEdge(1, {3});
  EXPECT_TRUE(BlockingEdges(h, far, m).empty());

  BipartiteHypergraph g(3, 4, 2);
  EdgeId f0 = g.AddEdge(0, {0});
  EdgeId f1 = g.AddEdge(1, {3});
  EdgeId e = g.AddEdge(2, {0, 3});
  std::vector<EdgeId> both{f0, f1};
  EXPECT_EQ(BlockingEdges(g, e, both), both);
}

TEST(BlockingEdges, IgnoresSharedA) {
  BipartiteHypergraph h(1, 2, 1);
  EdgeId f = h.AddEdge(0, {0});
  EdgeId e = h.AddEdge(0, {1});
  std::vector<EdgeId> m{f};
  EXPECT_TRUE(BlockingEdges(h, e, m).empty());
}

TEST(Tau, DisjointEdgesNeedTwo) {
  BipartiteHypergraph h(1, 2, 1);
  h.AddEdge(0, {0});
  h.AddEdge(0, {1});
  std::vector<AVertex> s{0};
  EXPECT_EQ(Tau(h, s), 2);
}

TEST(Tau, NoEdgesIsZero) {
  BipartiteHypergraph h(2, 2, 1);
  h.AddEdge(1, {0});
  std::vector<AVertex> s{0};
  EXPECT_EQ(Tau(h, s), 0);
}

TEST(Tau, CommonVertexHitsAll) {
  BipartiteHypergraph h(1, 4, 2);
  h.AddEdge(0, {0, 1});
  h.AddEdge(0, {0, 2});
  h.AddEdge(0, {0, 3});
  std::vector<AVertex> s{0};
  EXPECT_EQ(Tau(h, s), 1);
  EXPECT_EQ(SubsetTau(h, s), 1);
}

TEST(Tau, CapExceeded) {
  BipartiteHypergraph h(1, 30, 1);
  for (int b = 0; b < 30; ++b) h.AddEdge(0, {b});
  std::vector<AVertex> s{0};
  EXPECT_THROW(Tau(h, s), CapExceeded);
  ExactCaps caps;
  caps.tau_b = 30;
  EXPECT_EQ(Tau(h, s, caps), 30);
}

TEST(Tau, AgreesWithSubsetEnumeration) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    corpus::RandomSpec spec{4, 12, 1, 4, 1, 3};
    BipartiteHypergraph h = corpus::RandomHypergraph(rng, spec);
    for (std::uint32_t mask = 1; mask < 16; ++mask) {
      std::vector<AVertex> s;
      for (int a = 0; a < 4; ++a) {
        if (mask >> a & 1) s.push_back(a);
      }
      int tau = Tau(h, s);
      ASSERT_EQ(tau, SubsetTau(h, s));
      EXPECT_TRUE(TauAtLeast(h, s, tau));
      EXPECT_FALSE(TauAtLeast(h, s, tau + 1));
    }
  }
}

TEST(Tau, MonotoneInS) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    BipartiteHypergraph h = corpus::RandomHypergraph(rng, {5, 14, 0, 3, 1, 3});
    for (std::uint32_t mask = 1; mask < 32; ++mask) {
      for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
        std::vector<AVertex> s, big;
        for (int a = 0; a < 5; ++a) {
          if (sub >> a & 1) s.push_back(a);
          if (mask >> a & 1) big.push_back(a);
        }
        ASSERT_LE(Tau(h, s), Tau(h, big));
      }
    }
  }
}

TEST(Haxell, SingleEdge) {
  BipartiteHypergraph h(1, 1, 1);
  h.AddEdge(0, {0});
  EXPECT_TRUE(VerifyStrongHaxell(h, Rational(1)));
}

TEST(Haxell, IsolatedVertexFails) {
  BipartiteHypergraph h(2, 1, 1);
  h.AddEdge(1, {0});
  HaxellReport report = CheckStrongHaxell(h, Rational(1, 2));
  EXPECT_FALSE(report.holds);
  EXPECT_EQ(report.witness, std::vector<AVertex>{0});
  EXPECT_EQ(report.witness_tau, 0);
}

TEST(Haxell, AgreesWithIndependentChecker) {
  std::mt19937_64 rng(13);
  int holds = 0;
  for (int trial = 0; trial < 200; ++trial) {
    BipartiteHypergraph h = corpus::RandomHypergraph(rng, {4, 12, 1, 5, 1, 2});
    for (Rational phi : {Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)}) {
      bool fast = VerifyStrongHaxell(h, phi);
      ASSERT_EQ(fast, SubsetHaxell(h, phi)) << "trial " << trial;
      holds += fast;
    }
  }
  EXPECT_GT(holds, 0);
}

TEST(Haxell, ExactBoundary) {
  // tau({a0}) = 2, so phi = 2 holds and anything above fails.
  BipartiteHypergraph h(1, 2, 1);
  h.AddEdge(0, {0});
  h.AddEdge(0, {1});
  EXPECT_TRUE(VerifyStrongHaxell(h, Rational(2)));
  EXPECT_FALSE(VerifyStrongHaxell(h, Rational(2001, 1000)));
}

TEST(Haxell, CapExceeded) {
  BipartiteHypergraph h(17, 17, 1);
  for (int a = 0; a < 17; ++a) h.AddEdge(a, {a});
  EXPECT_THROW(VerifyStrongHaxell(h, Rational(1)), CapExceeded);
}

TEST(BruteForce, DisjointEdges) {
  BipartiteHypergraph h(3, 3, 1);
  for (int a = 0; a < 3; ++a) h.AddEdge(a, {a});
  auto m = BruteForcePerfectMatching(h);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(*m, (Matching{0, 1, 2}));
}

TEST(BruteForce, SharedOnlyVertex) {
  BipartiteHypergraph h(2, 1, 1);
  h.AddEdge(0, {0});
  h.AddEdge(1, {0});
  EXPECT_FALSE(BruteForcePerfectMatching(h).has_value());
}

TEST(BruteForce, AgreesWithSubsetEnumeration) {
  std::mt19937_64 rng(14);
  int exists = 0;
  for (int trial = 0; trial < 300; ++trial) {
    BipartiteHypergraph h = corpus::RandomHypergraph(rng, {4, 8, 1, 4, 1, 2});
    auto fast = BruteForcePerfectMatching(h);
    auto slow = oracles::ExhaustiveMatching(h);
    ASSERT_EQ(fast.has_value(), slow.has_value()) << "trial " << trial;
    if (fast) {
      EXPECT_TRUE(IsPerfectMatching(h, *fast));
      ++exists;
    }
  }
  EXPECT_GT(exists, 0);
  EXPECT_LT(exists, 300);
}

TEST(BruteForce, StrongHaxellImpliesPerfectMatching) {
  for (const auto& entry : corpus::HaxellCorpus(120, 15)) {
    EXPECT_TRUE(BruteForcePerfectMatching(entry.h).has_value());
  }
}

TEST(RankRestricted, KeepsLowRankEdges) {
  BipartiteHypergraph h(1, 4, 3);
  h.AddEdge(0, {0});
  h.AddEdge(0, {1, 2, 3});
  h.AddEdge(0, {2, 3});
  BipartiteHypergraph low = RankRestricted(h, 2);
  ASSERT_EQ(low.num_edges(), 2);
  EXPECT_EQ(low.edge(1).b, (std::vector<BVertex>{2, 3}));
  EXPECT_EQ(low.rank_bound(), 2);
}

TEST(Io, RoundTrip) {
  std::mt19937_64 rng(16);
  BipartiteHypergraph h = corpus::RandomHypergraph(rng, {5, 9, 1, 3, 1, 3});
  std::stringstream buf;
  WriteHypergraph(buf, h);
  BipartiteHypergraph back = ReadHypergraph(buf);
  ASSERT_EQ(back.num_edges(), h.num_edges());
  for (EdgeId e = 0; e < h.num_edges(); ++e) {
    EXPECT_EQ(back.edge(e).a, h.edge(e).a);
    EXPECT_EQ(back.edge(e).b, h.edge(e).b);
  }
  std::stringstream text;
  WriteHypergraph(text, back);
  std::stringstream again;
  WriteHypergraph(again, h);
  EXPECT_EQ(text.str(), again.str());
}

TEST(Io, RejectsMalformedInput) {
  std::istringstream truncated("2 2 2 1\n0 1 0\n");
  EXPECT_THROW(ReadHypergraph(truncated), InputError);
  std::istringstream bad_a("1 2 1 1\n4 1 0\n");
  EXPECT_THROW(ReadHypergraph(bad_a), InputError);
  std::istringstream bad_rank("1 3 1 1\n0 2 0 1\n");
  EXPECT_THROW(ReadHypergraph(bad_rank), InputError);
  std::istringstream bad_matching("0\nx\n");
  EXPECT_THROW(ReadMatching(bad_matching), InputError);
}

TEST(Io, MatchingRoundTrip) {
  Matching m{4, 0, 7};
  std::stringstream buf;
  WriteMatching(buf, m);
  EXPECT_EQ(ReadMatching(buf), m);
}

}  // namespace
}  // namespace hyperroute
