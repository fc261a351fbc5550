#ifndef HYPERROUTE_TESTS_CORPUS_H_
#define HYPERROUTE_TESTS_CORPUS_H_

// Seeded instance generators shared by the unit tests and the acceptance
// binary.

#include <cstdint>
#include <random>
#include <vector>

#include "hyperroute/common.h"
#include "hyperroute/graph.h"
#include "hyperroute/hypergraph.h"
#include "hyperroute/routing.h"

namespace hyperroute::corpus {

struct RandomSpec {
  int num_a = 4;
  int num_b = 12;
  int min_edges = 1;  // per A-vertex
  int max_edges = 3;
  int min_rank = 1;
  int max_rank = 2;
};

// Edges per A-vertex and their B-sets drawn uniformly; rank bound max_rank.
BipartiteHypergraph RandomHypergraph(std::mt19937_64& rng,
                                     const RandomSpec& spec);

struct Entry {
  BipartiteHypergraph h;
  int r = 1;        // rank bound of h
  Rational phi{0};  // Haxell strength it was verified at (0: unverified)
};

// Instances with |A| <= 8, |B| <= 20 that satisfy the strong Haxell
// condition at phi = 4 r^2. Within that size limit only r = 1 with |A| <= 5
// and r = 2 with |A| = 1 can qualify, and those are what it draws.
std::vector<Entry> HaxellCorpus(int count, std::uint64_t seed);

// Unconstrained random instances (r <= 3, |A| <= 8, |B| <= 20).
std::vector<Entry> RandomCorpus(int count, std::uint64_t seed);

// Rank-1 instances verified at phi = 24 alpha delta for the throttled
// oracle: |A| in {1, 2, 3}, and each A-vertex owns enough private B-vertices.
std::vector<Entry> ApproxCorpus(int count, std::uint64_t seed,
                                const Rational& phi);

// Connected G(n, p) by rejection.
MultiGraph RandomConnectedGraph(std::mt19937_64& rng, int n, double p);

// `count` demands with s != t, each vertex in at most k of them.
std::vector<Demand> RandomDemands(std::mt19937_64& rng, int n, int count,
                                  int k);

}  // namespace hyperroute::corpus

#endif  // HYPERROUTE_TESTS_CORPUS_H_
