#include <doctest.h>

#include <random>
#include <sstream>

#include "msed/graph.hpp"
#include "oracles.hpp"

using namespace msed;

namespace {

SimilarityGraph two_cliques_bridged() {
  SimilarityGraph g(8);
  for (int base : {0, 4})
    for (int i = base; i < base + 4; ++i)
      for (int j = i + 1; j < base + 4; ++j) g.add_edge(i, j, 1.0);
  g.add_edge(3, 4, 1.0);
  return g;
}

SimilarityGraph random_graph(std::mt19937_64& rng, int max_n) {
  const int n = 3 + static_cast<int>(rng() % (max_n - 2));
  SimilarityGraph g(n);
  bool any = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() % 100 < 40) {
        g.add_edge(i, j, 0.1 + (rng() % 100) / 50.0);
        any = true;
      }
  if (!any) g.add_edge(0, 1, 1.0);
  return g;
}

}  // namespace

TEST_CASE("graph invariants") {
  SimilarityGraph g(3);
  g.add_edge(0, 1, 2.0);
  CHECK(g.total_weight() == doctest::Approx(4.0));  // 2m counts both directions
  CHECK(g.weighted_degree(0) == doctest::Approx(2.0));
  CHECK_THROWS(g.add_edge(1, 1, 1.0));
  CHECK_THROWS(g.add_edge(0, 2, 0.0));
  CHECK_THROWS(g.add_edge(0, 2, -1.0));
}

TEST_CASE("modularity on hand-checked partitions") {
  SUBCASE("two disjoint unit edges, partition by component") {
    SimilarityGraph g(4);
    g.add_edge(0, 1, 1.0);
    g.add_edge(2, 3, 1.0);
    CHECK(modularity(g, {0, 0, 1, 1}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(modularity(g, {0, 0, 0, 0}) == doctest::Approx(0.0).epsilon(1e-12));
    // singleton partition: -sum (k_i/2m)^2
    CHECK(modularity(g, {0, 1, 2, 3}) == doctest::Approx(-0.25).epsilon(1e-12));
  }
  SUBCASE("no edges throws") {
    SimilarityGraph g(2);
    CHECK_THROWS(modularity(g, {0, 1}));
  }
}

TEST_CASE("modularity matches the direct double-sum oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_graph(rng, 8);
    std::vector<int> labels(g.n());
    for (int& l : labels) l = static_cast<int>(rng() % 3);
    CHECK(modularity(g, labels) ==
          doctest::Approx(oracle::modularity_direct(g, labels)).epsilon(1e-9));
  }
}

TEST_CASE("single-pass louvain recovers planted cliques") {
  const auto g = two_cliques_bridged();
  const auto p = louvain_single_pass(g, 1);
  REQUIRE(p.community.size() == 8);
  CHECK(p.n_communities() == 2);
  for (int i = 1; i < 4; ++i) CHECK(p.community[i] == p.community[0]);
  for (int i = 5; i < 8; ++i) CHECK(p.community[i] == p.community[4]);
  CHECK(p.community[0] != p.community[4]);
  // brute-force optimum over all 4140 partitions of 8 vertices agrees
  CHECK(p.modularity_q == doctest::Approx(oracle::best_modularity(g)).epsilon(1e-9));
}

TEST_CASE("louvain merges a single edge") {
  SimilarityGraph g(2);
  g.add_edge(0, 1, 1.0);
  const auto p = louvain_single_pass(g, 3);
  CHECK(p.community[0] == p.community[1]);
  CHECK(p.modularity_q == doctest::Approx(0.0));
}

TEST_CASE("communities never span disconnected components") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    // two random components with an index gap
    SimilarityGraph g(10);
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        if (rng() % 2) g.add_edge(i, j, 1.0);
    for (int i = 5; i < 10; ++i)
      for (int j = i + 1; j < 10; ++j)
        if (rng() % 2) g.add_edge(i, j, 1.0);
    g.add_edge(0, 1, 1.0);
    g.add_edge(5, 6, 1.0);
    const auto p = louvain_single_pass(g, trial);
    for (int i = 0; i < 5; ++i)
      for (int j = 5; j < 10; ++j) CHECK(p.community[i] != p.community[j]);
  }
}

TEST_CASE("louvain properties: fixed point, scale invariance, improvement") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_graph(rng, 8);
    const std::uint64_t seed = rng();
    const auto p = louvain_single_pass(g, seed);

    // never worse than singletons
    std::vector<int> singletons(g.n());
    for (int i = 0; i < g.n(); ++i) singletons[i] = i;
    CHECK(p.modularity_q >= modularity(g, singletons) - 1e-12);

    // reported Q matches an independent evaluation
    CHECK(p.modularity_q == doctest::Approx(modularity(g, p.community)).epsilon(1e-9));

    // scaling all weights leaves the partition unchanged
    SimilarityGraph scaled(g.n());
    for (int i = 0; i < g.n(); ++i)
      for (const auto& [j, w] : g.neighbors(i))
        if (i < j) scaled.add_edge(i, j, w * 17.0);
    CHECK(louvain_single_pass(scaled, seed).community == p.community);

    // determinism per seed
    CHECK(louvain_single_pass(g, seed).community == p.community);
  }
}

TEST_CASE("community ids are contiguous") {
  CHECK(relabel_contiguous({5, 5, 2, 7, 2}) == std::vector<int>{0, 0, 1, 2, 1});
  std::mt19937_64 rng(17);
  const auto g = random_graph(rng, 8);
  const auto p = louvain_single_pass(g, 23);
  const int k = p.n_communities();
  std::vector<bool> seen(k, false);
  for (int c : p.community) {
    REQUIRE(c >= 0);
    REQUIRE(c < k);
    seen[c] = true;
  }
  for (bool s : seen) CHECK(s);
}

TEST_CASE("edge list dump") {
  SimilarityGraph g(3);
  g.add_edge(0, 1, 1.0);
  g.add_edge(0, 2, 1.5);
  std::ostringstream os;
  dump_edge_list(g, os);
  CHECK(os.str() == "0 1 1\n0 2 1.5\n");
}
