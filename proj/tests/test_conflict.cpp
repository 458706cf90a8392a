#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "support/random_instances.hpp"
#include "wnc/conflict.hpp"
#include "wnc/io.hpp"

namespace wnc {
namespace {

const Network& relay() {
  static const Network net = canonical_relay_instance(true).network;
  return net;
}

// a=1, b=2, relay=3; links 1=(1,3) 2=(2,3) 3=(3,1) 4=(3,2)
const Link& link(int index) { return relay().links()[static_cast<std::size_t>(index - 1)]; }

TEST(LinksConflict, SharedRelay) {
  EXPECT_TRUE(links_conflict(relay(), Link{1, 3, 0}, Link{3, 2, 0}));
}

TEST(LinksConflict, BoundaryEquality) {
  // (a,r) vs (b,r): d(b,r) = 1 = rho(b).
  EXPECT_TRUE(links_conflict(relay(), link(1), link(2)));
}

TEST(LinksConflict, FarApartLinksDoNotConflict) {
  const Network net({{1, 0, 0, 1, 1}, {2, 1, 0, 1, 1}, {3, 10, 0, 1, 1}, {4, 11, 0, 1, 1}});
  EXPECT_FALSE(links_conflict(net, Link{1, 2, 0}, Link{3, 4, 0}));
}

TEST(LinksConflict, Symmetric) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Network net = testing::random_instance(rng).network;
    for (const auto& l : net.links())
      for (const auto& l2 : net.links())
        if (l.index != l2.index) {
          EXPECT_EQ(links_conflict(net, l, l2), links_conflict(net, l2, l));
        }
  }
}

TEST(HyperarcsConflict, CodedVersusIncomingLink) {
  EXPECT_TRUE(hyperarcs_conflict(relay(), relay().hyperarcs()[4], relay().hyperarcs()[0]));
}

TEST(HyperarcsConflict, NoConflictingSubLinks) {
  const Network net({{1, 0, 0, 1, 1}, {2, 1, 0, 1, 1}, {3, 0, 1, 1, 1}, {10, 10, 0, 1, 1}, {11, 11, 0, 1, 1}});
  const Hyperarc far{10, {11}, 0};
  EXPECT_FALSE(hyperarcs_conflict(net, Hyperarc{1, {2, 3}, 0}, far));
}

TEST(HyperarcsConflict, SharedTailAlwaysConflicts) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Network net = testing::random_instance(rng).network;
    const auto& arcs = net.hyperarcs();
    for (std::size_t u = 0; u < arcs.size(); ++u)
      for (std::size_t v = u + 1; v < arcs.size(); ++v)
        if (arcs[u].tail == arcs[v].tail) {
          EXPECT_TRUE(hyperarcs_conflict(net, arcs[u], arcs[v]));
        }
  }
}

TEST(BuildConflictGraph, RelayIsComplete) {
  const auto g = build_conflict_graph(relay(), Level::link);
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g.edge_count(), 6u);
  const auto gh = build_conflict_graph(relay(), Level::hyperarc);
  EXPECT_EQ(gh.size(), 5u);
  EXPECT_EQ(gh.edge_count(), 10u);
}

TEST(BuildConflictGraph, DistantLinks) {
  const Network net({{1, 0, 0, 1, 1}, {2, 1, 0, 0.5, 0.5}, {3, 10, 0, 1, 1}, {4, 11, 0, 0.5, 0.5}});
  const auto g = build_conflict_graph(net, Level::link);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(BuildConflictGraph, LinkGraphIsWeightOneSubgraph) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Network net = testing::random_instance(rng).network;
    const auto g = build_conflict_graph(net, Level::link);
    const auto sub = build_conflict_graph(net, Level::hyperarc).weight_one_subgraph();
    ASSERT_EQ(g.size(), sub.size());
    EXPECT_EQ(g.edges(), sub.edges());
    for (std::size_t v = 0; v < g.size(); ++v) {
      EXPECT_EQ(g.vertex(v).index, sub.vertex(v).index);
      EXPECT_EQ(g.vertex(v).sub_links, sub.vertex(v).sub_links);
    }
  }
}

TEST(EnumerateSchedulableSets, RelayCatalog) {
  const auto cat = enumerate_schedulable_sets(build_conflict_graph(relay(), Level::hyperarc));
  ASSERT_EQ(cat.size(), 5u);
  const std::vector<std::vector<int>> expected{{0}, {1}, {2}, {3}, {2, 3}};
  EXPECT_EQ(cat.sublink_sets, expected);
  EXPECT_EQ(cat.incidence(4), (std::vector<std::uint8_t>{0, 0, 1, 1}));
}

TEST(EnumerateSchedulableSets, EdgelessGraph) {
  const auto cat = enumerate_schedulable_sets(ConflictGraph::from_edges(6, {}));
  ASSERT_EQ(cat.size(), 1u);
  EXPECT_EQ(cat.hyperarc_sets[0].size(), 6u);
}

TEST(EnumerateSchedulableSets, Path) {
  const auto cat = enumerate_schedulable_sets(ConflictGraph::from_edges(3, {{0, 1}, {1, 2}}));
  const std::vector<std::vector<int>> expected{{0, 2}, {1}};
  EXPECT_EQ(cat.hyperarc_sets, expected);
  EXPECT_EQ(cat.hyperarc_sets, oracle::brute_force_maximal_independent_sets(3, {{0, 1}, {1, 2}}));
}

TEST(EnumerateSchedulableSets, CapExceeded) {
  EXPECT_THROW(enumerate_schedulable_sets(ConflictGraph::from_edges(25, {})), EnumerationError);
  EXPECT_NO_THROW(enumerate_schedulable_sets(ConflictGraph::from_edges(25, {}), 30));
  EXPECT_THROW(enumerate_schedulable_sets(ConflictGraph::from_edges(3, {}), 65), ValidationError);
}

TEST(EnumerateSchedulableSets, MatchesBruteForce) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> size(0, 10);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    const auto edges = testing::random_graph_edges(rng, n, density(rng));
    const auto cat = enumerate_schedulable_sets(ConflictGraph::from_edges(static_cast<std::size_t>(n), edges));
    EXPECT_EQ(cat.hyperarc_sets, oracle::brute_force_maximal_independent_sets(static_cast<std::size_t>(n), edges));
  }
}

TEST(EnumerateSchedulableSets, SetsAreIndependentAndDownwardClosed) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const auto gh = build_conflict_graph(testing::random_instance(rng).network, Level::hyperarc);
    const auto cat = enumerate_schedulable_sets(gh);
    for (std::size_t k = 0; k < cat.size(); ++k) {
      const auto& set = cat.hyperarc_sets[k];
      EXPECT_TRUE(gh.is_independent(set));
      // Random subsets stay independent.
      for (int s = 0; s < 4; ++s) {
        std::vector<int> subset;
        for (int v : set)
          if (rng() & 1u) subset.push_back(v);
        EXPECT_TRUE(gh.is_independent(subset));
      }
      std::vector<int> expanded;
      for (int v : set)
        for (int a : gh.vertex(static_cast<std::size_t>(v)).sub_links) expanded.push_back(a);
      std::sort(expanded.begin(), expanded.end());
      EXPECT_EQ(expanded, cat.sublink_sets[k]);
    }
  }
}

TEST(ClosedNeighborhoods, Relay) {
  const auto nb = closed_neighborhoods(build_conflict_graph(relay(), Level::link));
  ASSERT_EQ(nb.sets.size(), 4u);
  for (const auto& v : nb.sets) EXPECT_EQ(v, (std::vector<int>{0, 1, 2, 3}));
  EXPECT_EQ(nb.max_degree, 3);
}

TEST(ClosedNeighborhoods, EdgelessAndPath) {
  const auto empty = closed_neighborhoods(ConflictGraph::from_edges(3, {}));
  EXPECT_EQ(empty.sets[1], (std::vector<int>{1}));
  EXPECT_EQ(empty.max_degree, 0);
  const auto path = closed_neighborhoods(ConflictGraph::from_edges(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(path.sets[0], (std::vector<int>{0, 1}));
  EXPECT_EQ(path.sets[1], (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(path.max_degree, 2);
}

TEST(ClosedNeighborhoods, RejectsHyperarcGraph) {
  EXPECT_THROW(closed_neighborhoods(build_conflict_graph(relay(), Level::hyperarc)), ValidationError);
}

TEST(AlphaStar, RelayCodedIsTwo) {
  const auto cat = enumerate_schedulable_sets(build_conflict_graph(relay(), Level::hyperarc));
  const auto nb = closed_neighborhoods(build_conflict_graph(relay(), Level::link));
  EXPECT_EQ(alpha_star(cat, nb), 2);
  EXPECT_LE(alpha_star(cat, nb), nb.max_degree);
}

TEST(AlphaStar, SingletonCatalogIsOne) {
  const Network plain = canonical_relay_instance(false).network;
  const auto g = build_conflict_graph(plain, Level::link);
  EXPECT_EQ(alpha_star(enumerate_schedulable_sets(g), closed_neighborhoods(g)), 1);
}

TEST(AlphaStar, EmptyCatalog) {
  EXPECT_THROW(alpha_star(SchedulableSetCatalog{}, Neighborhoods{}), ValidationError);
}

// A broadcast hyperarc covering every link of a closed neighbourhood makes
// alpha* = Delta + 1: one relay with three exclusive out-links.
TEST(AlphaStar, CodedStarExceedsMaxConflictDegree) {
  const Network net = Network({{1, 0, 0, 1, 1}, {2, 1, 0, 0.5, 0.5}, {3, -1, 0, 0.5, 0.5}, {4, 0, 1, 0.5, 0.5}})
                          .with_hyperarcs({{1, {2, 3, 4}, 0}});
  const auto nb = closed_neighborhoods(build_conflict_graph(net, Level::link));
  const auto cat = enumerate_schedulable_sets(build_conflict_graph(net, Level::hyperarc));
  EXPECT_EQ(nb.max_degree, 2);
  EXPECT_EQ(alpha_star(cat, nb), 3);
}

// Without coding every L is independent in G, so L ∩ V_i is either {v_i}
// or a set of pairwise non-adjacent neighbours.
TEST(AlphaStar, PlainNetworksStayWithinMaxDegree) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = build_conflict_graph(testing::random_instance(rng).network, Level::link);
    if (g.size() == 0) continue;
    const auto nb = closed_neighborhoods(g);
    const int alpha = alpha_star(enumerate_schedulable_sets(g), nb);
    EXPECT_LE(alpha, std::max(1, nb.max_degree));
  }
}

TEST(AlphaStar, NeverExceedsClosedNeighbourhoodSize) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const Network net = testing::random_instance(rng).network;
    if (net.link_count() == 0) continue;
    const auto nb = closed_neighborhoods(build_conflict_graph(net, Level::link));
    const auto cat = enumerate_schedulable_sets(build_conflict_graph(net, Level::hyperarc));
    EXPECT_LE(alpha_star(cat, nb), nb.max_degree + 1);
  }
}

}  // namespace
}  // namespace wnc
