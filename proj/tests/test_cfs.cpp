#include <gtest/gtest.h>

#include <random>

#include "support/random_instances.hpp"
#include "wnc/cfs.hpp"
#include "wnc/io.hpp"

namespace wnc {
namespace {

struct Relay {
  Network net = canonical_relay_instance().network;
  ConflictGraph gh = build_conflict_graph(net, Level::hyperarc);
  Neighborhoods nb = closed_neighborhoods(build_conflict_graph(net, Level::link));
};

ConflictGraph weighted(const std::vector<int>& weights) {
  std::vector<ConflictVertex> vs;
  for (std::size_t i = 0; i < weights.size(); ++i) vs.push_back({0, {}, static_cast<int>(i) + 1, weights[i], {}});
  return ConflictGraph(std::move(vs), 0);
}

TEST(CodingFirstOrdering, RelayPutsHyperarcFirst) {
  Relay r;
  EXPECT_EQ(coding_first_ordering(r.gh).order, (std::vector<int>{4, 0, 1, 2, 3}));
}

TEST(CodingFirstOrdering, SingleWeightClassKeepsIndexOrder) {
  EXPECT_EQ(coding_first_ordering(ConflictGraph::from_edges(4, {{0, 1}})).order, (std::vector<int>{0, 1, 2, 3}));
}

TEST(CodingFirstOrdering, SortsByWeight) {
  EXPECT_EQ(coding_first_ordering(weighted({3, 1, 2})).order, (std::vector<int>{0, 2, 1}));
}

TEST(CodingFirstOrdering, RandomInvariants) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const auto gh = build_conflict_graph(testing::random_instance(rng).network, Level::hyperarc);
    const auto omega = coding_first_ordering(gh);
    auto sorted = omega.order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i], static_cast<int>(i));
    for (std::size_t i = 1; i < omega.order.size(); ++i) {
      const auto& prev = gh.vertex(static_cast<std::size_t>(omega.order[i - 1]));
      const auto& cur = gh.vertex(static_cast<std::size_t>(omega.order[i]));
      EXPECT_TRUE(prev.weight > cur.weight || (prev.weight == cur.weight && prev.index < cur.index));
    }
  }
}

TEST(CodingFirstMwis, CompleteGraphTakesFirst) {
  Relay r;
  const std::vector<int> all{0, 1, 2, 3, 4};
  EXPECT_EQ(coding_first_mwis(all, coding_first_ordering(r.gh), r.gh), (std::vector<int>{4}));
}

TEST(CodingFirstMwis, EdgelessTakesAll) {
  const auto g = ConflictGraph::from_edges(4, {});
  const std::vector<int> u{0, 2, 3};
  EXPECT_EQ(coding_first_mwis(u, coding_first_ordering(g), g), u);
}

TEST(CodingFirstMwis, PathTrace) {
  const auto g = ConflictGraph::from_edges(3, {{0, 1}, {1, 2}});
  const std::vector<int> u{0, 1, 2};
  EXPECT_EQ(coding_first_mwis(u, coding_first_ordering(g), g), (std::vector<int>{0, 2}));
}

TEST(CodingFirstMwis, EmptyCandidates) {
  const auto g = ConflictGraph::from_edges(3, {});
  EXPECT_THROW(coding_first_mwis(std::vector<int>{}, coding_first_ordering(g), g), ValidationError);
}

TEST(CodingFirstMwis, MaximalWithinCandidates) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const auto gh = build_conflict_graph(testing::random_instance(rng).network, Level::hyperarc);
    if (gh.size() == 0) continue;
    const auto omega = coding_first_ordering(gh);
    std::vector<int> u;
    for (std::size_t v = 0; v < gh.size(); ++v)
      if (rng() % 3 != 0) u.push_back(static_cast<int>(v));
    if (u.empty()) continue;
    const auto picked = coding_first_mwis(u, omega, gh);
    EXPECT_TRUE(gh.is_independent(picked));
    for (int v : u) {
      if (std::binary_search(picked.begin(), picked.end(), v)) continue;
      auto grown = picked;
      grown.push_back(v);
      EXPECT_FALSE(gh.is_independent(grown));
    }
    // The first candidate in Ω order is always taken.
    for (int v : omega.order) {
      if (std::find(u.begin(), u.end(), v) == u.end()) continue;
      EXPECT_TRUE(std::binary_search(picked.begin(), picked.end(), v));
      break;
    }
  }
}

TEST(CfsSchedule, ZeroDemand) {
  Relay r;
  const auto s = cfs_schedule(r.gh, coding_first_ordering(r.gh), std::vector<double>(4, 0.0));
  EXPECT_TRUE(s.slots.empty());
  EXPECT_EQ(s.length(), 0.0);
}

TEST(CfsSchedule, SingleLink) {
  const Network net({{1, 0, 0, 1, 1}, {2, 1, 0, 0.5, 0.5}});
  const auto gh = build_conflict_graph(net, Level::hyperarc);
  const auto s = cfs_schedule(gh, coding_first_ordering(gh), std::vector<double>{1.0});
  ASSERT_EQ(s.slots.size(), 1u);
  EXPECT_EQ(s.slots[0].set, (std::vector<int>{0}));
  EXPECT_EQ(s.slots[0].lambda, 1.0);
}

TEST(CfsSchedule, RelayThirdsTrace) {
  Relay r;
  const auto s = cfs_schedule(r.gh, coding_first_ordering(r.gh), std::vector<double>(4, 1.0 / 3));
  ASSERT_EQ(s.slots.size(), 3u);
  EXPECT_EQ(s.slots[0].set, (std::vector<int>{4}));
  EXPECT_EQ(s.slots[1].set, (std::vector<int>{0}));
  EXPECT_EQ(s.slots[2].set, (std::vector<int>{1}));
  for (const auto& slot : s.slots) EXPECT_DOUBLE_EQ(slot.lambda, 1.0 / 3);
  EXPECT_NEAR(s.length(), 1.0, 1e-12);
}

TEST(CfsSchedule, RejectsBadDemand) {
  Relay r;
  EXPECT_THROW(cfs_schedule(r.gh, coding_first_ordering(r.gh), std::vector<double>{1, 1}), ValidationError);
  EXPECT_THROW(cfs_schedule(r.gh, coding_first_ordering(r.gh), std::vector<double>{1, -1, 0, 0}), ValidationError);
}

TEST(CfsLengthBound, Basics) {
  Relay r;
  EXPECT_EQ(cfs_length_bound(std::vector<double>(4, 0.0), r.nb), 0.0);
  EXPECT_NEAR(cfs_length_bound(std::vector<double>(4, 1.0 / 3), r.nb), 4.0 / 3.0, 1e-15);
  const auto edgeless = closed_neighborhoods(ConflictGraph::from_edges(3, {}));
  EXPECT_EQ(cfs_length_bound(std::vector<double>{0.2, 0.7, 0.1}, edgeless), 0.7);
}

TEST(InductivePolytope, Membership) {
  Relay r;
  EXPECT_TRUE(inductive_polytope_membership(std::vector<double>(4, 0.0), r.nb));
  EXPECT_TRUE(inductive_polytope_membership(std::vector<double>(4, 0.25), r.nb));
  EXPECT_FALSE(inductive_polytope_membership(std::vector<double>(4, 1.0 / 3), r.nb));
}

// Exact demand, independence, the neighbourhood bound, progress, and the
// alpha*-ratio against chi_f, over random instances and demands.
TEST(CfsSchedule, RandomProperties) {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> scale(0.05, 2.0);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = testing::random_instance(rng);
    const auto& net = inst.network;
    const auto gh = build_conflict_graph(net, Level::hyperarc);
    const auto nb = closed_neighborhoods(build_conflict_graph(net, Level::link));
    const auto omega = coding_first_ordering(gh);
    const auto d = testing::random_demand(rng, net.link_count(), scale(rng));

    const auto s = cfs_schedule(gh, omega, d);
    EXPECT_LE(s.slots.size(), net.link_count());
    const auto cap = link_capacity_function(s.link_entries(gh), net.link_count());
    for (std::size_t a = 0; a < d.size(); ++a) EXPECT_NEAR(cap[a], d[a], 1e-9);
    for (const auto& slot : s.slots) {
      EXPECT_TRUE(gh.is_independent(slot.set));
      EXPECT_GT(slot.lambda, 0.0);
    }
    EXPECT_LE(s.length(), cfs_length_bound(d, nb) + 1e-9);

    if (net.link_count() == 0) continue;
    const auto cat = enumerate_schedulable_sets(gh);
    const double chi = optimal_fractional_schedule(d, cat).length;
    const int alpha = alpha_star(cat, nb);
    EXPECT_LE(s.length(), alpha * chi + 1e-6);
    EXPECT_LE(chi, s.length() + 1e-9);  // CFS is a feasible schedule
    if (inductive_polytope_membership(d, nb)) {
      EXPECT_LE(chi, 1.0 + 1e-9);
    }
    EXPECT_LE(cfs_length_bound(d, nb), alpha * chi + 1e-6);
  }
}

}  // namespace
}  // namespace wnc
