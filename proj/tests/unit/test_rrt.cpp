#include <gtest/gtest.h>

#include "replan/instrumentation.hpp"
#include "replan/multistage.hpp"
#include "replan/rrt.hpp"
#include "../support/fixtures.hpp"

using namespace replan;
using replan::testing::rect;

namespace {

const Rect kField = rect(-20, -20, 20, 20);

TEST(Nearest, Singleton) {
    Tree t({0, 0});
    EXPECT_EQ(t.nearest({5, 5}), 0u);
}

TEST(Nearest, Strict) {
    Tree t({0, 0});
    t.add({10, 0}, 0);
    EXPECT_EQ(t.nearest({4, 0}), 0u);
    EXPECT_EQ(t.nearest({6, 0}), 1u);
}

TEST(Nearest, TieGoesToLowestId) {
    Tree t({0, 0});
    t.add({2, 0}, 0);
    t.add({1, 1}, 0);
    EXPECT_EQ(t.nearest({1, 0}), 0u);
    t.enable_grid(rect(-5, -5, 5, 5), 0.7);
    EXPECT_EQ(t.nearest({1, 0}), 0u);
}

TEST(Nearest, CountsOneLookupPerQuery) {
    TrialCounters c;
    CounterScope scope(c);
    Tree t({0, 0});
    t.nearest({1, 1});
    t.enable_grid(kField, 2.0);
    t.nearest({1, 1});
    t.nearest_linear({1, 1});  // the oracle is not instrumented
    EXPECT_EQ(c.nn_lookups, 2u);
}

TEST(Nearest, GridAgreesWithLinearScan) {
    PlannerRng rng(1234);
    for (int trial = 0; trial < 200; ++trial) {
        Tree t({rng.uniform(-20, 20), rng.uniform(-20, 20)});
        const std::size_t n = 1 + rng.index(300);
        for (std::size_t i = 0; i < n; ++i) {
            // Snap half of the points to a coarse lattice to force ties.
            Point2 p{rng.uniform(-20, 20), rng.uniform(-20, 20)};
            if (rng.coin()) p = {std::round(p.x), std::round(p.y)};
            t.add(p, static_cast<NodeId>(rng.index(t.size())));
        }
        t.enable_grid(kField, 0.5 + rng.uniform01() * 6.0);
        for (int q = 0; q < 20; ++q) {
            Point2 query{rng.uniform(-25, 25), rng.uniform(-25, 25)};
            if (rng.coin()) query = {std::round(query.x) + 0.5, std::round(query.y)};
            ASSERT_EQ(t.nearest(query), t.nearest_linear(query));
        }
    }
}

TEST(Extend, FreeSpaceAddsTarget) {
    const WorldState w = replan::testing::world_with(kField, {});
    Tree t({0, 0});
    const ExtendResult r = extend(t, {10, 0}, w, {});
    EXPECT_EQ(r.status, ExtendStatus::Added);
    EXPECT_EQ(t.node(r.node).position, (Point2{10, 0}));
    EXPECT_EQ(t.node(r.node).parent, 0u);
}

TEST(Extend, BlockedAddsMidpointToContact) {
    const WorldState w = replan::testing::world_with(kField, {rect(4, -1, 6, 1)});
    Tree t({0, 0});
    const ExtendResult r = extend(t, {10, 0}, w, {});
    EXPECT_EQ(r.status, ExtendStatus::AddedMidpoint);
    EXPECT_EQ(t.node(r.node).position, (Point2{2, 0}));
}

TEST(Extend, MinEdgeGuardRejects) {
    const WorldState w = replan::testing::world_with(kField, {rect(0.0000005, -1, 1, 1)});
    Tree t({0, 0});
    const ExtendResult r = extend(t, {0.001, 0}, w, {});
    EXPECT_EQ(r.status, ExtendStatus::Rejected);
    EXPECT_EQ(t.size(), 1u);
}

TEST(Extend, ExistingTargetReportsThatNode) {
    const WorldState w = replan::testing::world_with(kField, {});
    Tree t({0, 0});
    t.add({3, 3}, 0);
    const ExtendResult r = extend(t, {3, 3}, w, {});
    EXPECT_EQ(r.status, ExtendStatus::Added);
    EXPECT_EQ(r.node, 1u);
    EXPECT_EQ(t.size(), 2u);
}

bool acyclic_and_rooted(const Tree& t) {
    if (t.node(0).parent != kNoNode) return false;
    for (NodeId v = 1; v < t.size(); ++v) {
        if (t.node(v).parent >= v) return false;
    }
    return true;
}

TEST(GrowBidirectional, EmptyMapFindsPath) {
    const WorldState w = replan::testing::world_with(rect(-1, -1, 11, 11), {}, {0, 0}, {10, 10});
    int found = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        PlannerRng rng(seed);
        PlanBudget budget = PlanBudget::iterations(500);
        const auto path = grow_bidirectional(w, rng, budget, {});
        if (path) {
            ++found;
            EXPECT_EQ(path->front(), (Point2{0, 0}));
            EXPECT_EQ(path->back(), (Point2{10, 10}));
            EXPECT_TRUE(feas(*path, w).free());
        }
    }
    EXPECT_GE(found, 99);
}

TEST(GrowBidirectional, PathAvoidsWalls) {
    const std::vector<Rect> walls{rect(4, -1, 5, 8), rect(7, 3, 8, 11)};
    Scenario s = replan::testing::open_scenario(rect(-1, -1, 11, 11), {0, 0}, {10, 10}, {}, walls);
    const WorldState w = WorldState::initial(s, 1);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        PlannerRng rng(seed);
        PlanBudget budget = PlanBudget::iterations(5000);
        BidirectionalState st({0, 0}, {10, 10});
        ASSERT_TRUE(grow_bidirectional(st, rng, w, budget, {}));
        EXPECT_TRUE(acyclic_and_rooted(st.init));
        EXPECT_TRUE(acyclic_and_rooted(st.goal));
        const Path p = merged_path(st);
        EXPECT_EQ(p.front(), (Point2{0, 0}));
        EXPECT_EQ(p.back(), (Point2{10, 10}));
        EXPECT_TRUE(feas(p, w).free());
    }
}

TEST(GrowBidirectional, SealedGoalExhaustsBudget) {
    const std::vector<Rect> box{rect(7, 7, 9, 7.5), rect(7, 12.5, 13, 13), rect(7, 7, 7.5, 13), rect(12.5, 7, 13, 13)};
    Scenario s = replan::testing::open_scenario(rect(0, 0, 14, 14), {1, 1}, {10, 10}, {}, box);
    s.walls.push_back(rect(9, 7, 13, 7.5));
    const WorldState w = WorldState::initial(s, 1);
    PlannerRng rng(5);
    PlanBudget budget = PlanBudget::iterations(3000);
    EXPECT_FALSE(grow_bidirectional(w, rng, budget, {}).has_value());
    EXPECT_TRUE(budget.exhausted());
}

TEST(GrowBidirectional, DeterministicInIterations) {
    const std::vector<Rect> walls{rect(4, -1, 5, 8)};
    Scenario s = replan::testing::open_scenario(rect(-1, -1, 11, 11), {0, 0}, {10, 10}, {}, walls);
    const WorldState w = WorldState::initial(s, 1);
    for (const double cell : {0.0, 2.0}) {
        PlannerRng a(9), b(9);
        PlanBudget ba = PlanBudget::iterations(400), bb = PlanBudget::iterations(400);
        RrtConfig cfg;
        cfg.grid_cell = cell;
        EXPECT_EQ(grow_bidirectional(w, a, ba, cfg), grow_bidirectional(w, b, bb, cfg));
    }
    // The grid accelerator does not change growth.
    PlannerRng a(9), b(9);
    PlanBudget ba = PlanBudget::iterations(400), bb = PlanBudget::iterations(400);
    RrtConfig with_grid;
    with_grid.grid_cell = 1.5;
    EXPECT_EQ(grow_bidirectional(w, a, ba, {}), grow_bidirectional(w, b, bb, with_grid));
}

TEST(MergeIntoGoalTree, RerootsAtGoal) {
    const std::vector<Rect> walls{rect(4, -1, 5, 8)};
    Scenario s = replan::testing::open_scenario(rect(-1, -1, 11, 11), {0, 0}, {10, 10}, {}, walls);
    const WorldState w = WorldState::initial(s, 1);
    PlannerRng rng(17);
    PlanBudget budget = PlanBudget::iterations(5000);
    BidirectionalState st({0, 0}, {10, 10});
    ASSERT_TRUE(grow_bidirectional(st, rng, w, budget, {}));
    const RerootedTree merged = merge_into_goal_tree(st);
    EXPECT_EQ(merged.tree.root(), (Point2{10, 10}));
    EXPECT_EQ(merged.tree.size(), st.init.size() + st.goal.size() - 1);
    EXPECT_TRUE(acyclic_and_rooted(merged.tree));
    ASSERT_NE(merged.robot_node, kNoNode);
    Path chain = merged.tree.chain_to_root(merged.robot_node);
    EXPECT_EQ(chain, merged_path(st));
    for (NodeId v = 1; v < merged.tree.size(); ++v) {
        const Point2 a = merged.tree.node(v).position;
        const Point2 b = merged.tree.node(merged.tree.node(v).parent).position;
        EXPECT_FALSE(segment_hits_any({a, b}, w.blockers()));
    }
}

TEST(PlanBudget, Iterations) {
    PlanBudget b = PlanBudget::iterations(2);
    EXPECT_TRUE(b.consume());
    EXPECT_TRUE(b.consume());
    EXPECT_FALSE(b.consume());
    EXPECT_TRUE(b.exhausted());
}

}  // namespace
