#include <gtest/gtest.h>

#include "replan/multistage.hpp"
#include "../support/fixtures.hpp"

using namespace replan;
using replan::testing::rect;

namespace {

const Rect kField = rect(-20, -20, 20, 20);

WorldState field(std::vector<Rect> blocks) { return replan::testing::world_with(kField, std::move(blocks)); }

TEST(Feas, EmptyMapIsFree) {
    EXPECT_TRUE(feas({{0, 0}, {10, 10}}, field({})).free());
}

TEST(Feas, ReportsFirstCollisionFromRobot) {
    const Path p{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}, {6, 0}, {7, 0}, {8, 0}};
    const WorldState w = field({rect(3.4, -1, 3.6, 1), rect(7.4, -1, 7.6, 1)});
    EXPECT_EQ(feas(p, w), Feasibility::blocked(3));
}

TEST(Feas, CoincidentPointsOutsideObstacles) {
    EXPECT_TRUE(feas({{1, 1}, {1, 1}}, field({rect(4, 4, 5, 5)})).free());
    EXPECT_FALSE(feas({{4.5, 4.5}, {4.5, 4.5}}, field({rect(4, 4, 5, 5)})).free());
}

TEST(Eval, CountsPoints) {
    EXPECT_EQ(eval({{0, 0}, {1, 1}}), 2u);
    EXPECT_EQ(eval({{0, 0}, {1, 1}, {2, 2}}), 3u);
}

TEST(Arc, InsertsSquareDetour) {
    Path p{{0, 0}, {10, 0}};
    const WorldState w = field({rect(4, -1, 6, 1)});
    EXPECT_EQ(arc(p, 0, ArcDraw{3.0, false}, w), 2u);
    EXPECT_EQ(p, (Path{{0, 0}, {0, 3}, {10, 3}, {10, 0}}));
    EXPECT_TRUE(feas(p, w).free());
}

TEST(Arc, AlongXOffsetsBothEndpoints) {
    Path p{{0, 0}, {0, 10}};
    const WorldState w = field({rect(-1, 4, 1, 6)});
    EXPECT_EQ(arc(p, 0, ArcDraw{-2.5, true}, w), 2u);
    EXPECT_EQ(p, (Path{{0, 0}, {-2.5, 0}, {-2.5, 10}, {0, 10}}));
}

TEST(Arc, BlockedDetourKeepsFirstPoint) {
    // A second block sits on newPoint2, but newPoint1 -> point2 is clear.
    const WorldState w = field({rect(4, -1, 6, 1), rect(9.5, 2.5, 10.5, 3.5)});
    Path p{{0, 0}, {10, 0}};
    EXPECT_EQ(arc(p, 0, ArcDraw{3.0, false}, w, ArcFallback::InsertFirst), 1u);
    EXPECT_EQ(p, (Path{{0, 0}, {0, 3}, {10, 0}}));

    Path q{{0, 0}, {10, 0}};
    EXPECT_EQ(arc(q, 0, ArcDraw{3.0, false}, w, ArcFallback::Reject), 0u);
    EXPECT_EQ(q, (Path{{0, 0}, {10, 0}}));
}

TEST(Arc, NoOpWhenFallbackAlsoBlocked) {
    const WorldState w = field({rect(4, -1, 6, 3.5)});
    Path p{{0, 0}, {10, 0}};
    EXPECT_EQ(arc(p, 0, ArcDraw{3.0, false}, w), 0u);
    EXPECT_EQ(p, (Path{{0, 0}, {10, 0}}));
}

TEST(Arc, NoOpOutOfBounds) {
    const WorldState w = field({rect(4, -1, 6, 1)});
    Path p{{0, 18}, {10, 18}};
    EXPECT_EQ(arc(p, 0, ArcDraw{3.0, false}, w), 0u);
    EXPECT_EQ(p.size(), 2u);
}

TEST(Mut, MovesPointByDraw) {
    const WorldState w = field({});
    Path p{{0, 0}, {5, 5}, {10, 0}};
    EXPECT_TRUE(mut(p, 1, MutDraw{1.0, -2.0}, w));
    EXPECT_EQ(p[1], (Point2{6, 3}));
    EXPECT_EQ(eval(p), 3u);
}

TEST(Mut, RejectsBlockedCandidate) {
    const WorldState w = field({rect(5.5, 2.5, 6.5, 3.5)});
    Path p{{0, 0}, {5, 5}, {10, 0}};
    EXPECT_FALSE(mut(p, 1, MutDraw{1.0, -2.0}, w));
    EXPECT_EQ(p[1], (Point2{5, 5}));
}

TEST(Mut, NullDrawAcceptedIffAlreadyClear) {
    Path p{{0, 0}, {5, 5}, {10, 0}};
    EXPECT_TRUE(mut(p, 1, MutDraw{0, 0}, field({})));
    EXPECT_FALSE(mut(p, 1, MutDraw{0, 0}, field({rect(2, 2, 3, 3)})));
    EXPECT_EQ(p[1], (Point2{5, 5}));
}

TEST(Mut, NeverEditsRobotOrGoal) {
    EXPECT_EQ(mut_index({{0, 0}, {5, 5}, {10, 0}}, 0), 1u);
    EXPECT_EQ(mut_index({{0, 0}, {5, 5}, {10, 0}}, 1), 1u);
    EXPECT_FALSE(mut_index({{0, 0}, {10, 0}}, 0).has_value());
    EXPECT_FALSE(mut_index({{0, 0}, {5, 5}, {10, 0}}, 2).has_value());
}

TEST(PostProcess, CollinearCollapses) {
    Path p{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}};
    post_process(p, field({}));
    EXPECT_EQ(p, (Path{{0, 0}, {4, 0}}));
}

TEST(PostProcess, CornerPathUnchanged) {
    const Path in{{0, 0}, {0, 5}, {5, 5}};
    Path p = in;
    post_process(p, field({rect(1, 1, 4, 4)}));
    EXPECT_EQ(p, in);
}

TEST(PostProcess, ShortPathsUntouched) {
    Path p{{0, 0}, {4, 0}};
    post_process(p, field({}));
    EXPECT_EQ(p.size(), 2u);
}

// A->C is blocked, so the sweep advances past A; deleting C then opens
// A->D, which only a second sweep takes.
TEST(PostProcess, SingleSweepCanLeaveAShortcut) {
    const WorldState w = field({rect(4.5, -1, 5.5, 1)});
    Path p{{0, 0}, {5, 5}, {10, 0}, {10, 5}};
    post_process(p, w);
    EXPECT_EQ(p, (Path{{0, 0}, {5, 5}, {10, 5}}));
    post_process(p, w);
    EXPECT_EQ(p, (Path{{0, 0}, {10, 5}}));
}

Path random_feasible_path(PlannerRng& rng, const WorldState& w) {
    Path p{{rng.uniform(-19, 19), rng.uniform(-19, 19)}};
    while (segment_hits_any({p[0], p[0]}, w.blockers())) p[0] = {rng.uniform(-19, 19), rng.uniform(-19, 19)};
    const std::size_t n = 2 + rng.index(12);
    while (p.size() < n) {
        const Point2 q{rng.uniform(-19, 19), rng.uniform(-19, 19)};
        if (!segment_hits_any({p.back(), q}, w.blockers())) p.push_back(q);
    }
    return p;
}

TEST(PostProcess, PreservesFeasibilityAndNeverGrows) {
    PlannerRng rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<Rect> blocks;
        for (int i = 0; i < 4; ++i) {
            const double x = rng.uniform(-18, 14), y = rng.uniform(-18, 14);
            blocks.push_back(rect(x, y, x + rng.uniform(1, 5), y + rng.uniform(1, 5)));
        }
        const WorldState w = field(blocks);
        const Path in = random_feasible_path(rng, w);
        Path out = in;
        post_process(out, w);
        ASSERT_TRUE(feas(out, w).free());
        ASSERT_LE(eval(out), eval(in));
        ASSERT_EQ(out.front(), in.front());
        ASSERT_EQ(out.back(), in.back());
    }
}

TEST(PostProcess, FixedPointAfterOneSweepOnOpenField) {
    PlannerRng rng(32);
    for (int trial = 0; trial < 200; ++trial) {
        const WorldState w = field({});
        Path p = random_feasible_path(rng, w);
        post_process(p, w);
        const Path once = p;
        post_process(p, w);
        ASSERT_EQ(p, once);
    }
}

// ---- planner ----

PlannerConfig cfg() {
    PlannerConfig c;
    c.rrt.grid_cell = 2.0;
    return c;
}

WorldState start_world(std::vector<Rect> blocks = {}) {
    return replan::testing::world_with(kField, std::move(blocks), {-15, -15}, {15, 15});
}

TEST(MultistagePlanner, BootstrapEmitsPathOnFirstTick) {
    const WorldState w = start_world();
    MultistagePlanner p(w, 1, cfg());
    PlanBudget b = PlanBudget::iterations(100);
    const TickOutcome out = p.tick(w, b);
    ASSERT_TRUE(out.path);
    EXPECT_TRUE(out.clear_to_move);
    EXPECT_EQ(out.path->front(), w.robot);
    EXPECT_EQ(out.path->back(), w.goal);
    EXPECT_EQ(out.path->size(), 2u);  // shortened to the straight line
}

TEST(MultistagePlanner, StableWithoutWorldChange) {
    const WorldState w = start_world({rect(-2, -2, 2, 2)});
    MultistagePlanner p(w, 2, cfg());
    std::optional<Path> last;
    for (int i = 0; i < 20 && !last; ++i) {
        PlanBudget b = PlanBudget::iterations(100);
        last = p.tick(w, b).path;
    }
    ASSERT_TRUE(last);
    for (int i = 0; i < 5; ++i) {
        PlanBudget b = PlanBudget::iterations(100);
        const TickOutcome out = p.tick(w, b);
        ASSERT_EQ(out.path, last);
        ASSERT_TRUE(out.clear_to_move);
    }
    EXPECT_EQ(p.repair_iterations(), 0u);
}

TEST(MultistagePlanner, RecoversAfterObstacleCrossesPath) {
    Scenario s = replan::testing::open_scenario(kField, {-15, 0}, {15, 0});
    ObstacleSpec mover;
    mover.shape = rect(-1, 8, 1, 10);
    mover.kind = ObstacleKind::Moving;
    mover.speed = 0.5;
    s.obstacles.push_back(mover);
    WorldState w = WorldState::initial(s, 1);
    w.obstacles[0].velocity = {0.0, -0.5};
    w.refresh_blockers();
    MultistagePlanner p(w, 3, cfg());
    bool blocked_seen = false;
    bool free_after = false;
    for (int t = 0; t < 80; ++t) {
        w = update_world(std::move(w));
        PlanBudget b = PlanBudget::iterations(20);
        const TickOutcome out = p.tick(w, b);
        ASSERT_TRUE(out.path);
        if (segment_intersects_rect({{-15, 0}, {15, 0}}, w.dynamic_blockers()[0])) {
            blocked_seen = true;
        }
        if (blocked_seen && w.obstacles[0].rect.max.y < -2) {
            free_after = out.clear_to_move && feas(*out.path, w).free();
            if (free_after) break;
        }
    }
    EXPECT_TRUE(blocked_seen);
    EXPECT_TRUE(free_after);
}

TEST(MultistagePlanner, RobotAdvanceRebasesHead) {
    const WorldState w0 = start_world({rect(-2, -2, 2, 2)});
    MultistagePlanner p(w0, 4, cfg());
    std::optional<Path> path;
    for (int i = 0; i < 20 && !path; ++i) {
        PlanBudget b = PlanBudget::iterations(100);
        path = p.tick(w0, b).path;
    }
    ASSERT_TRUE(path);
    WorldState w = w0;
    const RobotStep step = step_along(*path, distance((*path)[0], (*path)[1]) + 0.5);
    w.robot = step.position;
    p.robot_advanced(w, step.vertices_passed);
    ASSERT_TRUE(p.path());
    EXPECT_EQ(p.path()->front(), w.robot);
    EXPECT_EQ(p.path()->size(), path->size() - 1);
    EXPECT_EQ(p.path()->back(), w.goal);
}

TEST(MultistagePlanner, DeterministicTickByTick) {
    const Scenario s = load_scenario(REPLAN_SCENARIO_DIR "/dynamic.scenario");
    WorldState wa = WorldState::initial(s, 6), wb = WorldState::initial(s, 6);
    MultistagePlanner a(wa, 6, {}), b(wb, 6, {});
    for (int t = 0; t < 200; ++t) {
        wa = update_world(std::move(wa));
        wb = update_world(std::move(wb));
        PlanBudget ba = PlanBudget::iterations(40), bb = PlanBudget::iterations(40);
        const TickOutcome oa = a.tick(wa, ba);
        const TickOutcome ob = b.tick(wb, bb);
        ASSERT_EQ(oa.path, ob.path);
        ASSERT_EQ(oa.clear_to_move, ob.clear_to_move);
        if (oa.clear_to_move) {
            const RobotStep st = step_along(*oa.path, wa.robot_speed);
            wa.robot = wb.robot = st.position;
            a.robot_advanced(wa, st.vertices_passed);
            b.robot_advanced(wb, st.vertices_passed);
        }
    }
}

}  // namespace
