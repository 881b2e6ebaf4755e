#pragma once

#include <cstddef>
#include <optional>

#include "replan/planner.hpp"
#include "replan/rrt.hpp"

namespace replan {

/// Result of the feasibility test: either the path is free, or the index
/// of the first colliding segment counting from the robot.
struct Feasibility {
    std::optional<std::size_t> first_collision;

    bool free() const { return !first_collision.has_value(); }
    static Feasibility clear() { return {}; }
    static Feasibility blocked(std::size_t i) { return {i}; }

    friend bool operator==(const Feasibility&, const Feasibility&) = default;
};

/// Segment-by-segment check against every blocker of the snapshot.
Feasibility feas(const Path& path, const WorldState& world);

/// Objective minimized by the optimization stage: the number of points.
inline std::size_t eval(const Path& path) { return path.size(); }

struct RepairConfig {
    double vicinity = 4.0;
    ArcFallback fallback = ArcFallback::InsertFirst;
};

/// Offsets drawn by one arc application; exposed so tests can drive the
/// operator deterministically.
struct ArcDraw {
    double deviation = 0.0;
    bool along_x = false;
};

struct MutDraw {
    double dx = 0.0;
    double dy = 0.0;
};

ArcDraw draw_arc(PlannerRng& rng, double vicinity);
MutDraw draw_mut(PlannerRng& rng, double vicinity);

/// Square detour around the obstacle hit by segment first_col: both segment
/// endpoints are offset along one axis and inserted between them when the
/// three new segments are free. Otherwise the fallback applies. Returns the
/// number of points inserted (0, 1 or 2).
std::size_t arc(Path& path, std::size_t first_col, const ArcDraw& draw, const WorldState& world,
                ArcFallback fallback = ArcFallback::InsertFirst);
std::size_t arc(Path& path, std::size_t first_col, PlannerRng& rng, const WorldState& world,
                const RepairConfig& config);

/// Index mut edits for a collision at segment first_col. The robot's own
/// point is never edited, so a collision on segment 0 moves point 1.
/// nullopt when the path has no editable interior point.
std::optional<std::size_t> mut_index(const Path& path, std::size_t first_col);

/// Moves one interior point by the draw; kept only when both incident
/// segments are free and the point stays inside the bounds.
bool mut(Path& path, std::size_t first_col, const MutDraw& draw, const WorldState& world);
bool mut(Path& path, std::size_t first_col, PlannerRng& rng, const WorldState& world, const RepairConfig& config);

/// Greedy shortening: one forward sweep deleting path[i+1] whenever
/// path[i] -> path[i+2] is free. Endpoints are never removed.
void post_process(Path& path, const WorldState& world);

/// RRT bootstrap, then informed local search with greedy shortening.
class MultistagePlanner final : public Planner {
public:
    MultistagePlanner(const WorldState& initial, std::uint64_t seed, const PlannerConfig& config);

    TickOutcome tick(const WorldState& world, PlanBudget& budget) override;
    void robot_advanced(const WorldState& world, std::size_t vertices_passed) override;
    Algorithm algorithm() const override { return Algorithm::Multistage; }

    const std::optional<Path>& path() const { return path_; }
    std::size_t repair_iterations() const { return repairs_; }

private:
    PlannerConfig config_;
    RepairConfig repair_;
    PlannerRng rng_;
    BidirectionalState bootstrap_;
    std::optional<Path> path_;
    std::size_t repairs_ = 0;
};

}  // namespace replan
