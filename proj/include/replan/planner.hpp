#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "replan/geom2d.hpp"
#include "replan/rrt.hpp"
#include "replan/world.hpp"

namespace replan {

enum class Algorithm { Multistage, Drrt, Mprrt };

std::string_view to_string(Algorithm algorithm);
/// Accepts "multistage", "drrt", "mprrt" (also "mp-rrt", "multi-stage").
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Which sampling branch each growth iteration took, cumulative over the
/// planner's lifetime.
struct SamplingStats {
    std::uint64_t samples = 0;
    std::uint64_t samples_with_cache = 0;   // DRRT draws made with a non-empty waypoint cache
    std::uint64_t waypoint_samples = 0;
    std::uint64_t samples_with_forest = 0;  // MP-RRT draws made with a non-empty forest
    std::uint64_t forest_attempts = 0;
    std::uint64_t splices = 0;
};

struct TickOutcome {
    std::optional<Path> path;   // robot first, goal last, feasible when emitted
    bool clear_to_move = false;
    SamplingStats sampling;
};

/// What arc() does when the full detour is blocked.
enum class ArcFallback {
    InsertFirst,  // keep newPoint1 alone when its two segments are free
    Reject,       // discard the whole arc
};

enum class PostProcessPolicy {
    Always,        // once per tick after the repair loop
    WhenFeasible,  // only once the path is collision-free
};

struct PlannerConfig {
    RrtConfig rrt{.goal_bias = 0.05, .min_edge = 1e-6, .grid_cell = 5.0};

    // DRRT
    double waypoint_bias = 0.4;
    std::size_t waypoint_capacity = 100;
    double waypoint_radius = 0.0;  // <= 0: 5 x robot half-extent

    // MP-RRT
    double forest_bias = 0.1;
    std::size_t forest_capacity = 25;
    std::size_t min_subtree = 5;

    // Multi-stage
    double vicinity = 0.0;  // <= 0: 4 x robot half-extent
    ArcFallback arc_fallback = ArcFallback::InsertFirst;
    PostProcessPolicy post_process = PostProcessPolicy::Always;
};

/// Uniform per-tick interface driven by the trial runner.
class Planner {
public:
    virtual ~Planner() = default;

    /// Plans against the current world snapshot within the budget.
    virtual TickOutcome tick(const WorldState& world, PlanBudget& budget) = 0;

    /// The robot moved along the last emitted path and reached
    /// `vertices_passed` of its vertices beyond the first.
    virtual void robot_advanced(const WorldState& world, std::size_t vertices_passed) = 0;

    virtual Algorithm algorithm() const = 0;
};

std::unique_ptr<Planner> make_planner(Algorithm algorithm, const WorldState& initial, std::uint64_t seed,
                                      const PlannerConfig& config = {});

}  // namespace replan
