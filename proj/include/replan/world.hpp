#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "replan/geom2d.hpp"

namespace replan {

enum class ObstacleKind { Static, Moving, Appearing };

std::string_view to_string(ObstacleKind kind);

/// Obstacle as declared in a scenario. `shape` is the footprint at spawn,
/// before inflation by the robot half-extent.
struct ObstacleSpec {
    Rect shape;
    ObstacleKind kind = ObstacleKind::Static;
    double speed = 0.0;            // length per tick, moving only
    std::int64_t spawn_tick = 0;   // appearing only
    std::uint64_t motion_seed = 0;
};

struct Scenario {
    std::string name;
    Rect bounds;
    std::vector<Rect> walls;
    std::vector<ObstacleSpec> obstacles;
    Point2 start;
    Point2 goal;
    double robot_speed = 1.0;        // length per tick
    double robot_half_extent = 0.0;
    double cutoff_s = 1.0;
    double planning_budget_s = 0.05; // also the simulated duration of one tick
    std::size_t plan_iterations = 40; // deterministic per-tick planning budget

    std::int64_t cutoff_ticks() const;
};

/// Raised by load_scenario. `field()` names the offending key.
class ScenarioError : public std::runtime_error {
public:
    enum class Kind { Parse, Validation };

    ScenarioError(Kind kind, std::string field, const std::string& message);

    Kind kind() const { return kind_; }
    const std::string& field() const { return field_; }

private:
    Kind kind_;
    std::string field_;
};

Scenario parse_scenario(std::string_view document);
Scenario load_scenario(const std::filesystem::path& file);
std::string scenario_to_json(const Scenario& scenario);

/// Checks every Scenario invariant; throws ScenarioError(Validation).
void validate_scenario(const Scenario& scenario);

struct ObstacleState {
    ObstacleSpec spec;
    Rect rect;          // current footprint, not inflated
    Point2 velocity;    // length per tick
    bool active = false;
};

/// Snapshot of the simulated world at one tick. A plain value: trials own
/// their states and copies are independent.
class WorldState {
public:
    WorldState() = default;

    /// State at tick 0. Moving-obstacle headings are drawn from
    /// (trial_seed, motion_seed), so equal seeds give equal trajectories.
    static WorldState initial(const Scenario& scenario, std::uint64_t trial_seed);

    std::int64_t tick = 0;
    Rect bounds;
    Point2 robot;
    Point2 goal;
    double robot_speed = 1.0;
    double robot_half_extent = 0.0;
    std::vector<Rect> walls;   // not inflated
    std::vector<ObstacleState> obstacles;

    /// Inflated walls followed by inflated active obstacles.
    std::span<const Rect> blockers() const { return blockers_; }
    /// The inflated active obstacles only (the part of blockers() that can
    /// change between ticks).
    std::span<const Rect> dynamic_blockers() const {
        return std::span<const Rect>(blockers_).subspan(walls.size());
    }

    /// Rebuilds blockers() after obstacles or walls were edited directly.
    void refresh_blockers();

private:
    std::vector<Rect> blockers_;
};

/// One simulation step: tick += 1, moving obstacles advance with specular
/// reflection off the bounds and the walls, appearing obstacles whose spawn
/// tick has come become active.
WorldState update_world(WorldState world);

struct RobotStep {
    Point2 position;
    std::size_t vertices_passed = 0;  // path vertices after path[0] reached
};

/// Moves at most `speed` along the polyline starting at path[0]. Reaching a
/// vertex with budget left continues on the next segment; the terminus
/// clamps.
RobotStep step_along(std::span<const Point2> path, double speed);

WorldState advance_robot(WorldState world, std::span<const Point2> path);

/// True iff the robot point lies in any inflated active obstacle.
bool robot_collides(const WorldState& world);

}  // namespace replan
