#include "replan/world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "replan/rng.hpp"

namespace replan {
namespace {

bool blocked_by_walls(const Rect& r, const Rect& bounds, const std::vector<Rect>& walls) {
    if (!bounds.contains(r)) {
        return true;
    }
    return std::any_of(walls.begin(), walls.end(), [&](const Rect& w) { return w.overlaps_interior(r); });
}

void move_obstacle(ObstacleState& o, const Rect& bounds, const std::vector<Rect>& walls) {
    // Axis-separated reflection: a blocked axis keeps its position this tick
    // and reverses its velocity component, so speed is conserved exactly.
    const Rect moved_x = o.rect.translated({o.velocity.x, 0.0});
    if (blocked_by_walls(moved_x, bounds, walls)) {
        o.velocity.x = -o.velocity.x;
    } else {
        o.rect = moved_x;
    }
    const Rect moved_y = o.rect.translated({0.0, o.velocity.y});
    if (blocked_by_walls(moved_y, bounds, walls)) {
        o.velocity.y = -o.velocity.y;
    } else {
        o.rect = moved_y;
    }
}

}  // namespace

std::string_view to_string(ObstacleKind kind) {
    switch (kind) {
        case ObstacleKind::Static: return "static";
        case ObstacleKind::Moving: return "moving";
        case ObstacleKind::Appearing: return "appearing";
    }
    return "static";
}

std::int64_t Scenario::cutoff_ticks() const {
    return static_cast<std::int64_t>(std::ceil(cutoff_s / planning_budget_s - 1e-9));
}

ScenarioError::ScenarioError(Kind kind, std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), kind_(kind), field_(std::move(field)) {}

WorldState WorldState::initial(const Scenario& scenario, std::uint64_t trial_seed) {
    WorldState w;
    w.tick = 0;
    w.bounds = scenario.bounds;
    w.robot = scenario.start;
    w.goal = scenario.goal;
    w.robot_speed = scenario.robot_speed;
    w.robot_half_extent = scenario.robot_half_extent;
    w.walls = scenario.walls;
    w.obstacles.reserve(scenario.obstacles.size());
    for (const ObstacleSpec& spec : scenario.obstacles) {
        ObstacleState o;
        o.spec = spec;
        o.rect = spec.shape;
        switch (spec.kind) {
            case ObstacleKind::Static:
                o.active = true;
                break;
            case ObstacleKind::Moving: {
                PlannerRng rng = PlannerRng::derive(trial_seed, spec.motion_seed);
                const double heading = rng.uniform(0.0, 2.0 * std::numbers::pi);
                o.velocity = {spec.speed * std::cos(heading), spec.speed * std::sin(heading)};
                o.active = true;
                break;
            }
            case ObstacleKind::Appearing:
                o.active = spec.spawn_tick <= 0;
                break;
        }
        w.obstacles.push_back(o);
    }
    w.refresh_blockers();
    return w;
}

void WorldState::refresh_blockers() {
    blockers_.clear();
    blockers_.reserve(walls.size() + obstacles.size());
    for (const Rect& wall : walls) {
        blockers_.push_back(wall.inflated(robot_half_extent));
    }
    for (const ObstacleState& o : obstacles) {
        if (o.active) {
            blockers_.push_back(o.rect.inflated(robot_half_extent));
        }
    }
}

WorldState update_world(WorldState world) {
    world.tick += 1;
    for (ObstacleState& o : world.obstacles) {
        switch (o.spec.kind) {
            case ObstacleKind::Static:
                break;
            case ObstacleKind::Moving:
                move_obstacle(o, world.bounds, world.walls);
                break;
            case ObstacleKind::Appearing:
                o.active = world.tick >= o.spec.spawn_tick;
                break;
        }
    }
    world.refresh_blockers();
    return world;
}

RobotStep step_along(std::span<const Point2> path, double speed) {
    RobotStep step;
    if (path.empty()) {
        return step;
    }
    step.position = path.front();
    double budget = speed;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const double leg = distance(step.position, path[i]);
        if (leg > budget) {
            step.position = lerp(step.position, path[i], budget / leg);
            return step;
        }
        budget -= leg;
        step.position = path[i];
        step.vertices_passed = i;
    }
    return step;
}

WorldState advance_robot(WorldState world, std::span<const Point2> path) {
    world.robot = step_along(path, world.robot_speed).position;
    return world;
}

bool robot_collides(const WorldState& world) {
    const auto dynamic = world.dynamic_blockers();
    return std::any_of(dynamic.begin(), dynamic.end(), [&](const Rect& r) { return point_in_rect(world.robot, r); });
}

}  // namespace replan
