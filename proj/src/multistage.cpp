#include "replan/multistage.hpp"

namespace replan {
namespace {

bool free_segment(Point2 a, Point2 b, const WorldState& world) {
    return !segment_hits_any({a, b}, world.blockers());
}

Point2 shifted(Point2 p, const ArcDraw& draw) {
    return draw.along_x ? Point2{p.x + draw.deviation, p.y} : Point2{p.x, p.y + draw.deviation};
}

}  // namespace

Feasibility feas(const Path& path, const WorldState& world) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        if (!free_segment(path[i], path[i + 1], world)) {
            return Feasibility::blocked(i);
        }
    }
    return Feasibility::clear();
}

ArcDraw draw_arc(PlannerRng& rng, double vicinity) {
    ArcDraw d;
    d.deviation = rng.uniform(-vicinity, vicinity);
    d.along_x = rng.coin();
    return d;
}

MutDraw draw_mut(PlannerRng& rng, double vicinity) {
    MutDraw d;
    d.dx = rng.uniform(-vicinity, vicinity);
    d.dy = rng.uniform(-vicinity, vicinity);
    return d;
}

std::size_t arc(Path& path, std::size_t first_col, const ArcDraw& draw, const WorldState& world,
                ArcFallback fallback) {
    if (first_col + 1 >= path.size()) {
        return 0;
    }
    const Point2 point1 = path[first_col];
    const Point2 point2 = path[first_col + 1];
    const Point2 new1 = shifted(point1, draw);
    const Point2 new2 = shifted(point2, draw);
    if (!point_in_rect(new1, world.bounds)) {
        return 0;
    }
    const auto at = path.begin() + static_cast<std::ptrdiff_t>(first_col + 1);
    if (point_in_rect(new2, world.bounds) && free_segment(point1, new1, world) &&
        free_segment(new1, new2, world) && free_segment(new2, point2, world)) {
        path.insert(at, {new1, new2});
        return 2;
    }
    if (fallback == ArcFallback::InsertFirst && free_segment(point1, new1, world) &&
        free_segment(new1, point2, world)) {
        path.insert(at, new1);
        return 1;
    }
    return 0;
}

std::size_t arc(Path& path, std::size_t first_col, PlannerRng& rng, const WorldState& world,
                const RepairConfig& config) {
    return arc(path, first_col, draw_arc(rng, config.vicinity), world, config.fallback);
}

std::optional<std::size_t> mut_index(const Path& path, std::size_t first_col) {
    const std::size_t idx = first_col == 0 ? 1 : first_col;
    if (idx == 0 || idx + 1 >= path.size()) {
        return std::nullopt;
    }
    return idx;
}

bool mut(Path& path, std::size_t first_col, const MutDraw& draw, const WorldState& world) {
    const auto idx = mut_index(path, first_col);
    if (!idx) {
        return false;
    }
    const Point2 candidate{path[*idx].x + draw.dx, path[*idx].y + draw.dy};
    if (!point_in_rect(candidate, world.bounds) || !free_segment(path[*idx - 1], candidate, world) ||
        !free_segment(candidate, path[*idx + 1], world)) {
        return false;
    }
    path[*idx] = candidate;
    return true;
}

bool mut(Path& path, std::size_t first_col, PlannerRng& rng, const WorldState& world, const RepairConfig& config) {
    return mut(path, first_col, draw_mut(rng, config.vicinity), world);
}

void post_process(Path& path, const WorldState& world) {
    std::size_t i = 0;
    while (path.size() >= 3 && i < path.size() - 2) {
        if (free_segment(path[i], path[i + 2], world)) {
            path.erase(path.begin() + static_cast<std::ptrdiff_t>(i + 1));
        } else {
            ++i;
        }
    }
}

MultistagePlanner::MultistagePlanner(const WorldState& initial, std::uint64_t seed, const PlannerConfig& config)
    : config_(config),
      repair_{config.vicinity > 0.0 ? config.vicinity : 4.0 * initial.robot_half_extent, config.arc_fallback},
      rng_(seed),
      bootstrap_(initial.robot, initial.goal) {
    if (config_.rrt.grid_cell > 0.0) {
        bootstrap_.init.enable_grid(initial.bounds, config_.rrt.grid_cell);
        bootstrap_.goal.enable_grid(initial.bounds, config_.rrt.grid_cell);
    }
}

TickOutcome MultistagePlanner::tick(const WorldState& world, PlanBudget& budget) {
    if (!path_) {
        if (!grow_bidirectional(bootstrap_, rng_, world, budget, config_.rrt)) {
            return {};
        }
        path_ = merged_path(bootstrap_);
        path_->front() = world.robot;
        bootstrap_ = BidirectionalState(world.robot, world.goal);
    }

    Path& path = *path_;
    while (budget.consume()) {
        const Feasibility f = feas(path, world);
        if (f.free()) {
            break;
        }
        ++repairs_;
        const std::size_t first_col = *f.first_collision;
        arc(path, first_col, rng_, world, repair_);
        mut(path, first_col, rng_, world, repair_);
    }

    if (config_.post_process == PostProcessPolicy::Always) {
        post_process(path, world);
    }
    const Feasibility f = feas(path, world);
    if (config_.post_process == PostProcessPolicy::WhenFeasible && f.free()) {
        post_process(path, world);
    }
    return {path, f.free(), {}};
}

void MultistagePlanner::robot_advanced(const WorldState& world, std::size_t vertices_passed) {
    if (!path_) {
        return;
    }
    Path& path = *path_;
    // Drop the vertices already reached; the head tracks the robot.
    const std::size_t drop = std::min(vertices_passed, path.size() - 1);
    path.erase(path.begin() + 1, path.begin() + 1 + static_cast<std::ptrdiff_t>(drop));
    path.front() = world.robot;
    if (path.size() == 1) {
        path.push_back(world.goal);
    }
}

}  // namespace replan
