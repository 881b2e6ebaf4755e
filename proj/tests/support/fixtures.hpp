#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "replan/geom2d.hpp"
#include "replan/rng.hpp"
#include "replan/world.hpp"

namespace replan::testing {

inline Rect rect(double x0, double y0, double x1, double y1) { return {{x0, y0}, {x1, y1}}; }

/// Scenario with static obstacles given as already-inflated blockers
/// (half-extent 0), so test geometry reads directly.
inline Scenario open_scenario(Rect bounds, Point2 start, Point2 goal, std::vector<Rect> statics = {},
                              std::vector<Rect> walls = {}) {
    Scenario s;
    s.name = "test";
    s.bounds = bounds;
    s.walls = std::move(walls);
    for (const Rect& r : statics) {
        ObstacleSpec o;
        o.shape = r;
        o.kind = ObstacleKind::Static;
        s.obstacles.push_back(o);
    }
    s.start = start;
    s.goal = goal;
    s.robot_speed = 1.0;
    s.robot_half_extent = 0.0;
    s.cutoff_s = 30.0;
    s.planning_budget_s = 0.05;
    s.plan_iterations = 200;
    return s;
}

inline WorldState world_with(Rect bounds, std::vector<Rect> statics, Point2 robot = {}, Point2 goal = {}) {
    WorldState w = WorldState::initial(open_scenario(bounds, robot, goal, std::move(statics)), 1);
    return w;
}

/// Exact Euclidean distance between a closed segment and a closed rectangle
/// (0 when they touch). Independent of the clipping kernel.
inline double segment_rect_distance(Point2 a, Point2 b, const Rect& r) {
    auto point_rect = [&](Point2 p) {
        const double dx = std::max({r.min.x - p.x, 0.0, p.x - r.max.x});
        const double dy = std::max({r.min.y - p.y, 0.0, p.y - r.max.y});
        return std::hypot(dx, dy);
    };
    auto point_segment = [&](Point2 p) {
        const Point2 d = b - a;
        const double len2 = d.x * d.x + d.y * d.y;
        double t = len2 > 0.0 ? ((p.x - a.x) * d.x + (p.y - a.y) * d.y) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        return distance(p, a + d * t);
    };
    double best = std::min(point_rect(a), point_rect(b));
    for (Point2 c : {r.min, r.max, Point2{r.min.x, r.max.y}, Point2{r.max.x, r.min.y}}) {
        best = std::min(best, point_segment(c));
    }
    return best;
}

enum class OracleVerdict { Hit, Miss, Boundary };

/// Dense-sampling oracle: 1000 evenly spaced points of the segment tested
/// for strict containment in r shrunk by eps. When no sample lands inside,
/// the exact distance decides whether the case is a clear miss or lies in
/// the eps boundary band.
inline OracleVerdict sampling_oracle(Point2 a, Point2 b, const Rect& r, double eps) {
    constexpr int kSamples = 1000;
    for (int i = 0; i < kSamples; ++i) {
        const Point2 p = lerp(a, b, static_cast<double>(i) / (kSamples - 1));
        if (p.x > r.min.x + eps && p.x < r.max.x - eps && p.y > r.min.y + eps && p.y < r.max.y - eps) {
            return OracleVerdict::Hit;
        }
    }
    return segment_rect_distance(a, b, r) > eps ? OracleVerdict::Miss : OracleVerdict::Boundary;
}

struct OracleCase {
    Point2 a;
    Point2 b;
    Rect r;
};

/// Lattice cases in [-10, 10]^2: any chord through a rectangle interior is
/// then far longer than the sample spacing, so the oracle cannot miss one.
inline std::vector<OracleCase> lattice_cases(std::size_t n, std::uint64_t seed) {
    PlannerRng rng(seed);
    auto coord = [&] { return static_cast<double>(static_cast<long>(rng.index(21)) - 10); };
    std::vector<OracleCase> out;
    out.reserve(n);
    while (out.size() < n) {
        double x0 = coord(), x1 = coord(), y0 = coord(), y1 = coord();
        if (x0 == x1 || y0 == y1) {
            continue;
        }
        if (x0 > x1) std::swap(x0, x1);
        if (y0 > y1) std::swap(y0, y1);
        out.push_back({{coord(), coord()}, {coord(), coord()}, rect(x0, y0, x1, y1)});
    }
    return out;
}

}  // namespace replan::testing
