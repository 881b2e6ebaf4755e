#include "replan/geom2d.hpp"

#include <algorithm>

#include "replan/instrumentation.hpp"

namespace replan {
namespace {

// One slab of the clip. Returns false when the segment is rejected.
bool clip(double p, double q, double& t0, double& t1) {
    if (p == 0.0) {
        return q >= 0.0;
    }
    const double r = q / p;
    if (p < 0.0) {
        t0 = std::max(t0, r);
    } else {
        t1 = std::min(t1, r);
    }
    return t0 <= t1;
}

std::optional<double> clip_segment(const Segment& s, const Rect& r) {
    const double dx = s.b.x - s.a.x;
    const double dy = s.b.y - s.a.y;
    double t0 = 0.0;
    double t1 = 1.0;
    if (clip(-dx, s.a.x - r.min.x, t0, t1) && clip(dx, r.max.x - s.a.x, t0, t1) &&
        clip(-dy, s.a.y - r.min.y, t0, t1) && clip(dy, r.max.y - s.a.y, t0, t1)) {
        return t0;
    }
    return std::nullopt;
}

}  // namespace

bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double distance(Point2 p, Point2 q) { return std::hypot(p.x - q.x, p.y - q.y); }

bool point_in_rect(Point2 p, const Rect& r) {
    return p.x >= r.min.x && p.x <= r.max.x && p.y >= r.min.y && p.y <= r.max.y;
}

std::optional<double> segment_rect_entry(const Segment& s, const Rect& r) {
    instrumentation::count_collision_check();
    return clip_segment(s, r);
}

bool segment_intersects_rect(const Segment& s, const Rect& r) {
    instrumentation::count_collision_check();
    return clip_segment(s, r).has_value();
}

bool segment_hits_any(const Segment& s, std::span<const Rect> rects) {
    return std::any_of(rects.begin(), rects.end(), [&](const Rect& r) { return segment_intersects_rect(s, r); });
}

std::optional<double> first_contact(const Segment& s, std::span<const Rect> rects) {
    std::optional<double> best;
    for (const Rect& r : rects) {
        if (auto t = segment_rect_entry(s, r); t && (!best || *t < *best)) {
            best = t;
        }
    }
    return best;
}

}  // namespace replan
