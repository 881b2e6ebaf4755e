#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace replan {

/// A position in the workspace. The robot is holonomic and treated as a
/// point, so this is also the configuration-space state.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
};

struct Segment {
    Point2 a;
    Point2 b;
};

/// Closed axis-aligned rectangle, min <= max componentwise.
struct Rect {
    Point2 min;
    Point2 max;

    friend bool operator==(const Rect&, const Rect&) = default;

    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    Point2 center() const { return {(min.x + max.x) * 0.5, (min.y + max.y) * 0.5}; }

    /// Minkowski sum with a square of the given half-extent.
    Rect inflated(double half_extent) const {
        return {{min.x - half_extent, min.y - half_extent}, {max.x + half_extent, max.y + half_extent}};
    }

    Rect translated(Point2 d) const { return {min + d, max + d}; }

    bool contains(const Rect& inner) const {
        return inner.min.x >= min.x && inner.min.y >= min.y && inner.max.x <= max.x && inner.max.y <= max.y;
    }

    /// True when the open interiors overlap; touching edges do not count.
    bool overlaps_interior(const Rect& o) const {
        return min.x < o.max.x && o.min.x < max.x && min.y < o.max.y && o.min.y < max.y;
    }
};

/// An ordered point sequence from the robot to the goal.
using Path = std::vector<Point2>;

bool is_finite(Point2 p);

double distance(Point2 p, Point2 q);

/// Closed containment: min <= p <= max componentwise.
bool point_in_rect(Point2 p, const Rect& r);

/// Liang-Barsky clip of the segment against the closed rectangle. Returns the
/// segment parameter t in [0, 1] of the first point of contact, or nullopt
/// when the segment misses. Counts as one collision check.
std::optional<double> segment_rect_entry(const Segment& s, const Rect& r);

/// True iff any point of s lies inside or on the boundary of r. Every call
/// counts as one collision check against the active trial counters.
bool segment_intersects_rect(const Segment& s, const Rect& r);

/// First rectangle hit in iteration order; stops at the first hit.
bool segment_hits_any(const Segment& s, std::span<const Rect> rects);

/// Smallest contact parameter over all rectangles (checks every rectangle).
std::optional<double> first_contact(const Segment& s, std::span<const Rect> rects);

inline Point2 lerp(Point2 a, Point2 b, double t) { return a + (b - a) * t; }

}  // namespace replan
