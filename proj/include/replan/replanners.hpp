#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "replan/planner.hpp"
#include "replan/rrt.hpp"

namespace replan {

/// Fixed-capacity store of recently invalidated states. Once full, each
/// insertion overwrites a uniformly chosen slot.
class WaypointCache {
public:
    explicit WaypointCache(std::size_t capacity) : capacity_(capacity) { entries_.reserve(capacity); }

    /// Returns the slot written.
    std::size_t insert(Point2 p, PlannerRng& rng);

    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    bool empty() const { return entries_.empty(); }
    std::span<const Point2> entries() const { return entries_; }

private:
    std::size_t capacity_;
    std::vector<Point2> entries_;
};

struct TrimResult {
    Tree kept;
    std::vector<Point2> removed;
    std::vector<NodeId> remap;  // old id -> new id, kNoNode if removed
};

/// Keeps the maximal root-connected part of the tree whose edges avoid the
/// world's dynamic blockers; everything below an invalid edge is removed.
/// Walls never change, so edges are only re-checked against obstacles.
TrimResult trim_invalid(const Tree& tree, const WorldState& world);

struct SplitResult {
    Tree main;
    std::vector<NodeId> remap;   // old id -> id in main, kNoNode otherwise
    std::vector<Tree> orphans;   // disconnected components, ordered by old root id
};

/// Cuts every edge that hits a dynamic blocker and returns each connected
/// component. Every edge is checked once.
SplitResult split_invalid(const Tree& tree, const WorldState& world);

/// Disconnected valid subtrees kept for reuse. Entries below min_subtree
/// nodes are never stored; at capacity the oldest entry is evicted.
class Forest {
public:
    struct Entry {
        Tree tree;
        std::uint64_t stamp;
    };

    Forest(std::size_t capacity, std::size_t min_subtree) : capacity_(capacity), min_subtree_(min_subtree) {}

    /// Stores the tree if it is large enough. Returns false if discarded.
    bool offer(Tree tree);

    /// Removes entry i and returns its tree.
    Tree take(std::size_t i);

    /// Re-validates every entry against the world; surviving root
    /// components keep their age, cut-off parts are returned for re-offer.
    std::vector<Tree> prune(const WorldState& world);

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::size_t capacity() const { return capacity_; }
    std::size_t min_subtree() const { return min_subtree_; }
    const std::deque<Entry>& entries() const { return entries_; }

private:
    std::size_t capacity_;
    std::size_t min_subtree_;
    std::uint64_t next_stamp_ = 0;
    std::deque<Entry> entries_;
};

/// Shared machinery of the goal-rooted replanners: bidirectional bootstrap,
/// then a single tree rooted at the goal that the robot hangs off.
class GoalTreePlanner : public Planner {
public:
    TickOutcome tick(const WorldState& world, PlanBudget& budget) override;
    void robot_advanced(const WorldState& world, std::size_t vertices_passed) override;

    const Tree* tree() const { return tree_ ? &*tree_ : nullptr; }
    NodeId attach() const { return attach_; }
    const SamplingStats& sampling() const { return stats_; }

protected:
    GoalTreePlanner(const WorldState& initial, std::uint64_t seed, const PlannerConfig& config);

    /// Removes invalidated structure; `remap` translates old tree ids.
    virtual std::vector<NodeId> maintain(const WorldState& world) = 0;
    /// One growth iteration; returns a node that sits on the robot, if any.
    virtual NodeId grow_once(const WorldState& world) = 0;

    Point2 standard_sample(const WorldState& world);

    PlannerConfig config_;
    PlannerRng rng_;
    std::optional<Tree> tree_;
    NodeId attach_ = kNoNode;  // node the robot is heading to
    SamplingStats stats_;

private:
    Path current_path(const WorldState& world);

    BidirectionalState bootstrap_;
    bool attach_skipped_ = false;  // last path omitted the attach node
};

class DrrtPlanner final : public GoalTreePlanner {
public:
    DrrtPlanner(const WorldState& initial, std::uint64_t seed, const PlannerConfig& config);

    Algorithm algorithm() const override { return Algorithm::Drrt; }
    const WaypointCache& cache() const { return cache_; }

    /// Regrowth target: near a cached waypoint with probability
    /// waypoint_bias (when the cache is non-empty), else standard sampling.
    Point2 sample(const WorldState& world);

protected:
    std::vector<NodeId> maintain(const WorldState& world) override;
    NodeId grow_once(const WorldState& world) override;

private:
    WaypointCache cache_;
    double radius_;
};

class MprrtPlanner final : public GoalTreePlanner {
public:
    MprrtPlanner(const WorldState& initial, std::uint64_t seed, const PlannerConfig& config);

    Algorithm algorithm() const override { return Algorithm::Mprrt; }
    const Forest& forest() const { return forest_; }

protected:
    std::vector<NodeId> maintain(const WorldState& world) override;
    NodeId grow_once(const WorldState& world) override;

private:
    /// Grafts forest entry `entry` onto the main tree at node `at`, which sits
    /// on the entry's root. Returns a grafted node lying on the robot, if any.
    NodeId splice(std::size_t entry, NodeId at, Point2 robot);

    Forest forest_;
};

}  // namespace replan
