#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "replan/geom2d.hpp"
#include "replan/rng.hpp"
#include "replan/world.hpp"

namespace replan {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct TreeNode {
    Point2 position;
    NodeId parent = kNoNode;  // kNoNode only for the root
};

/// Uniform-grid accelerator for nearest-node queries. Returns exactly what
/// an exhaustive scan returns, including the lowest-index tie break.
class GridIndex {
public:
    GridIndex(const Rect& bounds, double cell_size);

    void insert(NodeId id, Point2 p);
    NodeId nearest(Point2 q, std::span<const TreeNode> nodes) const;

private:
    std::size_t cell_of(Point2 p) const;
    long clamp_col(double x) const;
    long clamp_row(double y) const;

    Rect bounds_;
    double cell_;
    long cols_;
    long rows_;
    std::vector<std::vector<NodeId>> cells_;
};

/// RRT node store. Node 0 is the root and every parent id is smaller than
/// its child id, so parent chains are acyclic by construction.
class Tree {
public:
    explicit Tree(Point2 root);

    /// Turns on the grid accelerator (rebuilding it over existing nodes).
    void enable_grid(const Rect& bounds, double cell_size);
    bool has_grid() const { return grid_.has_value(); }

    NodeId add(Point2 position, NodeId parent);

    std::size_t size() const { return nodes_.size(); }
    const TreeNode& node(NodeId id) const { return nodes_[id]; }
    std::span<const TreeNode> nodes() const { return nodes_; }
    Point2 root() const { return nodes_.front().position; }

    /// Closest node to q (ties: lowest id). Counts one nearest-neighbour
    /// lookup regardless of the search structure.
    NodeId nearest(Point2 q) const;

    /// Exhaustive-scan reference used as the oracle for the grid.
    NodeId nearest_linear(Point2 q) const;

    /// Positions from `id` up to and including the root.
    Path chain_to_root(NodeId id) const;

private:
    std::vector<TreeNode> nodes_;
    std::optional<GridIndex> grid_;
};

/// Per-tick planning allowance: a fixed number of iterations, optionally
/// also bounded by a wall-clock deadline.
class PlanBudget {
public:
    static PlanBudget iterations(std::size_t n) { return PlanBudget(n, std::nullopt); }
    static PlanBudget wall_clock(std::chrono::duration<double> d) {
        return PlanBudget(std::numeric_limits<std::size_t>::max(),
                          std::chrono::steady_clock::now() +
                              std::chrono::duration_cast<std::chrono::steady_clock::duration>(d));
    }

    /// Takes one iteration; false once the allowance is spent.
    bool consume() {
        if (remaining_ == 0) {
            return false;
        }
        if (deadline_ && std::chrono::steady_clock::now() >= *deadline_) {
            remaining_ = 0;
            return false;
        }
        --remaining_;
        return true;
    }

    bool exhausted() const { return remaining_ == 0; }

private:
    PlanBudget(std::size_t n, std::optional<std::chrono::steady_clock::time_point> deadline)
        : remaining_(n), deadline_(deadline) {}

    std::size_t remaining_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
};

struct RrtConfig {
    double goal_bias = 0.05;
    double min_edge = 1e-6;
    double grid_cell = 0.0;  // <= 0 disables the grid accelerator
};

enum class ExtendStatus { Added, AddedMidpoint, Rejected };

struct ExtendResult {
    ExtendStatus status = ExtendStatus::Rejected;
    NodeId node = kNoNode;
};

/// EXTEND toward a target. A collision-free straight edge adds the target
/// itself. Otherwise the midpoint between the nearest node and the first
/// contact point is added when that edge is free and longer than min_edge.
/// A target already in the tree reports Added with the existing node.
ExtendResult extend(Tree& tree, Point2 target, const WorldState& world, const RrtConfig& config);

Point2 sample_uniform(const Rect& bounds, PlannerRng& rng);

/// Two trees grown toward each other; kept across ticks until they meet.
struct BidirectionalState {
    Tree init;
    Tree goal;
    NodeId init_meet = kNoNode;
    NodeId goal_meet = kNoNode;

    BidirectionalState(Point2 robot, Point2 goal_position) : init(robot), goal(goal_position) {}
    bool connected() const { return init_meet != kNoNode; }
};

/// Runs iterations until the trees meet or the budget is spent. Each
/// iteration draws one sample (the opposite root with probability
/// goal_bias, else uniform) and extends both trees toward it; a full
/// addition on both sides at the same point merges them.
bool grow_bidirectional(BidirectionalState& state, PlannerRng& rng, const WorldState& world,
                        PlanBudget& budget, const RrtConfig& config);

/// Root-to-root path through the meeting point, robot first.
Path merged_path(const BidirectionalState& state);

/// Convenience form: fresh trees at (robot, goal), returns the path if found.
std::optional<Path> grow_bidirectional(const WorldState& world, PlannerRng& rng, PlanBudget& budget,
                                       const RrtConfig& config);

struct RerootedTree {
    Tree tree;          // rooted at the goal
    NodeId robot_node;  // the former init root
};

/// Joins the two trees at the meeting point into one goal-rooted tree.
RerootedTree merge_into_goal_tree(const BidirectionalState& state);

}  // namespace replan
