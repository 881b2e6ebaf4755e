#include "replan/replanners.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace replan {
namespace {

void attach_grid(Tree& tree, const WorldState& world, const RrtConfig& config) {
    if (config.grid_cell > 0.0) {
        tree.enable_grid(world.bounds, config.grid_cell);
    }
}

Point2 clamp_to(const Rect& bounds, Point2 p) {
    return {std::clamp(p.x, bounds.min.x, bounds.max.x), std::clamp(p.y, bounds.min.y, bounds.max.y)};
}

}  // namespace

std::size_t WaypointCache::insert(Point2 p, PlannerRng& rng) {
    if (capacity_ == 0) {
        return 0;
    }
    if (entries_.size() < capacity_) {
        entries_.push_back(p);
        return entries_.size() - 1;
    }
    const std::size_t slot = rng.index(capacity_);
    entries_[slot] = p;
    return slot;
}

TrimResult trim_invalid(const Tree& tree, const WorldState& world) {
    const auto dynamic = world.dynamic_blockers();
    TrimResult out{Tree(tree.root()), {}, std::vector<NodeId>(tree.size(), kNoNode)};
    out.remap[0] = 0;
    for (NodeId v = 1; v < tree.size(); ++v) {
        const TreeNode& n = tree.node(v);
        const NodeId parent = out.remap[n.parent];
        if (parent == kNoNode || segment_hits_any({tree.node(n.parent).position, n.position}, dynamic)) {
            out.removed.push_back(n.position);
            continue;
        }
        out.remap[v] = out.kept.add(n.position, parent);
    }
    return out;
}

SplitResult split_invalid(const Tree& tree, const WorldState& world) {
    const auto dynamic = world.dynamic_blockers();
    std::vector<Tree> components{Tree(tree.root())};
    std::vector<std::size_t> component(tree.size(), 0);
    std::vector<NodeId> local(tree.size(), 0);
    for (NodeId v = 1; v < tree.size(); ++v) {
        const TreeNode& n = tree.node(v);
        if (segment_hits_any({tree.node(n.parent).position, n.position}, dynamic)) {
            component[v] = components.size();
            components.emplace_back(n.position);
            local[v] = 0;
        } else {
            component[v] = component[n.parent];
            local[v] = components[component[v]].add(n.position, local[n.parent]);
        }
    }
    SplitResult out{std::move(components.front()), std::vector<NodeId>(tree.size(), kNoNode), {}};
    for (NodeId v = 0; v < tree.size(); ++v) {
        if (component[v] == 0) {
            out.remap[v] = local[v];
        }
    }
    out.orphans.reserve(components.size() - 1);
    for (std::size_t c = 1; c < components.size(); ++c) {
        out.orphans.push_back(std::move(components[c]));
    }
    return out;
}

bool Forest::offer(Tree tree) {
    if (capacity_ == 0 || tree.size() < min_subtree_) {
        return false;
    }
    if (entries_.size() >= capacity_) {
        entries_.pop_front();
    }
    entries_.push_back({std::move(tree), next_stamp_++});
    return true;
}

Tree Forest::take(std::size_t i) {
    Tree out = std::move(entries_[i].tree);
    entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(i));
    return out;
}

std::vector<Tree> Forest::prune(const WorldState& world) {
    std::deque<Entry> kept;
    std::vector<Tree> loose;
    for (Entry& e : entries_) {
        SplitResult s = split_invalid(e.tree, world);
        if (s.main.size() >= min_subtree_) {
            kept.push_back({std::move(s.main), e.stamp});
        }
        for (Tree& orphan : s.orphans) {
            loose.push_back(std::move(orphan));
        }
    }
    entries_ = std::move(kept);
    return loose;
}

GoalTreePlanner::GoalTreePlanner(const WorldState& initial, std::uint64_t seed, const PlannerConfig& config)
    : config_(config), rng_(seed), bootstrap_(initial.robot, initial.goal) {
    attach_grid(bootstrap_.init, initial, config_.rrt);
    attach_grid(bootstrap_.goal, initial, config_.rrt);
}

Point2 GoalTreePlanner::standard_sample(const WorldState& world) {
    if (rng_.uniform01() < config_.rrt.goal_bias) {
        return world.robot;
    }
    return sample_uniform(world.bounds, rng_);
}

TickOutcome GoalTreePlanner::tick(const WorldState& world, PlanBudget& budget) {
    if (!tree_) {
        if (!grow_bidirectional(bootstrap_, rng_, world, budget, config_.rrt)) {
            return {std::nullopt, false, stats_};
        }
        RerootedTree merged = merge_into_goal_tree(bootstrap_);
        tree_ = std::move(merged.tree);
        attach_grid(*tree_, world, config_.rrt);
        attach_ = merged.robot_node;
        bootstrap_ = BidirectionalState(world.robot, world.goal);
    }

    const std::vector<NodeId> remap = maintain(world);
    attach_ = attach_ == kNoNode ? kNoNode : remap[attach_];
    if (attach_ != kNoNode) {
        const Point2 target = tree_->node(attach_).position;
        if (target != world.robot && segment_hits_any({world.robot, target}, world.blockers())) {
            attach_ = kNoNode;
        }
    }

    while (attach_ == kNoNode && budget.consume()) {
        attach_ = grow_once(world);
    }
    if (attach_ == kNoNode) {
        return {std::nullopt, false, stats_};
    }
    return {current_path(world), true, stats_};
}

Path GoalTreePlanner::current_path(const WorldState& world) {
    Path path{world.robot};
    const Path chain = tree_->chain_to_root(attach_);
    auto first = chain.begin();
    attach_skipped_ = *first == world.robot;
    if (attach_skipped_) {
        ++first;
    }
    path.insert(path.end(), first, chain.end());
    if (path.size() == 1) {
        path.push_back(world.robot);  // robot sits on the goal root
    }
    return path;
}

void GoalTreePlanner::robot_advanced(const WorldState&, std::size_t vertices_passed) {
    if (!tree_ || attach_ == kNoNode) {
        return;
    }
    // Path vertex k is the k-th node up the chain from the attach node, or
    // the (k+1)-th when the path omitted the attach node. The robot now
    // heads for the vertex after the last one it reached.
    std::size_t steps = vertices_passed + (attach_skipped_ ? 1 : 0);
    while (steps > 0 && tree_->node(attach_).parent != kNoNode) {
        attach_ = tree_->node(attach_).parent;
        --steps;
    }
}

DrrtPlanner::DrrtPlanner(const WorldState& initial, std::uint64_t seed, const PlannerConfig& config)
    : GoalTreePlanner(initial, seed, config),
      cache_(config.waypoint_capacity),
      radius_(config.waypoint_radius > 0.0 ? config.waypoint_radius : 5.0 * initial.robot_half_extent) {}

Point2 DrrtPlanner::sample(const WorldState& world) {
    ++stats_.samples;
    const double u = rng_.uniform01();
    if (cache_.empty()) {
        return standard_sample(world);
    }
    ++stats_.samples_with_cache;
    if (u >= config_.waypoint_bias) {
        return standard_sample(world);
    }
    ++stats_.waypoint_samples;
    const Point2 center = cache_.entries()[rng_.index(cache_.size())];
    const double r = radius_ * std::sqrt(rng_.uniform01());
    const double theta = rng_.uniform(0.0, 2.0 * std::numbers::pi);
    return clamp_to(world.bounds, {center.x + r * std::cos(theta), center.y + r * std::sin(theta)});
}

std::vector<NodeId> DrrtPlanner::maintain(const WorldState& world) {
    TrimResult trimmed = trim_invalid(*tree_, world);
    for (Point2 p : trimmed.removed) {
        cache_.insert(p, rng_);
    }
    tree_ = std::move(trimmed.kept);
    attach_grid(*tree_, world, config_.rrt);
    return std::move(trimmed.remap);
}

NodeId DrrtPlanner::grow_once(const WorldState& world) {
    const ExtendResult r = extend(*tree_, sample(world), world, config_.rrt);
    if (r.status == ExtendStatus::Added && tree_->node(r.node).position == world.robot) {
        return r.node;
    }
    return kNoNode;
}

MprrtPlanner::MprrtPlanner(const WorldState& initial, std::uint64_t seed, const PlannerConfig& config)
    : GoalTreePlanner(initial, seed, config), forest_(config.forest_capacity, config.min_subtree) {}

std::vector<NodeId> MprrtPlanner::maintain(const WorldState& world) {
    SplitResult split = split_invalid(*tree_, world);
    std::vector<Tree> loose = forest_.prune(world);
    for (Tree& orphan : split.orphans) {
        forest_.offer(std::move(orphan));
    }
    for (Tree& orphan : loose) {
        forest_.offer(std::move(orphan));
    }
    tree_ = std::move(split.main);
    attach_grid(*tree_, world, config_.rrt);
    return std::move(split.remap);
}

NodeId MprrtPlanner::grow_once(const WorldState& world) {
    ++stats_.samples;
    const double u = rng_.uniform01();
    if (!forest_.empty()) {
        ++stats_.samples_with_forest;
    }
    if (u < config_.forest_bias && !forest_.empty()) {
        ++stats_.forest_attempts;
        const std::size_t entry = rng_.index(forest_.size());
        const Point2 target = forest_.entries()[entry].tree.root();
        const ExtendResult r = extend(*tree_, target, world, config_.rrt);
        if (r.status == ExtendStatus::Added && tree_->node(r.node).position == target) {
            ++stats_.splices;
            return splice(entry, r.node, world.robot);
        }
        return kNoNode;
    }

    Point2 target;
    if (u >= config_.forest_bias && u < config_.forest_bias + config_.rrt.goal_bias) {
        target = world.robot;
    } else {
        target = sample_uniform(world.bounds, rng_);
    }
    const ExtendResult r = extend(*tree_, target, world, config_.rrt);
    if (r.status == ExtendStatus::Added && tree_->node(r.node).position == world.robot) {
        return r.node;
    }
    return kNoNode;
}

NodeId MprrtPlanner::splice(std::size_t entry, NodeId at, Point2 robot) {
    const Tree sub = forest_.take(entry);
    std::vector<NodeId> mapped(sub.size(), kNoNode);
    mapped[0] = at;
    NodeId on_robot = tree_->node(at).position == robot ? at : kNoNode;
    for (NodeId v = 1; v < sub.size(); ++v) {
        mapped[v] = tree_->add(sub.node(v).position, mapped[sub.node(v).parent]);
        if (on_robot == kNoNode && sub.node(v).position == robot) {
            on_robot = mapped[v];
        }
    }
    return on_robot;
}

}  // namespace replan
