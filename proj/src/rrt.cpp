#include "replan/rrt.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <stdexcept>

#include "replan/instrumentation.hpp"

namespace replan {
namespace {

double squared_distance(Point2 a, Point2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Strict "better" in (distance, id) order.
bool better(double d, NodeId id, double best_d, NodeId best_id) {
    return d < best_d || (d == best_d && id < best_id);
}

}  // namespace

GridIndex::GridIndex(const Rect& bounds, double cell_size) : bounds_(bounds), cell_(cell_size) {
    if (!(cell_size > 0.0)) {
        throw std::invalid_argument("GridIndex: cell size must be positive");
    }
    cols_ = std::max(1L, static_cast<long>(std::ceil(bounds.width() / cell_)));
    rows_ = std::max(1L, static_cast<long>(std::ceil(bounds.height() / cell_)));
    cells_.resize(static_cast<std::size_t>(cols_ * rows_));
}

long GridIndex::clamp_col(double x) const {
    const double c = std::floor((x - bounds_.min.x) / cell_);
    return static_cast<long>(std::clamp(c, 0.0, static_cast<double>(cols_ - 1)));
}

long GridIndex::clamp_row(double y) const {
    const double r = std::floor((y - bounds_.min.y) / cell_);
    return static_cast<long>(std::clamp(r, 0.0, static_cast<double>(rows_ - 1)));
}

std::size_t GridIndex::cell_of(Point2 p) const {
    return static_cast<std::size_t>(clamp_row(p.y) * cols_ + clamp_col(p.x));
}

void GridIndex::insert(NodeId id, Point2 p) { cells_[cell_of(p)].push_back(id); }

NodeId GridIndex::nearest(Point2 q, std::span<const TreeNode> nodes) const {
    const long qc = clamp_col(q.x);
    const long qr = clamp_row(q.y);
    const long max_ring = std::max({qc, cols_ - 1 - qc, qr, rows_ - 1 - qr});

    NodeId best = kNoNode;
    double best_d = std::numeric_limits<double>::infinity();
    auto scan = [&](long col, long row) {
        if (col < 0 || col >= cols_ || row < 0 || row >= rows_) {
            return;
        }
        for (NodeId id : cells_[static_cast<std::size_t>(row * cols_ + col)]) {
            const double d = squared_distance(nodes[id].position, q);
            if (better(d, id, best_d, best)) {
                best_d = d;
                best = id;
            }
        }
    };

    for (long ring = 0; ring <= max_ring; ++ring) {
        if (ring == 0) {
            scan(qc, qr);
        } else {
            for (long c = qc - ring; c <= qc + ring; ++c) {
                scan(c, qr - ring);
                scan(c, qr + ring);
            }
            for (long r = qr - ring + 1; r <= qr + ring - 1; ++r) {
                scan(qc - ring, r);
                scan(qc + ring, r);
            }
        }
        // Anything in ring+1 or beyond is at least ring*cell away from q.
        // Strict comparison keeps equal-distance lower ids reachable.
        const double reach = static_cast<double>(ring) * cell_;
        if (best != kNoNode && best_d < reach * reach) {
            break;
        }
    }
    return best;
}

Tree::Tree(Point2 root) { nodes_.push_back({root, kNoNode}); }

void Tree::enable_grid(const Rect& bounds, double cell_size) {
    grid_.emplace(bounds, cell_size);
    for (NodeId id = 0; id < nodes_.size(); ++id) {
        grid_->insert(id, nodes_[id].position);
    }
}

NodeId Tree::add(Point2 position, NodeId parent) {
    assert(parent < nodes_.size());
    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({position, parent});
    if (grid_) {
        grid_->insert(id, position);
    }
    return id;
}

NodeId Tree::nearest(Point2 q) const {
    instrumentation::count_nn_lookup();
    return grid_ ? grid_->nearest(q, nodes_) : nearest_linear(q);
}

NodeId Tree::nearest_linear(Point2 q) const {
    NodeId best = 0;
    double best_d = squared_distance(nodes_[0].position, q);
    for (NodeId id = 1; id < nodes_.size(); ++id) {
        const double d = squared_distance(nodes_[id].position, q);
        if (d < best_d) {
            best_d = d;
            best = id;
        }
    }
    return best;
}

Path Tree::chain_to_root(NodeId id) const {
    Path out;
    for (NodeId cur = id; cur != kNoNode; cur = nodes_[cur].parent) {
        out.push_back(nodes_[cur].position);
    }
    return out;
}

ExtendResult extend(Tree& tree, Point2 target, const WorldState& world, const RrtConfig& config) {
    const NodeId near = tree.nearest(target);
    const Point2 from = tree.node(near).position;
    if (from == target) {
        return {ExtendStatus::Added, near};
    }
    const auto blockers = world.blockers();
    const auto contact = first_contact({from, target}, blockers);
    if (!contact) {
        return {ExtendStatus::Added, tree.add(target, near)};
    }
    const Point2 mid = lerp(from, target, *contact * 0.5);
    if (distance(from, mid) <= config.min_edge || segment_hits_any({from, mid}, blockers)) {
        return {ExtendStatus::Rejected, kNoNode};
    }
    return {ExtendStatus::AddedMidpoint, tree.add(mid, near)};
}

Point2 sample_uniform(const Rect& bounds, PlannerRng& rng) {
    const double x = rng.uniform(bounds.min.x, bounds.max.x);
    const double y = rng.uniform(bounds.min.y, bounds.max.y);
    return {x, y};
}

bool grow_bidirectional(BidirectionalState& state, PlannerRng& rng, const WorldState& world,
                        PlanBudget& budget, const RrtConfig& config) {
    while (!state.connected() && budget.consume()) {
        Point2 sample;
        if (rng.uniform01() < config.goal_bias) {
            sample = rng.coin() ? state.goal.root() : state.init.root();
        } else {
            sample = sample_uniform(world.bounds, rng);
        }
        const ExtendResult a = extend(state.init, sample, world, config);
        const ExtendResult b = extend(state.goal, sample, world, config);
        if (a.status == ExtendStatus::Added && b.status == ExtendStatus::Added) {
            state.init_meet = a.node;
            state.goal_meet = b.node;
        }
    }
    return state.connected();
}

Path merged_path(const BidirectionalState& state) {
    assert(state.connected());
    Path path = state.init.chain_to_root(state.init_meet);
    std::reverse(path.begin(), path.end());
    const Path tail = state.goal.chain_to_root(state.goal_meet);
    // The meeting point is the last init point and the first goal point.
    path.insert(path.end(), tail.begin() + 1, tail.end());
    return path;
}

std::optional<Path> grow_bidirectional(const WorldState& world, PlannerRng& rng, PlanBudget& budget,
                                       const RrtConfig& config) {
    BidirectionalState state(world.robot, world.goal);
    if (config.grid_cell > 0.0) {
        state.init.enable_grid(world.bounds, config.grid_cell);
        state.goal.enable_grid(world.bounds, config.grid_cell);
    }
    if (!grow_bidirectional(state, rng, world, budget, config)) {
        return std::nullopt;
    }
    return merged_path(state);
}

RerootedTree merge_into_goal_tree(const BidirectionalState& state) {
    assert(state.connected());
    // Undirected union graph. Goal-tree vertices keep their ids; init-tree
    // vertex v maps to offset + v, except the meeting node which is shared.
    const std::size_t offset = state.goal.size();
    const std::size_t total = offset + state.init.size();
    auto vertex_of_init = [&](NodeId v) -> std::size_t {
        return v == state.init_meet ? state.goal_meet : offset + v;
    };
    std::vector<std::vector<std::size_t>> adjacency(total);
    std::vector<Point2> position(total);
    for (NodeId v = 0; v < state.goal.size(); ++v) {
        position[v] = state.goal.node(v).position;
        if (const NodeId p = state.goal.node(v).parent; p != kNoNode) {
            adjacency[v].push_back(p);
            adjacency[p].push_back(v);
        }
    }
    for (NodeId v = 0; v < state.init.size(); ++v) {
        const std::size_t u = vertex_of_init(v);
        if (v != state.init_meet) {
            position[u] = state.init.node(v).position;
        }
        if (const NodeId p = state.init.node(v).parent; p != kNoNode) {
            const std::size_t w = vertex_of_init(p);
            adjacency[u].push_back(w);
            adjacency[w].push_back(u);
        }
    }

    // Breadth-first from the goal root keeps parent ids below child ids.
    RerootedTree out{Tree(position[0]), kNoNode};
    std::vector<NodeId> new_id(total, kNoNode);
    new_id[0] = 0;
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t w : adjacency[u]) {
            if (new_id[w] == kNoNode) {
                new_id[w] = out.tree.add(position[w], new_id[u]);
                queue.push_back(w);
            }
        }
    }
    out.robot_node = new_id[vertex_of_init(0)];
    return out;
}

}  // namespace replan
