#pragma once

#include <string>

#include "replan/replanners.hpp"

namespace replan::testing {

/// Empty when the tree is rooted, acyclic and every stored edge avoids the
/// snapshot's blockers; otherwise a description of the first violation.
inline std::string tree_violation(const Tree& t, const WorldState& world) {
    if (t.node(0).parent != kNoNode) {
        return "root has a parent";
    }
    for (NodeId v = 1; v < t.size(); ++v) {
        const NodeId p = t.node(v).parent;
        if (p >= v) {
            return "node " + std::to_string(v) + " has parent " + std::to_string(p);
        }
        if (segment_hits_any({t.node(p).position, t.node(v).position}, world.blockers())) {
            return "edge " + std::to_string(p) + "->" + std::to_string(v) + " collides";
        }
    }
    return {};
}

inline std::string planner_violation(const GoalTreePlanner& planner, const WorldState& world) {
    if (const Tree* t = planner.tree()) {
        if (auto v = tree_violation(*t, world); !v.empty()) {
            return "main tree: " + v;
        }
        if (planner.attach() != kNoNode && planner.attach() >= t->size()) {
            return "attach node out of range";
        }
    }
    if (const auto* mp = dynamic_cast<const MprrtPlanner*>(&planner)) {
        const Forest& f = mp->forest();
        if (f.size() > f.capacity()) {
            return "forest over capacity";
        }
        std::uint64_t last_stamp = 0;
        bool first = true;
        for (const Forest::Entry& e : f.entries()) {
            if (e.tree.size() < f.min_subtree()) {
                return "forest entry below minimum size";
            }
            if (!first && e.stamp <= last_stamp) {
                return "forest not in insertion order";
            }
            first = false;
            last_stamp = e.stamp;
            if (auto v = tree_violation(e.tree, world); !v.empty()) {
                return "forest entry: " + v;
            }
        }
    }
    return {};
}

}  // namespace replan::testing
