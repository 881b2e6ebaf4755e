#include <fstream>
#include <sstream>

#include <json.hpp>

#include "replan/world.hpp"

namespace replan {
namespace {

using nlohmann::json;
using Kind = ScenarioError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& field, const std::string& message) {
    throw ScenarioError(kind, field, message);
}

const json& require(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) {
        fail(Kind::Parse, key, "missing key");
    }
    return *it;
}

double number(const json& v, const std::string& field) {
    if (!v.is_number()) {
        fail(Kind::Parse, field, "expected a number");
    }
    return v.get<double>();
}

Point2 point(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 2) {
        fail(Kind::Parse, field, "expected [x, y]");
    }
    return {number(v[0], field), number(v[1], field)};
}

Rect rect(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 4) {
        fail(Kind::Parse, field, "expected [min_x, min_y, max_x, max_y]");
    }
    return {{number(v[0], field), number(v[1], field)}, {number(v[2], field), number(v[3], field)}};
}

ObstacleKind kind_of(const json& v, const std::string& field) {
    if (!v.is_string()) {
        fail(Kind::Parse, field, "expected a string");
    }
    const auto s = v.get<std::string>();
    if (s == "static") return ObstacleKind::Static;
    if (s == "moving") return ObstacleKind::Moving;
    if (s == "appearing") return ObstacleKind::Appearing;
    fail(Kind::Parse, field, "unknown obstacle kind '" + s + "'");
}

json rect_json(const Rect& r) { return json::array({r.min.x, r.min.y, r.max.x, r.max.y}); }

bool finite_rect(const Rect& r) { return is_finite(r.min) && is_finite(r.max); }

void check_rect(const Rect& r, const std::string& field) {
    if (!finite_rect(r)) {
        fail(Kind::Validation, field, "non-finite coordinate");
    }
    if (r.min.x > r.max.x || r.min.y > r.max.y) {
        fail(Kind::Validation, field, "min exceeds max");
    }
}

void check_free(const Scenario& s, Point2 p, const std::string& field) {
    if (!is_finite(p)) {
        fail(Kind::Validation, field, "non-finite coordinate");
    }
    if (!point_in_rect(p, s.bounds)) {
        fail(Kind::Validation, field, "outside bounds");
    }
    for (std::size_t i = 0; i < s.walls.size(); ++i) {
        if (point_in_rect(p, s.walls[i].inflated(s.robot_half_extent))) {
            fail(Kind::Validation, field, "inside walls[" + std::to_string(i) + "]");
        }
    }
    for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
        const ObstacleSpec& o = s.obstacles[i];
        const bool active_at_start = o.kind != ObstacleKind::Appearing || o.spawn_tick <= 0;
        if (active_at_start && point_in_rect(p, o.shape.inflated(s.robot_half_extent))) {
            fail(Kind::Validation, field, "overlaps obstacles[" + std::to_string(i) + "]");
        }
    }
}

}  // namespace

void validate_scenario(const Scenario& s) {
    check_rect(s.bounds, "bounds");
    if (!(s.robot_speed > 0.0) || !std::isfinite(s.robot_speed)) {
        fail(Kind::Validation, "robot_speed", "must be positive");
    }
    if (!(s.robot_half_extent >= 0.0) || !std::isfinite(s.robot_half_extent)) {
        fail(Kind::Validation, "robot_half_extent", "must be non-negative");
    }
    if (!(s.cutoff_s > 0.0) || !std::isfinite(s.cutoff_s)) {
        fail(Kind::Validation, "cutoff_s", "must be positive");
    }
    if (!(s.planning_budget_s > 0.0) || !std::isfinite(s.planning_budget_s)) {
        fail(Kind::Validation, "planning_budget_s", "must be positive");
    }
    if (s.plan_iterations == 0) {
        fail(Kind::Validation, "plan_iterations", "must be positive");
    }
    for (std::size_t i = 0; i < s.walls.size(); ++i) {
        const std::string field = "walls[" + std::to_string(i) + "]";
        check_rect(s.walls[i], field);
        if (!s.bounds.contains(s.walls[i])) {
            fail(Kind::Validation, field, "outside bounds");
        }
    }
    for (std::size_t i = 0; i < s.obstacles.size(); ++i) {
        const ObstacleSpec& o = s.obstacles[i];
        const std::string field = "obstacles[" + std::to_string(i) + "]";
        check_rect(o.shape, field + ".rect");
        if (!s.bounds.contains(o.shape)) {
            fail(Kind::Validation, field + ".rect", "outside bounds");
        }
        if (o.kind == ObstacleKind::Moving) {
            // Relative tolerance absorbs decimal round-off in documents.
            const double lo = 0.10 * s.robot_speed * (1.0 - 1e-9);
            const double hi = 0.55 * s.robot_speed * (1.0 + 1e-9);
            if (!(o.speed >= lo && o.speed <= hi)) {
                fail(Kind::Validation, field + ".speed", "must lie in [0.10, 0.55] x robot_speed");
            }
            for (const Rect& wall : s.walls) {
                if (wall.overlaps_interior(o.shape)) {
                    fail(Kind::Validation, field + ".rect", "moving obstacle starts inside a wall");
                }
            }
        }
        if (o.kind == ObstacleKind::Appearing && o.spawn_tick < 0) {
            fail(Kind::Validation, field + ".spawn_tick", "must be non-negative");
        }
    }
    check_free(s, s.start, "start");
    check_free(s, s.goal, "goal");
    if (s.start == s.goal) {
        fail(Kind::Validation, "goal", "equals start");
    }
}

Scenario parse_scenario(std::string_view document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        fail(Kind::Parse, "document", e.what());
    }
    if (!doc.is_object()) {
        fail(Kind::Parse, "document", "expected a JSON object");
    }

    Scenario s;
    const json& name = require(doc, "name");
    if (!name.is_string()) {
        fail(Kind::Parse, "name", "expected a string");
    }
    s.name = name.get<std::string>();
    s.bounds = rect(require(doc, "bounds"), "bounds");

    const json& walls = require(doc, "walls");
    if (!walls.is_array()) {
        fail(Kind::Parse, "walls", "expected an array");
    }
    for (std::size_t i = 0; i < walls.size(); ++i) {
        s.walls.push_back(rect(walls[i], "walls[" + std::to_string(i) + "]"));
    }

    const json& obstacles = require(doc, "obstacles");
    if (!obstacles.is_array()) {
        fail(Kind::Parse, "obstacles", "expected an array");
    }
    for (std::size_t i = 0; i < obstacles.size(); ++i) {
        const std::string field = "obstacles[" + std::to_string(i) + "]";
        const json& entry = obstacles[i];
        if (!entry.is_object()) {
            fail(Kind::Parse, field, "expected an object");
        }
        ObstacleSpec o;
        o.kind = kind_of(require(entry, "kind"), field + ".kind");
        o.shape = rect(require(entry, "rect"), field + ".rect");
        if (auto it = entry.find("speed"); it != entry.end()) {
            o.speed = number(*it, field + ".speed");
        } else if (o.kind == ObstacleKind::Moving) {
            fail(Kind::Parse, field + ".speed", "missing key");
        }
        if (auto it = entry.find("spawn_tick"); it != entry.end()) {
            if (!it->is_number_integer()) {
                fail(Kind::Parse, field + ".spawn_tick", "expected an integer");
            }
            o.spawn_tick = it->get<std::int64_t>();
        } else if (o.kind == ObstacleKind::Appearing) {
            fail(Kind::Parse, field + ".spawn_tick", "missing key");
        }
        if (auto it = entry.find("motion_seed"); it != entry.end()) {
            if (!it->is_number_unsigned()) {
                fail(Kind::Parse, field + ".motion_seed", "expected a non-negative integer");
            }
            o.motion_seed = it->get<std::uint64_t>();
        } else {
            o.motion_seed = i;
        }
        s.obstacles.push_back(o);
    }

    s.start = point(require(doc, "start"), "start");
    s.goal = point(require(doc, "goal"), "goal");
    s.robot_speed = number(require(doc, "robot_speed"), "robot_speed");
    s.robot_half_extent = number(require(doc, "robot_half_extent"), "robot_half_extent");
    s.cutoff_s = number(require(doc, "cutoff_s"), "cutoff_s");
    s.planning_budget_s = number(require(doc, "planning_budget_s"), "planning_budget_s");
    if (auto it = doc.find("plan_iterations"); it != doc.end()) {
        if (!it->is_number_unsigned()) {
            fail(Kind::Parse, "plan_iterations", "expected a positive integer");
        }
        s.plan_iterations = it->get<std::size_t>();
    }

    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        fail(Kind::Parse, "document", "cannot open " + file.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string scenario_to_json(const Scenario& s) {
    json doc;
    doc["name"] = s.name;
    doc["bounds"] = rect_json(s.bounds);
    doc["walls"] = json::array();
    for (const Rect& w : s.walls) {
        doc["walls"].push_back(rect_json(w));
    }
    doc["obstacles"] = json::array();
    for (const ObstacleSpec& o : s.obstacles) {
        json entry{{"kind", to_string(o.kind)}, {"rect", rect_json(o.shape)}, {"motion_seed", o.motion_seed}};
        if (o.kind == ObstacleKind::Moving) {
            entry["speed"] = o.speed;
        }
        if (o.kind == ObstacleKind::Appearing) {
            entry["spawn_tick"] = o.spawn_tick;
        }
        doc["obstacles"].push_back(entry);
    }
    doc["start"] = {s.start.x, s.start.y};
    doc["goal"] = {s.goal.x, s.goal.y};
    doc["robot_speed"] = s.robot_speed;
    doc["robot_half_extent"] = s.robot_half_extent;
    doc["cutoff_s"] = s.cutoff_s;
    doc["planning_budget_s"] = s.planning_budget_s;
    doc["plan_iterations"] = s.plan_iterations;
    return doc.dump(2);
}

}  // namespace replan
