#include "replan/planner.hpp"

#include "replan/multistage.hpp"
#include "replan/replanners.hpp"

namespace replan {

std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::Multistage: return "multistage";
        case Algorithm::Drrt: return "drrt";
        case Algorithm::Mprrt: return "mprrt";
    }
    return "multistage";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    if (name == "multistage" || name == "multi-stage") return Algorithm::Multistage;
    if (name == "drrt") return Algorithm::Drrt;
    if (name == "mprrt" || name == "mp-rrt") return Algorithm::Mprrt;
    return std::nullopt;
}

std::unique_ptr<Planner> make_planner(Algorithm algorithm, const WorldState& initial, std::uint64_t seed,
                                      const PlannerConfig& config) {
    switch (algorithm) {
        case Algorithm::Multistage: return std::make_unique<MultistagePlanner>(initial, seed, config);
        case Algorithm::Drrt: return std::make_unique<DrrtPlanner>(initial, seed, config);
        case Algorithm::Mprrt: return std::make_unique<MprrtPlanner>(initial, seed, config);
    }
    return nullptr;
}

}  // namespace replan
