#include "replan/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "replan/instrumentation.hpp"

namespace replan {
namespace {

// Keeps the planner's draw stream apart from the obstacle heading streams.
constexpr std::uint64_t kPlannerStream = 0x6a09e667f3bcc909ULL;

std::vector<Rect> active_obstacles(const WorldState& world) {
    std::vector<Rect> out;
    for (const ObstacleState& o : world.obstacles) {
        if (o.active) {
            out.push_back(o.rect);
        }
    }
    return out;
}

}  // namespace

TrialResult run_trial(const Scenario& scenario, Algorithm algorithm, std::uint64_t seed,
                      const TrialOptions& options) {
    const auto wall_start = std::chrono::steady_clock::now();
    TrialCounters counters;
    CounterScope scope(counters);

    WorldState world = WorldState::initial(scenario, seed);
    auto planner = make_planner(algorithm, world, seed ^ kPlannerStream, options.planner);
    const std::size_t iterations = options.plan_iterations.value_or(scenario.plan_iterations);
    const std::int64_t max_ticks = scenario.cutoff_ticks();

    std::optional<TrialTrace> trace;
    if (options.record_trace) {
        trace.emplace();
        trace->bounds = world.bounds;
        trace->walls = world.walls;
        trace->goal = world.goal;
        trace->trajectory.push_back(world.robot);
        trace->frames.push_back({0, active_obstacles(world)});
    }

    bool success = false;
    std::int64_t ticks = 0;
    Path held;
    while (ticks < max_ticks) {
        world = update_world(std::move(world));
        ++ticks;
        PlanBudget budget = options.wall_clock_budget
                                ? PlanBudget::wall_clock(std::chrono::duration<double>(scenario.planning_budget_s))
                                : PlanBudget::iterations(iterations);
        TickOutcome outcome = planner->tick(world, budget);
        if (outcome.path) {
            held = *outcome.path;
        }
        // Contact with an obstacle halts the robot in place.
        if (outcome.clear_to_move && outcome.path && !robot_collides(world)) {
            const RobotStep step = step_along(*outcome.path, world.robot_speed);
            world.robot = step.position;
            planner->robot_advanced(world, step.vertices_passed);
        }
        if (trace) {
            trace->trajectory.push_back(world.robot);
            if (options.trace_stride > 0 && ticks % static_cast<std::int64_t>(options.trace_stride) == 0) {
                trace->frames.push_back({ticks, active_obstacles(world)});
            }
        }
        if (distance(world.robot, world.goal) <= world.robot_half_extent) {
            success = true;
            break;
        }
    }

    TrialResult result;
    result.metrics.algorithm = std::string(to_string(algorithm));
    result.metrics.scenario = scenario.name;
    result.metrics.seed = seed;
    result.metrics.success = success;
    result.metrics.collision_checks = counters.collision_checks;
    result.metrics.nn_lookups = counters.nn_lookups;
    result.metrics.sim_time_s = static_cast<double>(ticks) * scenario.planning_budget_s;
    result.metrics.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    if (trace) {
        if (!success) {
            trace->final_path = held;
        }
        result.trace = std::move(trace);
    }
    return result;
}

std::vector<BatchSummary> summarize(std::span<const TrialMetrics> trials) {
    struct Acc {
        BatchSummary summary;
        double checks = 0.0;
        double lookups = 0.0;
        double sim = 0.0;
        double wall = 0.0;
    };
    std::vector<Acc> groups;
    for (const TrialMetrics& t : trials) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Acc& a) {
            return a.summary.algorithm == t.algorithm && a.summary.scenario == t.scenario;
        });
        if (it == groups.end()) {
            groups.push_back({});
            it = std::prev(groups.end());
            it->summary.algorithm = t.algorithm;
            it->summary.scenario = t.scenario;
        }
        ++it->summary.runs;
        if (t.success) {
            ++it->summary.successes;
            it->checks += static_cast<double>(t.collision_checks);
            it->lookups += static_cast<double>(t.nn_lookups);
            it->sim += t.sim_time_s;
            it->wall += t.wall_time_s;
        }
    }
    std::vector<BatchSummary> out;
    out.reserve(groups.size());
    for (Acc& a : groups) {
        BatchSummary& s = a.summary;
        s.success_pct = 100.0 * static_cast<double>(s.successes) / static_cast<double>(s.runs);
        if (s.successes > 0) {
            const auto n = static_cast<double>(s.successes);
            s.mean_collision_checks = a.checks / n;
            s.mean_nn_lookups = a.lookups / n;
            s.mean_sim_time_s = a.sim / n;
            s.mean_wall_time_s = a.wall / n;
        }
        out.push_back(s);
    }
    return out;
}

BatchResult run_batch(const Scenario& scenario, std::span<const Algorithm> algorithms, std::size_t runs,
                      std::uint64_t base_seed, std::size_t workers, const TrialOptions& options,
                      const std::function<void(const TrialResult&)>& on_trial) {
    const std::size_t jobs = algorithms.size() * runs;
    BatchResult result;
    result.trials.resize(jobs);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto work = [&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
            const Algorithm algorithm = algorithms[job / runs];
            const std::uint64_t seed = base_seed + job % runs;
            try {
                TrialResult r = run_trial(scenario, algorithm, seed, options);
                if (on_trial) {
                    on_trial(r);
                }
                result.trials[job] = std::move(r.metrics);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = jobs;
            }
        }
    };

    const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(jobs, 1));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back(work);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
    result.summaries = summarize(result.trials);
    return result;
}

}  // namespace replan
