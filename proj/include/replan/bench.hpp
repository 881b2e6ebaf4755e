#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "replan/planner.hpp"
#include "replan/world.hpp"

namespace replan {

/// One row of the raw results: the columns of the benchmark tables plus
/// the seed needed to replay the trial.
struct TrialMetrics {
    std::string algorithm;
    std::string scenario;
    std::uint64_t seed = 0;
    bool success = false;
    std::uint64_t collision_checks = 0;
    std::uint64_t nn_lookups = 0;
    double sim_time_s = 0.0;   // time to goal, or elapsed time at cutoff
    double wall_time_s = 0.0;

    friend bool operator==(const TrialMetrics&, const TrialMetrics&) = default;
};

/// Recorded geometry of a trial, for SVG rendering.
struct TrialTrace {
    struct Frame {
        std::int64_t tick = 0;
        std::vector<Rect> obstacles;  // active obstacles, not inflated
    };

    Rect bounds;
    std::vector<Rect> walls;
    Point2 goal;
    std::vector<Point2> trajectory;  // robot position per tick, tick 0 first
    std::vector<Frame> frames;       // obstacle snapshots every stride ticks
    Path final_path;                 // plan held at cutoff; empty on success
};

struct TrialOptions {
    PlannerConfig planner;
    /// Bound each tick by planning_budget_s of wall-clock time instead of
    /// the scenario's iteration count. Results are then machine-dependent.
    bool wall_clock_budget = false;
    std::optional<std::size_t> plan_iterations;  // overrides the scenario
    bool record_trace = false;
    std::size_t trace_stride = 40;
};

struct TrialResult {
    TrialMetrics metrics;
    std::optional<TrialTrace> trace;
};

/// Alternates world updates and planning until the robot is within its
/// half-extent of the goal or the cutoff elapses.
TrialResult run_trial(const Scenario& scenario, Algorithm algorithm, std::uint64_t seed,
                      const TrialOptions& options = {});

struct BatchSummary {
    std::string algorithm;
    std::string scenario;
    std::size_t runs = 0;
    std::size_t successes = 0;
    double success_pct = 0.0;
    // Means over successful runs; nullopt when there were none.
    std::optional<double> mean_collision_checks;
    std::optional<double> mean_nn_lookups;
    std::optional<double> mean_sim_time_s;
    std::optional<double> mean_wall_time_s;
};

/// Aggregates per (algorithm, scenario) in order of first appearance.
std::vector<BatchSummary> summarize(std::span<const TrialMetrics> trials);

struct BatchResult {
    std::vector<TrialMetrics> trials;  // algorithm-major, then seed order
    std::vector<BatchSummary> summaries;
};

/// Trial i of every algorithm uses seed base_seed + i, so all algorithms
/// face identical obstacle trajectories. `on_trial` (optional) is invoked
/// from worker threads as trials finish.
BatchResult run_batch(const Scenario& scenario, std::span<const Algorithm> algorithms, std::size_t runs,
                      std::uint64_t base_seed, std::size_t workers, const TrialOptions& options = {},
                      const std::function<void(const TrialResult&)>& on_trial = {});

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kRawCsvHeader =
    "algorithm,scenario,seed,success,coll_checks,nn_lookups,sim_time_s,wall_time_s";
inline constexpr const char* kSummaryCsvHeader =
    "algorithm,scenario,runs,success_pct,coll_checks,nn_lookups,sim_time_s,wall_time_s";

std::string raw_csv_row(const TrialMetrics& m);
void write_raw_csv(std::ostream& out, std::span<const TrialMetrics> trials);
void write_raw_csv(const std::filesystem::path& file, std::span<const TrialMetrics> trials);
std::vector<TrialMetrics> read_raw_csv(std::istream& in);
std::vector<TrialMetrics> read_raw_csv(const std::filesystem::path& file);

void write_summary_csv(std::ostream& out, std::span<const BatchSummary> summaries);
void write_summary_csv(const std::filesystem::path& file, std::span<const BatchSummary> summaries);

/// Plain-text table in the layout of the published result tables.
std::string format_table(std::span<const BatchSummary> summaries);

void write_trace_svg(std::ostream& out, const TrialTrace& trace);
void write_trace_svg(const std::filesystem::path& file, const TrialTrace& trace);

}  // namespace replan
