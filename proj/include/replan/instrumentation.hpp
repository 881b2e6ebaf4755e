#pragma once

#include <cstdint>

namespace replan {

/// Per-trial work counters. These realize the "collision checks" and
/// "nearest-neighbour lookups" columns of the benchmark tables.
struct TrialCounters {
    std::uint64_t collision_checks = 0;
    std::uint64_t nn_lookups = 0;

    friend bool operator==(const TrialCounters&, const TrialCounters&) = default;
};

/// Binds a TrialCounters instance to the calling thread for the lifetime of
/// the scope. Scopes nest; the previous binding is restored on destruction.
/// Counting with no scope bound is a no-op.
class CounterScope {
public:
    explicit CounterScope(TrialCounters& counters) noexcept;
    ~CounterScope();

    CounterScope(const CounterScope&) = delete;
    CounterScope& operator=(const CounterScope&) = delete;

private:
    TrialCounters* previous_;
};

namespace instrumentation {

void count_collision_check() noexcept;
void count_nn_lookup() noexcept;

/// Monotone per-thread tally of every segment/rectangle test, independent of
/// any CounterScope. Tests use it as a shadow counter.
std::uint64_t thread_collision_invocations() noexcept;

}  // namespace instrumentation
}  // namespace replan
