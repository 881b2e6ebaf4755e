#include "replan/instrumentation.hpp"

namespace replan {
namespace {

thread_local TrialCounters* active_counters = nullptr;
thread_local std::uint64_t collision_invocations = 0;

}  // namespace

CounterScope::CounterScope(TrialCounters& counters) noexcept : previous_(active_counters) {
    active_counters = &counters;
}

CounterScope::~CounterScope() { active_counters = previous_; }

namespace instrumentation {

void count_collision_check() noexcept {
    ++collision_invocations;
    if (active_counters != nullptr) {
        ++active_counters->collision_checks;
    }
}

void count_nn_lookup() noexcept {
    if (active_counters != nullptr) {
        ++active_counters->nn_lookups;
    }
}

std::uint64_t thread_collision_invocations() noexcept { return collision_invocations; }

}  // namespace instrumentation
}  // namespace replan
