#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>

namespace replan {

/// Seeded draw stream used by planners and the world simulator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Real-valued draws are built from raw engine bits rather than
/// std::uniform_real_distribution so sequences are identical across
/// standard library implementations.
class PlannerRng {
public:
    explicit PlannerRng(std::uint64_t seed) : engine_(mix(seed)) {}

    /// Independent stream for (seed, stream) pairs, e.g. one per obstacle.
    static PlannerRng derive(std::uint64_t seed, std::uint64_t stream) {
        return PlannerRng(mix(seed) ^ mix(stream + 0x9e3779b97f4a7c15ULL));
    }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n); n must be positive.
    std::size_t index(std::size_t n) {
        // Rejection keeps the modulo unbiased.
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t draw = engine_();
        while (draw >= limit) {
            draw = engine_();
        }
        return static_cast<std::size_t>(draw % bound);
    }

    bool coin() { return (engine_() >> 63) != 0; }

private:
    // splitmix64 finalizer; spreads nearby seeds across the state space.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace replan
