#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace tensorrank {

/// Seeded generator with platform-independent outputs: mt19937_64 bits are
/// mapped to doubles by hand, so the same seed yields the same fixtures
/// under every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t bits() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v;
        do v = engine_();
        while (v >= limit);
        return lo + static_cast<std::int64_t>(v % span);
    }

    /// Standard normal (Box-Muller, one draw per call).
    double normal() {
        double u1;
        do u1 = uniform();
        while (u1 == 0.0);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace tensorrank
