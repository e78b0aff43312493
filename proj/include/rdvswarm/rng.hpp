#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rdvswarm {

/// 64-bit finalizer used when deriving independent work-unit seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for one unit of work (sweep cell run, comparison trial) derived from
/// the base seed via chained splitmix64 rounds. Platform-independent.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t h = splitmix64(base);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    return h;
}

/// One run's random stream. Doubles come from the top 53 bits of the
/// mt19937_64 output, so identical seeds give identical streams on every
/// platform.
class RunRng {
public:
    explicit RunRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [low, high).
    double uniform(double low, double high) { return low + (high - low) * uniform01(); }

    /// Standard normal via Box-Muller; consumes two uniform draws.
    double normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(kTwoPi * u2);
    }

private:
    static constexpr double kTwoPi = 6.283185307179586476925286766559;
    std::mt19937_64 engine_;
};

}  // namespace rdvswarm
