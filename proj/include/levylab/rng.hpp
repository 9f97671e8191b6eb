#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace levylab {

// Deterministic RNG used everywhere. Raw 64-bit draws come from mt19937_64
// (sequence fixed by the standard); the real-valued transforms are hand-rolled
// so results do not depend on libstdc++'s distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on (0,1]: never returns 0, may return exactly 1.
    double uniform_pos() {
        return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Uniform on [0,1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double exponential(double rate) { return -std::log(uniform_pos()) / rate; }

    // Standard normal, Box-Muller, pair cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = uniform_pos();
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        constexpr double two_pi = 6.28318530717958647692;
        spare_ = r * std::sin(two_pi * v);
        have_spare_ = true;
        return r * std::cos(two_pi * v);
    }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Stream for trajectory i derived from (seed, i); independent of how work is
// split across threads.
inline Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index + 1)));
}

} // namespace levylab
