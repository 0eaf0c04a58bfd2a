#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace rff {

inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ull;

// Fixed 64-bit finalizer (splitmix64 mix).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Per-task seed: base + golden ratio increment per linear index, mixed.
// Decorrelated, order-independent, reproducible.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t linear_index) {
    return mix64(base_seed + golden_gamma * linear_index);
}

// Deterministic draws on top of mt19937_64. The engine and the extraction
// below are fully pinned (no std::*_distribution, whose algorithms are
// implementation-defined), so identical seeds give identical streams on
// every platform and at every parallelism degree.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * unit(); }

    // Standard normal via Box-Muller, spare value cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        const double u2    = unit();
        const double rad   = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_      = rad * std::sin(angle);
        have_spare_ = true;
        return rad * std::cos(angle);
    }

    std::uint64_t next_u64() { return eng_(); }

private:
    std::mt19937_64 eng_;
    double spare_    = 0.0;
    bool have_spare_ = false;
};

} // namespace rff
