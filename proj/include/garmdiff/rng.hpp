#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace garmdiff {

// Deterministic random stream. mt19937_64 output is fully specified by the
// standard; the uniform and Gaussian transforms below are fixed here instead
// of using std::*_distribution, whose algorithms are implementation-defined.
// Reproducibility contracts (byte-identical artifacts under a fixed seed)
// depend on this.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed), seed_(seed) {}

    uint64_t raw() { return eng_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi]. Bias is < 2^-53 for the ranges used here.
    int64_t integer(int64_t lo, int64_t hi) {
        int64_t v = lo + static_cast<int64_t>(uniform() * static_cast<double>(hi - lo + 1));
        return v > hi ? hi : v;
    }

    // Standard normal via Box-Muller. Always consumes exactly two draws.
    double normal() {
        const double u1 = static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53; // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Derived stream, decorrelated from the parent seed by splitmix64.
    Rng fork(uint64_t stream) const { return Rng(hashCombine(seed_, stream)); }

    static uint64_t hashCombine(uint64_t a, uint64_t b) {
        uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 1);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 eng_;
    uint64_t seed_;
};

} // namespace garmdiff
