// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace virasoro {

// SplitMix64 step; used to expand seeds and derive child stream seeds.
inline std::uint64_t splitmix64(std::uint64_t &state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic RNG stream. Child streams are derived from (master, counter)
// so independent tasks can draw without sharing state; doubles are built
// explicitly from the top 53 bits so sequences are identical across platforms.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : eng_(expand(seed)) {}

    static RngStream child(std::uint64_t master, std::uint64_t counter) {
        std::uint64_t s = master;
        std::uint64_t a = splitmix64(s);
        s ^= counter * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL;
        std::uint64_t b = splitmix64(s);
        return RngStream(a ^ (b + counter));
    }

    std::uint64_t bits() { return eng_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [0, n).
    std::uint64_t integer(std::uint64_t n) {
        // Rejection sampling keeps the distribution exact for any n.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    double gaussian() {
        // Marsaglia polar method on explicit uniforms (platform-stable).
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

  private:
    static std::mt19937_64 expand(std::uint64_t seed) {
        // Seed the full mt19937_64 state through SplitMix64 so nearby seeds
        // give unrelated streams.
        std::uint64_t s = seed;
        std::seed_seq seq{splitmix64(s), splitmix64(s), splitmix64(s), splitmix64(s)};
        return std::mt19937_64(seq);
    }

    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace virasoro
