// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#include <doctest.h>

#include <cmath>
#include <set>

#include "virasoro/core/bits.hpp"
#include "virasoro/core/errors.hpp"
#include "virasoro/core/rng.hpp"

using namespace virasoro;

TEST_CASE("splitmix64 is deterministic and non-constant") {
    std::uint64_t s1 = 42, s2 = 42;
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 16; ++i) {
        const auto a = splitmix64(s1);
        CHECK(a == splitmix64(s2));
        seen.insert(a);
    }
    CHECK(seen.size() == 16);
}

TEST_CASE("RngStream replays exactly from the same seed") {
    RngStream a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());
}

TEST_CASE("child streams differ from each other and from the parent") {
    RngStream parent(7);
    RngStream c0 = RngStream::child(7, 0);
    RngStream c1 = RngStream::child(7, 1);
    CHECK(parent.bits() != c0.bits());
    CHECK(c0.bits() != c1.bits());
    // Same counter replays.
    RngStream c0b = RngStream::child(7, 0);
    RngStream c0c = RngStream::child(7, 0);
    CHECK(c0b.bits() == c0c.bits());
}

TEST_CASE("uniform01 lies in [0,1) with sane moments") {
    RngStream rng(99);
    double sum = 0, sum2 = 0;
    const int N = 200000;
    for (int i = 0; i < N; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
        sum2 += u * u;
    }
    const double mean = sum / N;
    const double var = sum2 / N - mean * mean;
    CHECK(std::abs(mean - 0.5) < 5e-3);
    CHECK(std::abs(var - 1.0 / 12) < 5e-3);
}

TEST_CASE("integer(n) is unbiased over small n") {
    RngStream rng(5);
    const int n = 7, N = 70000;
    std::vector<int> hist(n, 0);
    for (int i = 0; i < N; ++i) {
        const auto v = rng.integer(n);
        REQUIRE(v < static_cast<std::uint64_t>(n));
        ++hist[v];
    }
    for (int c : hist) CHECK(std::abs(c - N / n) < 600);
}

TEST_CASE("gaussian has mean 0 and variance 1") {
    RngStream rng(17);
    double sum = 0, sum2 = 0;
    const int N = 200000;
    for (int i = 0; i < N; ++i) {
        const double g = rng.gaussian();
        sum += g;
        sum2 += g * g;
    }
    CHECK(std::abs(sum / N) < 1e-2);
    CHECK(std::abs(sum2 / N - 1.0) < 2e-2);
}

TEST_CASE("bit helpers") {
    CHECK(popcount(0b1011u) == 3);
    CHECK(bit_parity(0b1011u) == 1);
    CHECK(bit_parity(0b1001u) == 0);
    CHECK(bit_at(0b100u, 2));
    CHECK_FALSE(bit_at(0b100u, 1));
    CHECK(bit_reverse(0b001u, 3) == 0b100u);
    CHECK(bit_reverse(0b110u, 3) == 0b011u);
    CHECK(bit_reverse(0b1u, 1) == 0b1u);
    for (unsigned n = 1; n <= 10; ++n)
        for (bitstring x = 0; x < (bitstring(1) << n); ++x)
            CHECK(bit_reverse(bit_reverse(x, n), n) == x);
    CHECK(is_power_of_two(8u));
    CHECK_FALSE(is_power_of_two(12u));
    CHECK(log2_exact(64u) == 6);
}

TEST_CASE("error types carry exit codes and stage prefixes") {
    CHECK(static_cast<int>(ExitCode::kOk) == 0);
    CHECK(static_cast<int>(ExitCode::kConfigError) == 2);
    CHECK(static_cast<int>(ExitCode::kNumericalError) == 3);
    CHECK_THROWS_AS(throw ConfigError("x"), ConfigError);
    CHECK_THROWS_AS(throw NumericalError("y"), NumericalError);
    try {
        with_stage("prepare", [] { throw ConfigError("bad knob"); });
        FAIL("unreachable");
    } catch (const ConfigError &e) {
        CHECK(std::string(e.what()).find("prepare") != std::string::npos);
        CHECK(std::string(e.what()).find("bad knob") != std::string::npos);
    }
}
