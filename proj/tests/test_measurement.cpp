// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "virasoro/core/rng.hpp"
#include "virasoro/diagonalize.hpp"
#include "virasoro/measurement.hpp"
#include "virasoro/models.hpp"

using namespace virasoro;

namespace {

Statevector random_state(std::size_t L, std::uint64_t seed) {
    RngStream rng(seed);
    Statevector psi(L);
    for (auto &a : psi.amps) a = cplx(rng.gaussian(), rng.gaussian());
    psi.normalize();
    return psi;
}

ProbabilityTable random_table(std::size_t L, std::uint64_t seed) {
    RngStream rng(seed);
    ProbabilityTable t(L, MeasBasis::Z, true);
    double sum = 0;
    for (auto &p : t.p) {
        p = rng.uniform01();
        sum += p;
    }
    for (auto &p : t.p) p /= sum;
    return t;
}

} // namespace

TEST_CASE("measured tables are normalized in both bases") {
    const Statevector psi = random_state(6, 3);
    for (MeasBasis b : {MeasBasis::Z, MeasBasis::X}) {
        const ProbabilityTable t = measure_basis(psi, b);
        CHECK(t.normalized);
        CHECK(t.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(t.min_entry() >= 0.0);
    }
}

TEST_CASE("x-basis measurement equals z-basis measurement after an h wall") {
    Statevector psi = random_state(5, 17);
    const ProbabilityTable tx = measure_basis(psi, MeasBasis::X);
    apply_h_wall(psi);
    const ProbabilityTable tz = measure_basis(psi, MeasBasis::Z);
    for (std::size_t i = 0; i < tx.dim(); ++i)
        CHECK(tx.p[i] == doctest::Approx(tz.p[i]).epsilon(1e-12));
}

TEST_CASE("basis states measure deterministically") {
    Statevector plus(3);
    apply_h_wall(plus); // |+++>
    const ProbabilityTable tz = measure_basis(plus, MeasBasis::Z);
    for (double p : tz.p) CHECK(p == doctest::Approx(0.125).epsilon(1e-12));
    const ProbabilityTable tx = measure_basis(plus, MeasBasis::X);
    CHECK(tx.p[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("marginals sum the traced-out bits") {
    const ProbabilityTable t = random_table(6, 5);
    const ProbabilityTable m = marginal(t, 2);
    CHECK(m.size == 2);
    CHECK(m.sum() == doctest::Approx(1.0).epsilon(1e-12));
    // Brute-force oracle.
    for (std::size_t lo = 0; lo < 4; ++lo) {
        double acc = 0;
        for (std::size_t hi = 0; hi < 16; ++hi) acc += t.p[(hi << 2) | lo];
        CHECK(m.p[lo] == doctest::Approx(acc).epsilon(1e-12));
    }
    // Full-size marginal is the identity.
    const ProbabilityTable full = marginal(t, 6);
    for (std::size_t i = 0; i < t.dim(); ++i)
        CHECK(full.p[i] == doctest::Approx(t.p[i]).epsilon(1e-12));
}

TEST_CASE("complement marginal matches rotating the traced block away") {
    const ProbabilityTable t = random_table(6, 9);
    const std::size_t l = 2;
    const ProbabilityTable comp = complement_marginal(t, l);
    const ProbabilityTable rot = marginal(rotate_table(t, t.size - l), t.size - l);
    REQUIRE(comp.dim() == rot.dim());
    for (std::size_t i = 0; i < comp.dim(); ++i)
        CHECK(comp.p[i] == doctest::Approx(rot.p[i]).epsilon(1e-12));
}

TEST_CASE("marginal range checks") {
    const ProbabilityTable t = random_table(4, 1);
    CHECK_THROWS_AS(marginal(t, 0), ConfigError);
    CHECK_THROWS_AS(marginal(t, 5), ConfigError);
    CHECK_THROWS_AS(complement_marginal(t, 4), ConfigError);
    ProbabilityTable raw(3, MeasBasis::Z, false);
    CHECK_THROWS_AS(marginal(raw, 1), ConfigError);
}

TEST_CASE("rotate_table relabels sites cyclically") {
    ProbabilityTable t(2, MeasBasis::Z, true);
    t.p = {0.1, 0.2, 0.3, 0.4};
    const ProbabilityTable r = rotate_table(t, 1);
    CHECK(r.p[0] == doctest::Approx(0.1));
    CHECK(r.p[2] == doctest::Approx(0.2)); // bit 0 -> bit 1
    CHECK(r.p[1] == doctest::Approx(0.3)); // bit 1 -> bit 0
    CHECK(r.p[3] == doctest::Approx(0.4));
    // Full rotation is the identity.
    const ProbabilityTable full = rotate_table(t, 2);
    for (std::size_t i = 0; i < t.dim(); ++i) CHECK(full.p[i] == doctest::Approx(t.p[i]));
}

TEST_CASE("sampling is reproducible and respects the distribution") {
    const ProbabilityTable t = random_table(4, 21);
    const CountTable a = sample_counts(t, 20000, 42);
    const CountTable b = sample_counts(t, 20000, 42);
    CHECK(a.counts == b.counts);
    std::uint64_t total = 0;
    for (auto c : a.counts) total += c;
    CHECK(total == 20000);
    const ProbabilityTable back = counts_to_table(a);
    CHECK(back.sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < t.dim(); ++i) {
        const double se = std::sqrt(t.p[i] * (1 - t.p[i]) / 20000.0);
        CHECK(std::abs(back.p[i] - t.p[i]) < 6 * se + 1e-12);
    }
}

TEST_CASE("sampling rejects raw tables") {
    ProbabilityTable neg(2, MeasBasis::Z, true);
    neg.p = {0.6, 0.5, -0.1, 0.0};
    CHECK_THROWS_AS(sample_counts(neg, 10, 1), ConfigError);
    ProbabilityTable raw(2, MeasBasis::Z, false);
    raw.p = {0.25, 0.25, 0.25, 0.25};
    CHECK_THROWS_AS(sample_counts(raw, 10, 1), ConfigError);
    CountTable empty;
    CHECK_THROWS_AS(counts_to_table(empty), ConfigError);
}

TEST_CASE("shifted marginals of a ring ground-state table agree") {
    const auto H = build_tfi(8, 1.0, 1.0, Boundary::Periodic);
    const auto gs = ground_state(H);
    const ProbabilityTable t = measure_basis(gs.state, MeasBasis::Z);
    const ProbabilityTable base = marginal(t, 3);
    for (std::size_t s = 1; s < 8; ++s) {
        const ProbabilityTable shifted = marginal(rotate_table(t, s), 3);
        double tv = 0;
        for (std::size_t i = 0; i < base.dim(); ++i) tv += std::abs(base.p[i] - shifted.p[i]);
        CHECK(tv < 1e-9);
    }
}
