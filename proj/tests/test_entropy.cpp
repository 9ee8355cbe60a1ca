// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "virasoro/core/rng.hpp"
#include "virasoro/diagonalize.hpp"
#include "virasoro/entropy.hpp"
#include "virasoro/models.hpp"

using namespace virasoro;

namespace {

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

Statevector random_state(std::size_t L, std::uint64_t seed) {
    RngStream rng(seed);
    Statevector psi(L);
    for (auto &a : psi.amps) a = cplx(rng.gaussian(), rng.gaussian());
    psi.normalize();
    return psi;
}

} // namespace

TEST_CASE("shannon_renyi closed forms") {
    ProbabilityTable uniform(2, MeasBasis::Z, true);
    uniform.p = {0.25, 0.25, 0.25, 0.25};
    for (double n : {0.5, 1.0, 2.0, 4.0})
        CHECK(shannon_renyi(uniform, n) == doctest::Approx(std::log(4.0)).epsilon(1e-12));

    ProbabilityTable delta(2, MeasBasis::Z, true);
    delta.p = {0, 0, 1, 0};
    for (double n : {0.5, 1.0, 2.0})
        CHECK(shannon_renyi(delta, n) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(shannon_renyi(uniform, 0.0), ConfigError);
    CHECK_THROWS_AS(shannon_renyi(uniform, -1.0), ConfigError);
}

TEST_CASE("renyi entropy is continuous across the n=1 dispatch") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const ProbabilityTable t = random_table(5, seed);
        const double s1 = shannon_renyi(t, 1.0);
        CHECK(std::abs(shannon_renyi(t, 1.0 + 1e-6) - s1) < 1e-4);
        CHECK(std::abs(shannon_renyi(t, 1.0 - 1e-6) - s1) < 1e-4);
    }
}

TEST_CASE("renyi entropy is non-increasing in the moment") {
    const double grid[] = {0.5, 1.0, 2.0, 4.0, 8.0};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ProbabilityTable t = random_table(6, seed);
        double prev = shannon_renyi(t, grid[0]);
        for (std::size_t i = 1; i < 5; ++i) {
            const double cur = shannon_renyi(t, grid[i]);
            CHECK(cur <= prev + 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("renyi difference is symmetric in the block split by construction") {
    for (std::uint64_t seed : {4ull, 5ull}) {
        const ProbabilityTable t = random_table(7, seed);
        for (double n : {1.0, 2.0, 4.0})
            for (std::size_t l = 1; l < 7; ++l)
                CHECK(renyi_difference(t, l, n) == renyi_difference(t, 7 - l, n));
    }
    const ProbabilityTable t = random_table(4, 6);
    CHECK_THROWS_AS(renyi_difference(t, 0, 2.0), ConfigError);
    CHECK_THROWS_AS(renyi_difference(t, 4, 2.0), ConfigError);
}

TEST_CASE("renyi difference closed forms") {
    // Identical independent bits: block entropies are proportional to block
    // length, so the difference vanishes.
    ProbabilityTable prod(3, MeasBasis::Z, true);
    const double q = 0.3;
    for (std::size_t b = 0; b < 8; ++b) {
        double p = 1;
        for (std::size_t i = 0; i < 3; ++i) p *= bit_at(b, static_cast<unsigned>(i)) ? q : 1 - q;
        prod.p[b] = p;
    }
    for (double n : {1.0, 2.0, 3.0})
        for (std::size_t l : {std::size_t(1), std::size_t(2)})
            CHECK(renyi_difference(prod, l, n) == doctest::Approx(0.0).epsilon(1e-12));

    // Perfectly correlated bits: every term is ln 2.
    ProbabilityTable ghz(4, MeasBasis::Z, true);
    ghz.p[0] = 0.5;
    ghz.p[15] = 0.5;
    for (double n : {1.0, 2.0, 6.0})
        for (std::size_t l = 1; l < 4; ++l)
            CHECK(renyi_difference(ghz, l, n) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("shifted blocks of a ring state have equal entropies") {
    const auto H = build_xxz(8, -0.5, Boundary::Periodic);
    const auto gs = ground_state(H);
    const ProbabilityTable t = measure_basis(gs.state, MeasBasis::Z);
    for (std::size_t l : {std::size_t(2), std::size_t(3), std::size_t(4)}) {
        const double base = shannon_renyi(marginal(t, l), 2.0);
        for (std::size_t s = 1; s < 8; ++s) {
            const double shifted = shannon_renyi(marginal(rotate_table(t, s), l), 2.0);
            CHECK(std::abs(shifted - base) < 1e-9);
        }
    }
}

TEST_CASE("reduced density matrices are hermitian unit-trace and PSD") {
    const Statevector psi = random_state(6, 11);
    for (std::size_t l = 1; l < 6; ++l) {
        const auto rdm = reduced_density_matrix(psi, l);
        CHECK((rdm.rho - rdm.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(std::abs(rdm.rho.trace().real() - 1.0) < 1e-10);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rdm.rho, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
    }
    CHECK_THROWS_AS(reduced_density_matrix(psi, 0), ConfigError);
    CHECK_THROWS_AS(reduced_density_matrix(psi, 6), ConfigError);
}

TEST_CASE("bell pair closed forms") {
    Statevector bell(2);
    bell.amps = {1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0)};
    const auto rdm = reduced_density_matrix(bell, 1);
    CHECK(std::abs(rdm.rho(0, 0).real() - 0.5) < 1e-12);
    CHECK(std::abs(rdm.rho(1, 1).real() - 0.5) < 1e-12);
    CHECK(std::abs(rdm.rho(0, 1)) < 1e-12);
    for (double n : {1.0, 2.0, 5.0})
        CHECK(entanglement_renyi(rdm, n) == doctest::Approx(std::log(2.0)).epsilon(1e-10));

    ProbabilityTable t(2, MeasBasis::Z, true);
    t.p = {0.5, 0, 0, 0.5};
    const Statevector rec = reconstruct_stoquastic(t);
    CHECK(fidelity(rec, bell) > 1.0 - 1e-12);
}

TEST_CASE("entanglement entropies obey Schmidt symmetry") {
    // The complement of the anchored block [0,l) is the suffix [l,L); its
    // reduced state is the anchored block of the site-reversed state.
    const Statevector psi = random_state(7, 23);
    Statevector rev(7);
    for (std::size_t b = 0; b < psi.dim(); ++b) {
        std::size_t r = 0;
        for (unsigned q = 0; q < 7; ++q)
            if (bit_at(b, q)) r |= std::size_t(1) << (6 - q);
        rev.amps[r] = psi.amps[b];
    }
    for (double n : {1.0, 2.0, 3.0})
        for (std::size_t l = 1; l < 7; ++l) {
            const double a = entanglement_renyi(reduced_density_matrix(psi, l), n);
            const double b = entanglement_renyi(reduced_density_matrix(rev, 7 - l), n);
            CHECK(std::abs(a - b) < 1e-9);
        }
}

TEST_CASE("eigenvalue and matrix-power renyi entropies agree") {
    const Statevector psi = random_state(6, 31);
    for (std::size_t l : {std::size_t(2), std::size_t(3)}) {
        const auto rdm = reduced_density_matrix(psi, l);
        for (int n : {2, 3, 4}) {
            Eigen::MatrixXcd pw = rdm.rho;
            for (int k = 1; k < n; ++k) pw = pw * rdm.rho;
            const double direct = std::log(pw.trace().real()) / (1.0 - n);
            CHECK(std::abs(entanglement_renyi(rdm, n) - direct) < 1e-9);
        }
    }
}

TEST_CASE("product reduced states carry zero entropy") {
    Statevector prod(3); // |000>
    const auto rdm = reduced_density_matrix(prod, 1);
    CHECK(entanglement_renyi(rdm, 2.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(entanglement_renyi(rdm, 0.0), ConfigError);
}

TEST_CASE("stoquastic reconstruction recovers sign-free ground states") {
    const auto H = build_tfi(8, 1.0, 1.0, Boundary::Periodic);
    const auto gs = ground_state(H);
    const ProbabilityTable t = measure_basis(gs.state, MeasBasis::Z);
    const Statevector rec = reconstruct_stoquastic(t);
    CHECK(fidelity(rec, gs.state) > 1.0 - 1e-10);

    ProbabilityTable neg(1, MeasBasis::Z, true);
    neg.p = {1.1, -0.1};
    CHECK_THROWS_AS(reconstruct_stoquastic(neg), ConfigError);
}

TEST_CASE("measuring cannot shed entropy below the entanglement floor") {
    for (auto bc : {Boundary::Open, Boundary::Periodic}) {
        const auto H = build_tfi(8, 1.0, 1.0, bc);
        const auto gs = ground_state(H);
        const ProbabilityTable t = measure_basis(gs.state, MeasBasis::Z);
        for (std::size_t l = 1; l < 8; ++l) {
            const double meas = shannon_renyi(marginal(t, l), 1.0);
            const double ent = entanglement_renyi(reduced_density_matrix(gs.state, l), 1.0);
            CHECK(meas >= ent - 1e-10);
        }
    }
}

TEST_CASE("connected correlators") {
    ProbabilityTable up(3, MeasBasis::Z, true);
    up.p[0] = 1.0;
    for (std::size_t r = 1; r < 3; ++r)
        CHECK(connected_correlator(up, r) == doctest::Approx(0.0).epsilon(1e-12));

    ProbabilityTable ghz(4, MeasBasis::Z, true);
    ghz.p[0] = 0.5;
    ghz.p[15] = 0.5;
    for (std::size_t r = 1; r < 4; ++r)
        CHECK(connected_correlator(ghz, r) == doctest::Approx(1.0).epsilon(1e-12));

    // Dense oracle on a random table.
    const ProbabilityTable t = random_table(5, 41);
    for (std::size_t r = 1; r < 5; ++r) {
        double zz = 0, z0 = 0, zr = 0;
        for (std::size_t b = 0; b < t.dim(); ++b) {
            const double s0 = bit_at(b, 0) ? -1.0 : 1.0;
            const double sr = bit_at(b, static_cast<unsigned>(r)) ? -1.0 : 1.0;
            zz += t.p[b] * s0 * sr;
            z0 += t.p[b] * s0;
            zr += t.p[b] * sr;
        }
        CHECK(connected_correlator(t, r) == doctest::Approx(zz - z0 * zr).epsilon(1e-12));
    }

    CHECK_THROWS_AS(connected_correlator(t, 5), ConfigError);
    ProbabilityTable x(2, MeasBasis::X, true);
    x.p = {1, 0, 0, 0};
    CHECK_THROWS_AS(connected_correlator(x, 1), ConfigError);
}
