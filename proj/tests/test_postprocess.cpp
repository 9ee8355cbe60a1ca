// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#include <doctest.h>

#include <cmath>

#include "virasoro/diagonalize.hpp"
#include "virasoro/entropy.hpp"
#include "virasoro/models.hpp"
#include "virasoro/postprocess.hpp"

using namespace virasoro;

TEST_CASE("sector membership") {
    CHECK(in_sector(SectorKind::None, 0b101, 3));
    CHECK(in_sector(SectorKind::EvenParity, 0b101, 3));
    CHECK_FALSE(in_sector(SectorKind::EvenParity, 0b100, 3));
    CHECK(in_sector(SectorKind::HalfFilling, 0b0101, 4));
    CHECK_FALSE(in_sector(SectorKind::HalfFilling, 0b0111, 4));
}

TEST_CASE("projection, cutoff, and renormalization on a hand example") {
    ProbabilityTable t(2, MeasBasis::Z, false);
    t.p = {0.55, 0.5, -0.05, 0.0};
    const ProbabilityTable proj = project_sector(t, SectorKind::HalfFilling);
    CHECK(proj.p[0] == 0.0);
    CHECK(proj.p[1] == doctest::Approx(0.5));
    CHECK(proj.p[2] == doctest::Approx(-0.05));
    CHECK(proj.p[3] == 0.0);
    CHECK_FALSE(proj.normalized);

    const double cutoff = compute_cutoff({proj});
    CHECK(cutoff == doctest::Approx(0.05).epsilon(1e-12));

    const ProbabilityTable out = cutoff_renormalize(proj, cutoff);
    CHECK(out.normalized);
    CHECK(out.p[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.p[2] == 0.0);
}

TEST_CASE("cutoff is the RMS of per-dataset worst negatives") {
    ProbabilityTable a(1, MeasBasis::Z, false), b(1, MeasBasis::Z, false);
    a.p = {1.05, -0.05};
    b.p = {1.0, 0.0};
    CHECK(compute_cutoff({a, b}) == doctest::Approx(0.05 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(compute_cutoff({}), ConfigError);
}

TEST_CASE("sector projection guards basis compatibility") {
    ProbabilityTable z(2, MeasBasis::Z, true);
    z.p = {0.25, 0.25, 0.25, 0.25};
    CHECK_THROWS_AS(project_sector(z, SectorKind::EvenParity), ConfigError);
    ProbabilityTable x(2, MeasBasis::X, true);
    x.p = {0.25, 0.25, 0.25, 0.25};
    CHECK_THROWS_AS(project_sector(x, SectorKind::HalfFilling), ConfigError);
    // None applies anywhere and changes nothing.
    const ProbabilityTable same = project_sector(z, SectorKind::None);
    CHECK(same.normalized);
    for (std::size_t i = 0; i < 4; ++i) CHECK(same.p[i] == z.p[i]);
}

TEST_CASE("post-processing is idempotent") {
    ProbabilityTable t(3, MeasBasis::Z, false);
    t.p = {0.2, 0.3, -0.02, 0.25, 0.3, -0.01, 0.05, 0.0};
    const ProbabilityTable once = cutoff_renormalize(t, 0.03);
    const ProbabilityTable twice = cutoff_renormalize(once, 0.03);
    for (std::size_t i = 0; i < t.dim(); ++i)
        CHECK(once.p[i] == doctest::Approx(twice.p[i]).epsilon(1e-14));
}

TEST_CASE("exact sector-pure tables are fixed points") {
    const auto H = build_xxz(6, -0.5, Boundary::Periodic);
    const auto gs = ground_state(H);
    const ProbabilityTable t = measure_basis(gs.state, MeasBasis::Z);
    const ProbabilityTable proj = project_sector(t, SectorKind::HalfFilling);
    // The ground state lives in the half-filling sector, so nothing is removed.
    CHECK(proj.normalized);
    const ProbabilityTable out = cutoff_renormalize(proj, 0.0);
    for (std::size_t i = 0; i < t.dim(); ++i)
        CHECK(out.p[i] == doctest::Approx(t.p[i]).epsilon(1e-12));
}

TEST_CASE("processing only removes weight") {
    ProbabilityTable t(2, MeasBasis::Z, false);
    t.p = {0.5, 0.4, -0.1, 0.3};
    const ProbabilityTable cut = cutoff_renormalize(t, 0.35);
    // Entries below the cutoff vanish; survivors keep relative proportions.
    CHECK(cut.p[2] == 0.0);
    CHECK(cut.p[3] == 0.0); // 0.3 < 0.35
    CHECK(cut.p[0] == doctest::Approx(0.5 / 0.9).epsilon(1e-12));
    CHECK(cut.p[1] == doctest::Approx(0.4 / 0.9).epsilon(1e-12));
    CHECK_THROWS_AS(cutoff_renormalize(t, -0.1), ConfigError);
    ProbabilityTable hopeless(1, MeasBasis::Z, false);
    hopeless.p = {-0.2, -0.1};
    CHECK_THROWS_AS(cutoff_renormalize(hopeless, 0.0), NumericalError);
}

TEST_CASE("bootstrap resamples deterministically into sector-pure tables") {
    Circuit c;
    c.size = 3;
    auto &wall = c.add_layer("wall");
    for (unsigned q = 0; q < 3; ++q) wall.gates.push_back(make_ry(q, 0.5 + 0.1 * q));
    c.add_layer("cz").gates.push_back(make_cz(0, 1));
    NoiseModel m;
    m.layers["cz"] = {{PauliString::parse("XII"), 0.9}};
    PecConfig cfg;
    cfg.samples = 300;
    cfg.shots = 8;
    cfg.seed = 44;
    const MitigatedRun run_ = collect_mitigated(c, m, MeasBasis::Z, cfg);

    const BootstrapEnsemble a = bootstrap(run_, SectorKind::None, 6, 200, 99);
    const BootstrapEnsemble b = bootstrap(run_, SectorKind::None, 6, 200, 99);
    REQUIRE(a.datasets.size() == 6);
    CHECK(a.resample_size == 200);
    CHECK(a.cutoff == b.cutoff);
    for (std::size_t d = 0; d < 6; ++d) {
        CHECK(a.datasets[d].normalized);
        CHECK(a.datasets[d].sum() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(a.datasets[d].min_entry() >= 0.0);
        for (std::size_t i = 0; i < a.datasets[d].dim(); ++i)
            CHECK(a.datasets[d].p[i] == b.datasets[d].p[i]);
    }
    // Different seeds resample differently.
    const BootstrapEnsemble other = bootstrap(run_, SectorKind::None, 6, 200, 100);
    double diff = 0;
    for (std::size_t i = 0; i < other.datasets[0].dim(); ++i)
        diff += std::abs(other.datasets[0].p[i] - a.datasets[0].p[i]);
    CHECK(diff > 0);

    CHECK_THROWS_AS(bootstrap(run_, SectorKind::None, 6, 301, 1), ConfigError);
    CHECK_THROWS_AS(bootstrap(run_, SectorKind::None, 0, 10, 1), ConfigError);
}

TEST_CASE("aggregate splits random and systematic errors") {
    const AggregateResult r = aggregate({1.0, 1.2}, {0.1, 0.1});
    CHECK(r.c == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(r.sigma_rand == doctest::Approx(std::sqrt(0.02)).epsilon(1e-9));
    CHECK(r.sigma_sys == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(r.sigma_total ==
          doctest::Approx(std::sqrt(0.02 + 0.01)).epsilon(1e-9));
    CHECK_THROWS_AS(aggregate({1.0}, {0.1}), ConfigError);
    CHECK_THROWS_AS(aggregate({1.0, 1.1}, {0.1}), ConfigError);
}
