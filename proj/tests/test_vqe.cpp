// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#include <doctest.h>

#include <cmath>
#include <vector>

#include "virasoro/core/rng.hpp"
#include "virasoro/diagonalize.hpp"
#include "virasoro/matvec.hpp"
#include "virasoro/models.hpp"
#include "virasoro/vqe.hpp"

using namespace virasoro;

namespace {

std::vector<double> random_theta(std::size_t count, std::uint64_t seed) {
    RngStream rng(seed);
    std::vector<double> theta(count);
    for (auto &t : theta) t = rng.uniform(-1.5, 1.5);
    return theta;
}

} // namespace

TEST_CASE("engine state equals the explicit checkerboard circuit") {
    for (auto bc : {Boundary::Periodic, Boundary::Open}) {
        const auto H = build_tfi(6, 1.0, 1.0, bc);
        const CheckerboardEngine eng(H, 3);
        const auto theta = random_theta(eng.param_count(), 7);
        const Statevector fast = eng.state(theta);
        const Statevector slow = run(build_checkerboard(6, 3, theta, bc));
        CHECK(fidelity(fast, slow) > 1.0 - 1e-12);
        CHECK(std::abs(eng.cost(theta) - expectation(H, fast)) < 1e-10);
    }
}

TEST_CASE("engine rejects bad shapes") {
    const auto H = build_tfi(5, 1.0, 1.0, Boundary::Periodic);
    CHECK_THROWS_AS(CheckerboardEngine(H, 2), ConfigError); // odd ring
    const auto H6 = build_tfi(6, 1.0, 1.0, Boundary::Periodic);
    const CheckerboardEngine eng(H6, 2);
    std::vector<double> wrong(eng.param_count() + 1, 0.0);
    CHECK_THROWS_AS(eng.state(wrong), ConfigError);
    CHECK_THROWS_AS(eng.cost(wrong), ConfigError);
}

TEST_CASE("adjoint gradient matches central finite differences") {
    const auto tfi = build_tfi(6, 1.0, 1.0, Boundary::Periodic);
    const auto xxz = build_xxz(6, -0.5, Boundary::Periodic);
    for (const auto *H : {&tfi, &xxz}) {
        const CheckerboardEngine eng(*H, 2);
        const auto theta = random_theta(eng.param_count(), 13);
        std::vector<double> grad;
        const double f = eng.cost_grad(theta, grad);
        CHECK(std::abs(f - eng.cost(theta)) < 1e-10);
        REQUIRE(grad.size() == eng.param_count());
        const double h = 1e-5;
        double scale = 0;
        for (double g : grad) scale = std::max(scale, std::abs(g));
        for (std::size_t k = 0; k < theta.size(); ++k) {
            auto tp = theta, tm = theta;
            tp[k] += h;
            tm[k] -= h;
            const double fd = (eng.cost(tp) - eng.cost(tm)) / (2 * h);
            CHECK(std::abs(grad[k] - fd) < 1e-6 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("vqe energy respects the variational bound") {
    const auto H = build_tfi(6, 1.0, 1.0, Boundary::Periodic);
    const auto gs = ground_state(H);
    VqeConfig cfg;
    cfg.depth = 3;
    cfg.restarts = 2;
    cfg.seed = 3;
    const VqeResult r = solve_vqe(H, cfg, &gs);
    CHECK(r.energy >= gs.energy - 1e-9);
    CHECK(r.energy_rel_error < 1e-3);
    CHECK(r.state_fidelity > 0.99);
    CHECK(r.evaluations > 0);
    // Also for random parameter points, not just optima.
    const CheckerboardEngine eng(H, 3);
    for (std::uint64_t s = 1; s <= 5; ++s)
        CHECK(eng.cost(random_theta(eng.param_count(), s)) >= gs.energy - 1e-9);
}

TEST_CASE("optimization trace is non-increasing") {
    const auto H = build_tfi(4, 1.0, 1.0, Boundary::Periodic);
    VqeConfig cfg;
    cfg.depth = 2;
    cfg.restarts = 3;
    const VqeResult r = solve_vqe(H, cfg);
    REQUIRE(!r.trace.empty());
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        CHECK(r.trace[i].second <= r.trace[i - 1].second);
        CHECK(r.trace[i].first > r.trace[i - 1].first);
    }
    CHECK(r.trace.back().second == doctest::Approx(r.energy));
}

TEST_CASE("seeded restarts are reproducible") {
    const auto H = build_xxz(6, -0.5, Boundary::Periodic);
    VqeConfig cfg;
    cfg.depth = 2;
    cfg.restarts = 2;
    cfg.seed = 17;
    const VqeResult a = solve_vqe(H, cfg);
    const VqeResult b = solve_vqe(H, cfg);
    CHECK(a.energy == b.energy);
    CHECK(a.evaluations == b.evaluations);
    CHECK(a.best_restart == b.best_restart);
    REQUIRE(a.theta.size() == b.theta.size());
    for (std::size_t i = 0; i < a.theta.size(); ++i) CHECK(a.theta[i] == b.theta[i]);
}

TEST_CASE("gradient-free fallback reaches the same small instance") {
    const auto H = build_tfi(4, 1.0, 1.0, Boundary::Periodic);
    const auto gs = ground_state(H);
    VqeConfig cfg;
    cfg.depth = 2;
    cfg.restarts = 3;
    cfg.use_gradient = false;
    cfg.optimizer.max_evaluations = 60000;
    cfg.optimizer.improvement_window = 400;
    const VqeResult r = solve_vqe(H, cfg, &gs);
    CHECK(r.energy >= gs.energy - 1e-9);
    CHECK(r.energy_rel_error < 1e-2);
}

TEST_CASE("vqe config validation") {
    const auto H = build_tfi(4, 1.0, 1.0, Boundary::Periodic);
    VqeConfig cfg;
    cfg.restarts = 0;
    CHECK_THROWS_AS(solve_vqe(H, cfg), ConfigError);
    cfg.restarts = 1;
    cfg.init_scale = 0.0;
    CHECK_THROWS_AS(solve_vqe(H, cfg), ConfigError);
}
