// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "virasoro/checkerboard.hpp"
#include "virasoro/core/rng.hpp"
#include "virasoro/diagonalize.hpp"
#include "virasoro/matvec.hpp"
#include "virasoro/optimize.hpp"
#include "virasoro/statevector.hpp"

namespace virasoro {

// Dedicated kernels for the checkerboard ansatz: CZ walls become precomputed
// sign vectors and gradients come from one reverse sweep (adjoint method), so
// a full cost+gradient costs ~3 forward passes instead of one per parameter.
class CheckerboardEngine {
  public:
    CheckerboardEngine(const SpinHamiltonian &H, std::size_t depth)
        : L_(H.size), d_(depth), bc_(H.boundary), hmv_(H) {
        if (L_ < 2) throw ConfigError("checkerboard requires L >= 2");
        if (bc_ == Boundary::Periodic && L_ % 2 != 0)
            throw ConfigError("periodic checkerboard requires even L");
        const std::size_t dim = std::size_t(1) << L_;
        even_sign_.assign(dim, 1.0);
        odd_sign_.assign(dim, 1.0);
        auto fold_bond = [&](std::vector<double> &sign, unsigned a, unsigned b) {
            const std::size_t m = (std::size_t(1) << a) | (std::size_t(1) << b);
            for (std::size_t i = 0; i < dim; ++i)
                if ((i & m) == m) sign[i] = -sign[i];
        };
        for (unsigned q = 0; q + 1 < L_; q += 2) fold_bond(even_sign_, q, q + 1);
        for (unsigned q = 1; q + 1 < L_; q += 2) fold_bond(odd_sign_, q, q + 1);
        if (bc_ == Boundary::Periodic) fold_bond(odd_sign_, static_cast<unsigned>(L_ - 1), 0);
    }

    std::size_t size() const { return L_; }
    std::size_t depth() const { return d_; }
    std::size_t param_count() const { return checkerboard_param_count(L_, d_); }

    Statevector state(const std::vector<double> &theta) const {
        check_theta(theta);
        Statevector psi(L_);
        const double amp = std::pow(2.0, -0.5 * static_cast<double>(L_));
        for (cplx &a : psi.amps) a = amp; // H wall on |0...0>
        for (std::size_t l = 0; l < d_; ++l) {
            ry_wall(psi, theta, l, 0);
            wall_sign(psi, even_sign_);
            ry_wall(psi, theta, l, 1);
            wall_sign(psi, odd_sign_);
        }
        ry_wall(psi, theta, d_, 0);
        return psi;
    }

    double cost(const std::vector<double> &theta) const {
        const Statevector psi = state(theta);
        std::vector<cplx> hpsi;
        hmv_.apply(psi.amps, hpsi);
        return real_overlap(psi.amps, hpsi);
    }

    // Returns <psi|H|psi> and fills d<H>/dtheta via the reverse-sweep rule
    // grad_k = 2 Re <lambda_k| dU_k |psi_{k-1}>, lambda walked back with U^+.
    double cost_grad(const std::vector<double> &theta, std::vector<double> &grad) const {
        Statevector psi = state(theta);
        Statevector lam(L_);
        hmv_.apply(psi.amps, lam.amps);
        const double f = real_overlap(psi.amps, lam.amps);
        grad.assign(param_count(), 0.0);

        auto sweep_wall = [&](std::size_t layer, std::size_t slot) {
            for (std::size_t qi = L_; qi-- > 0;) {
                const unsigned q = static_cast<unsigned>(qi);
                const std::size_t k = checkerboard_param_index(L_, layer, q, slot);
                grad[k] = undo_ry_and_grad(psi, lam, q, theta[k]);
                apply_ry(lam, q, -theta[k]);
            }
        };
        sweep_wall(d_, 0);
        for (std::size_t l = d_; l-- > 0;) {
            wall_sign(psi, odd_sign_);
            wall_sign(lam, odd_sign_);
            sweep_wall(l, 1);
            wall_sign(psi, even_sign_);
            wall_sign(lam, even_sign_);
            sweep_wall(l, 0);
        }
        return f;
    }

  private:
    void check_theta(const std::vector<double> &theta) const {
        if (theta.size() != param_count())
            throw ConfigError("checkerboard expects " + std::to_string(param_count()) +
                              " parameters, got " + std::to_string(theta.size()));
    }

    void ry_wall(Statevector &v, const std::vector<double> &theta, std::size_t layer,
                 std::size_t slot) const {
        for (unsigned q = 0; q < L_; ++q)
            apply_ry(v, q, theta[checkerboard_param_index(L_, layer, q, slot)]);
    }

    static void wall_sign(Statevector &v, const std::vector<double> &sign) {
        for (std::size_t i = 0; i < v.dim(); ++i) v.amps[i] *= sign[i];
    }

    static double real_overlap(const std::vector<cplx> &a, const std::vector<cplx> &b) {
        double r = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            r += (std::conj(a[i]) * b[i]).real();
        return r;
    }

    // One pass: rewinds RY(theta) on psi and accumulates the derivative
    // overlap 2 Re <lam | dRY |psi_before> against the still-forward lambda.
    double undo_ry_and_grad(Statevector &psi, const Statevector &lam, unsigned q,
                            double theta) const {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        double g = 0;
        for_each_pair(psi.dim(), q, [&](std::size_t i0, std::size_t i1) {
            const cplx pa = psi.amps[i0], pb = psi.amps[i1];
            const cplx a = c * pa + s * pb;
            const cplx b = -s * pa + c * pb;
            psi.amps[i0] = a;
            psi.amps[i1] = b;
            const cplx d0 = 0.5 * (-s * a - c * b);
            const cplx d1 = 0.5 * (c * a - s * b);
            g += 2.0 * (std::conj(lam.amps[i0]) * d0 + std::conj(lam.amps[i1]) * d1).real();
        });
        return g;
    }

    std::size_t L_;
    std::size_t d_;
    Boundary bc_;
    MatvecEngine hmv_;
    std::vector<double> even_sign_;
    std::vector<double> odd_sign_;
};

struct VqeConfig {
    std::size_t depth = 4;
    std::size_t restarts = 10;
    std::uint64_t seed = 0x5eed;
    double init_scale = 0.1;   // theta0 ~ U(-scale, scale)
    bool use_gradient = true;  // quasi-Newton; false selects the simplex
    OptimizeOptions optimizer;
};

struct VqeResult {
    std::vector<double> theta;
    double energy = std::numeric_limits<double>::infinity();
    std::size_t evaluations = 0; // across all restarts
    std::size_t best_restart = 0;
    bool converged = false;
    // Best cost seen so far, recorded at each improvement; non-increasing.
    std::vector<std::pair<std::size_t, double>> trace;
    double energy_rel_error = std::numeric_limits<double>::quiet_NaN();
    double state_fidelity = std::numeric_limits<double>::quiet_NaN();
};

// Best-of-restarts ground-state search. Restart r draws its start point from
// the child stream (seed, r), so results are reproducible and independent of
// evaluation interleaving. If a diagonalization reference is supplied the
// relative energy error and state fidelity are filled in.
inline VqeResult solve_vqe(const SpinHamiltonian &H, const VqeConfig &cfg,
                           const GroundStateResult *reference = nullptr) {
    if (cfg.restarts == 0) throw ConfigError("vqe requires at least one restart");
    if (cfg.init_scale <= 0) throw ConfigError("vqe init_scale must be positive");
    CheckerboardEngine eng(H, cfg.depth);
    const std::size_t P = eng.param_count();

    VqeResult out;
    std::size_t global_evals = 0;
    std::vector<double> buf(P), gbuf;

    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        RngStream rng = RngStream::child(cfg.seed, r);
        Eigen::VectorXd x0(static_cast<Eigen::Index>(P));
        for (Eigen::Index i = 0; i < x0.size(); ++i)
            x0[i] = (2.0 * rng.uniform01() - 1.0) * cfg.init_scale;

        auto record = [&](double f) {
            ++global_evals;
            if (out.trace.empty() || f < out.trace.back().second)
                out.trace.emplace_back(global_evals, f);
        };
        OptimizeResult opt;
        if (cfg.use_gradient) {
            ObjectiveGrad fg = [&](const Eigen::VectorXd &x, Eigen::VectorXd &g) {
                for (std::size_t i = 0; i < P; ++i) buf[i] = x[static_cast<Eigen::Index>(i)];
                const double f = eng.cost_grad(buf, gbuf);
                g.resize(x.size());
                for (std::size_t i = 0; i < P; ++i) g[static_cast<Eigen::Index>(i)] = gbuf[i];
                record(f);
                return f;
            };
            opt = lbfgs_minimize(fg, x0, cfg.optimizer);
        } else {
            Objective fn = [&](const Eigen::VectorXd &x) {
                for (std::size_t i = 0; i < P; ++i) buf[i] = x[static_cast<Eigen::Index>(i)];
                const double f = eng.cost(buf);
                record(f);
                return f;
            };
            opt = nelder_mead(fn, x0, cfg.optimizer);
        }
        if (opt.f < out.energy) {
            out.energy = opt.f;
            out.theta.assign(P, 0.0);
            for (std::size_t i = 0; i < P; ++i) out.theta[i] = opt.x[static_cast<Eigen::Index>(i)];
            out.best_restart = r;
            out.converged = opt.converged;
        }
    }
    out.evaluations = global_evals;
    if (reference != nullptr) {
        out.energy_rel_error = std::abs(out.energy - reference->energy) /
                               std::max(std::abs(reference->energy), 1e-300);
        out.state_fidelity = fidelity(eng.state(out.theta), reference->state);
    }
    return out;
}

} // namespace virasoro
