// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "virasoro/matvec.hpp"
#include "virasoro/statevector.hpp"

namespace virasoro {

namespace detail {

// One Lanczos-exponential substep: psi <- exp(-i t H) psi. Returns false if
// the basis cap was reached before the coefficient vector settled below tol.
inline bool expm_substep(const MatvecEngine &hmv, std::vector<cplx> &psi, double t, double tol,
                         std::size_t max_rank) {
    const auto dim = static_cast<Eigen::Index>(psi.size());
    Eigen::Map<Eigen::VectorXcd> mapped(psi.data(), dim);
    const double vn = mapped.norm();
    if (vn == 0) throw NumericalError("cannot propagate zero vector");

    std::vector<Eigen::VectorXcd> V;
    V.push_back(mapped / vn);
    std::vector<double> alpha, beta;
    Eigen::VectorXcd w, w_prev;
    const std::size_t cap = std::min<std::size_t>(psi.size(), max_rank);
    bool converged = false;

    for (std::size_t k = 0; k < cap; ++k) {
        Eigen::VectorXcd hv = hmv.apply(V[k]);
        const double a = V[k].dot(hv).real();
        hv -= a * V[k];
        if (k > 0) hv -= beta[k - 1] * V[k - 1];
        for (int pass = 0; pass < 2; ++pass)
            for (const auto &u : V) hv -= u.dot(hv) * u;
        const double b = hv.norm();
        alpha.push_back(a);

        // exp(-i t T_k) e0 in the Lanczos basis.
        const auto m = static_cast<Eigen::Index>(k + 1);
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            T(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        Eigen::VectorXcd phase(m);
        for (Eigen::Index i = 0; i < m; ++i)
            phase[i] = std::polar(1.0, -t * es.eigenvalues()[i]) * es.eigenvectors()(0, i);
        Eigen::VectorXcd w_new = es.eigenvectors() * phase;

        if (k > 0) {
            Eigen::VectorXcd pad = Eigen::VectorXcd::Zero(m);
            pad.head(m - 1) = w_prev;
            if ((w_new - pad).norm() < tol) converged = true;
        }
        w = w_new;
        w_prev = w_new;
        if (b < 1e-14) converged = true; // invariant subspace: result exact
        if (converged) break;
        beta.push_back(b);
        V.push_back(hv / b);
    }
    if (!converged) return false;
    mapped.setZero();
    for (std::size_t j = 0; j < static_cast<std::size_t>(w.size()); ++j)
        mapped += (vn * w[static_cast<Eigen::Index>(j)]) * V[j];
    return true;
}

} // namespace detail

// psi <- exp(-i t H) psi, splitting the step until the Lanczos exponential
// converges within the rank cap. tol is the per-call coefficient tolerance.
inline void expm_apply_inplace(const MatvecEngine &hmv, Statevector &psi, double t,
                               double tol = 1e-13, std::size_t max_rank = 120) {
    if (tol <= 0) throw ConfigError("propagator tolerance must be positive");
    for (std::size_t steps = 1; steps <= 1024; steps *= 2) {
        std::vector<cplx> work = psi.amps;
        bool ok = true;
        for (std::size_t s = 0; s < steps && ok; ++s)
            ok = detail::expm_substep(hmv, work, t / static_cast<double>(steps),
                                      tol / static_cast<double>(steps), max_rank);
        if (ok) {
            psi.amps = std::move(work);
            return;
        }
    }
    throw NumericalError("real-time propagator failed to converge");
}

struct GevpSolution {
    std::vector<double> energies; // ascending
    Eigen::MatrixXcd vectors;     // columns: coefficients in the original basis
    std::size_t kept = 0;         // overlap directions retained
};

// T c = E S c, regularized by dropping overlap eigendirections below
// eps_rel * max eigenvalue. Both matrices must be Hermitian, S >= 0.
inline GevpSolution solve_gevp(const Eigen::MatrixXcd &T, const Eigen::MatrixXcd &S,
                               double eps_rel) {
    if (T.rows() != T.cols() || S.rows() != S.cols() || T.rows() != S.rows())
        throw ConfigError("generalized eigenproblem needs square matrices of equal size");
    if (T.rows() == 0) throw ConfigError("generalized eigenproblem is empty");
    if (eps_rel <= 0 || eps_rel >= 1)
        throw ConfigError("overlap regularization cutoff must lie in (0, 1)");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ss(S);
    const double s_max = ss.eigenvalues().maxCoeff();
    if (s_max <= 0) throw NumericalError("overlap matrix has no positive spectrum");
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < ss.eigenvalues().size(); ++i)
        if (ss.eigenvalues()[i] >= eps_rel * s_max) keep.push_back(i);
    if (keep.empty())
        throw NumericalError("all overlap directions fall below the regularization cutoff");

    Eigen::MatrixXcd W(S.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j)
        W.col(static_cast<Eigen::Index>(j)) =
            ss.eigenvectors().col(keep[j]) / std::sqrt(ss.eigenvalues()[keep[j]]);

    Eigen::MatrixXcd Tp = W.adjoint() * T * W;
    Tp = 0.5 * (Tp + Tp.adjoint().eval()); // symmetrize roundoff
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ts(Tp);

    GevpSolution out;
    out.kept = keep.size();
    out.energies.resize(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        out.energies[i] = ts.eigenvalues()[static_cast<Eigen::Index>(i)];
    out.vectors = W * ts.eigenvectors();
    return out;
}

struct KrylovConfig {
    std::size_t order = 20;  // number of time-evolved basis states
    double dt = 0.0;         // <= 0 selects pi / (2 sum|coeff|)
    double eps_s = 1e-10;    // relative overlap cutoff for the GEVP
    double expm_tol = 1e-13; // per-step propagator tolerance
    Statevector reference;   // empty selects |+>^L
};

struct KrylovResult {
    Eigen::MatrixXcd T; // <phi_j| H |phi_k>
    Eigen::MatrixXcd S; // <phi_j|phi_k>
    std::vector<double> energies;        // regularized GEVP at full order
    Eigen::VectorXcd c_min;              // Krylov coefficients of the lowest state
    std::vector<double> energy_by_order; // lowest energy from leading m x m blocks
    std::size_t kept = 0;
    double dt = 0.0;
};

// Ground-state estimate from the real-time Krylov basis phi_j = U(dt)^j |ref>.
// Both matrices are Hermitian Toeplitz, so only first-row elements
// s_d = <ref|U^d|ref> and t_d = <ref|H U^d|ref> are computed.
inline KrylovResult krylov_ground(const SpinHamiltonian &H, const KrylovConfig &cfg) {
    if (cfg.order == 0) throw ConfigError("krylov order must be at least 1");
    const std::size_t L = H.size;
    MatvecEngine hmv(H);

    Statevector ref;
    if (cfg.reference.size == 0) {
        ref = Statevector(L);
        apply_h_wall(ref);
    } else {
        if (cfg.reference.size != L)
            throw ConfigError("krylov reference state size does not match the Hamiltonian");
        ref = cfg.reference;
        ref.normalize();
    }
    double dt = cfg.dt;
    if (dt <= 0) {
        const double norm1 = H.coeff_norm();
        if (norm1 == 0) throw ConfigError("cannot choose dt for an empty Hamiltonian");
        dt = M_PI / (2.0 * norm1);
    }

    Statevector href(L);
    hmv.apply(ref.amps, href.amps);
    const auto r = static_cast<Eigen::Index>(cfg.order);
    std::vector<cplx> s_row(cfg.order), t_row(cfg.order);
    Statevector phi = ref;
    for (std::size_t d = 0; d < cfg.order; ++d) {
        if (d > 0) expm_apply_inplace(hmv, phi, dt, cfg.expm_tol);
        s_row[d] = inner(ref, phi);
        t_row[d] = inner(href, phi);
    }

    KrylovResult out;
    out.dt = dt;
    out.T.resize(r, r);
    out.S.resize(r, r);
    for (Eigen::Index j = 0; j < r; ++j) {
        for (Eigen::Index k = 0; k < r; ++k) {
            const std::size_t d = static_cast<std::size_t>(k >= j ? k - j : j - k);
            out.S(j, k) = (k >= j) ? s_row[d] : std::conj(s_row[d]);
            out.T(j, k) = (k >= j) ? t_row[d] : std::conj(t_row[d]);
        }
    }

    out.energy_by_order.resize(cfg.order);
    for (Eigen::Index m = 1; m <= r; ++m) {
        GevpSolution sol =
            solve_gevp(out.T.topLeftCorner(m, m), out.S.topLeftCorner(m, m), cfg.eps_s);
        out.energy_by_order[static_cast<std::size_t>(m - 1)] = sol.energies.front();
        if (m == r) {
            out.energies = sol.energies;
            out.c_min = sol.vectors.col(0);
            out.kept = sol.kept;
        }
    }
    return out;
}

} // namespace virasoro
