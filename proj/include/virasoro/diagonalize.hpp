// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <optional>
#include <vector>

#include "virasoro/core/rng.hpp"
#include "virasoro/matvec.hpp"
#include "virasoro/pauli.hpp"
#include "virasoro/statevector.hpp"

namespace virasoro {

struct GroundStateResult {
    double energy = 0.0;
    Statevector state;
    double gap = 0.0; // E1 - E0
    bool converged = false;
};

struct EigOptions {
    std::uint64_t seed = 0x5eed;
    double tol = 1e-10;
    std::size_t max_matvecs = 5000;
    std::size_t dense_max_l = 10; // dense full eigensolve at or below this size
};

namespace detail {

// Lanczos with full reorthogonalization; returns the lowest `nev` Ritz pairs.
// Restarts from the best Ritz vector when the basis hits its cap.
struct LanczosOut {
    std::vector<double> values;
    std::vector<Eigen::VectorXcd> vectors;
    bool converged = false;
    double residual = 0.0;
};

inline LanczosOut lanczos_lowest(const MatvecEngine &eng, std::size_t nev, double tol,
                                 std::uint64_t seed, std::size_t max_matvecs) {
    const std::size_t dim = eng.dim();
    // One pass usually converges within this basis size; restarts are a
    // safety net. Large dimensions get a smaller cap to bound memory.
    const std::size_t cap = std::min<std::size_t>(dim, dim <= 8192 ? 260 : 140);
    RngStream rng(seed);
    Eigen::VectorXcd v0(dim);
    for (std::size_t i = 0; i < dim; ++i) v0[i] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
    v0.normalize();

    LanczosOut out;
    std::size_t matvecs = 0;
    while (matvecs < max_matvecs) {
        std::vector<Eigen::VectorXcd> V;
        std::vector<double> alpha, beta; // tridiagonal entries
        V.push_back(v0);
        Eigen::VectorXcd w;
        std::size_t k = 0;
        for (; k < cap && matvecs < max_matvecs; ++k) {
            w = eng.apply(V[k]);
            ++matvecs;
            alpha.push_back(std::real(V[k].dot(w)));
            w -= alpha[k] * V[k];
            if (k > 0) w -= beta[k - 1] * V[k - 1];
            // Full reorthogonalization, twice for stability.
            for (int pass = 0; pass < 2; ++pass)
                for (const auto &v : V) w -= v.dot(w) * v;
            const double nb = w.norm();
            beta.push_back(nb);
            if (nb < 1e-14) { ++k; break; } // invariant subspace found
            V.push_back(w / nb);
        }
        // Ritz pairs of the k x k tridiagonal.
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        const std::size_t take = std::min<std::size_t>(nev, k);
        out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + take);
        out.vectors.clear();
        double worst_res = 0.0;
        for (std::size_t j = 0; j < take; ++j) {
            Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim);
            for (std::size_t i = 0; i < k; ++i)
                y += es.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                     V[i];
            y.normalize();
            out.vectors.push_back(std::move(y));
            // Standard Lanczos residual bound |beta_k * (last tridiag
            // eigenvector component)|.
            const double res = std::abs(
                beta[k - 1] *
                es.eigenvectors()(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(j)));
            worst_res = std::max(worst_res, res);
        }
        out.residual = worst_res;
        if (worst_res < tol || beta[k - 1] < 1e-14) {
            out.converged = true;
            return out;
        }
        // Restart from a blend of the lowest Ritz vectors so every tracked
        // pair keeps a component in the next Krylov space.
        v0 = out.vectors[0];
        for (std::size_t j = 1; j < out.vectors.size(); ++j)
            v0 += std::pow(0.5, static_cast<double>(j)) * out.vectors[j];
        v0.normalize();
    }
    return out;
}

// Symmetry operators used for degenerate tie-breaks.
inline Eigen::VectorXcd apply_flip_all(const Eigen::VectorXcd &v, std::size_t L) {
    const std::size_t dim = std::size_t(1) << L;
    const std::size_t mask = dim - 1;
    Eigen::VectorXcd out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i ^ mask] = v[i];
    return out;
}

inline Eigen::VectorXcd apply_ztot(const Eigen::VectorXcd &v, std::size_t L) {
    const std::size_t dim = std::size_t(1) << L;
    Eigen::VectorXcd out(dim);
    for (std::size_t i = 0; i < dim; ++i)
        out[i] = static_cast<double>(static_cast<int>(L) - 2 * popcount(i)) * v[i];
    return out;
}

template <class Op>
inline bool commutes(const MatvecEngine &eng, Op &&op, std::uint64_t seed) {
    const std::size_t dim = eng.dim();
    RngStream rng(seed);
    for (int trial = 0; trial < 3; ++trial) {
        Eigen::VectorXcd v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
        v.normalize();
        const Eigen::VectorXcd hs = eng.apply(op(v));
        const Eigen::VectorXcd sh = op(eng.apply(v));
        const double scale = std::max(1.0, hs.norm());
        if ((hs - sh).norm() > 1e-9 * scale) return false;
    }
    return true;
}

// Projector application for each sector kind.
inline Eigen::VectorXcd project_half_filling(const Eigen::VectorXcd &v, std::size_t L) {
    Eigen::VectorXcd out = v;
    const int half = static_cast<int>(L) / 2;
    for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i)
        if (popcount(i) != half) out[i] = 0;
    return out;
}

inline Eigen::VectorXcd project_even_flip(const Eigen::VectorXcd &v, std::size_t L) {
    return 0.5 * (v + apply_flip_all(v, L));
}

inline Eigen::VectorXcd project_even_zparity(const Eigen::VectorXcd &v, std::size_t /*L*/) {
    Eigen::VectorXcd out = v;
    for (std::size_t i = 0; i < static_cast<std::size_t>(v.size()); ++i)
        if (bit_parity(i)) out[i] = 0;
    return out;
}

// Pick the sector-pure ground state out of a (near-)degenerate eigenspace by
// maximal overlap with the preferred symmetry sector. Sectors are tried in
// the order: Z_tot = 0 (U(1)), even global X flip (Z2), even Z parity.
inline Eigen::VectorXcd tie_break(const MatvecEngine &eng,
                                  const std::vector<Eigen::VectorXcd> &space, std::size_t L,
                                  std::uint64_t seed) {
    using Projector = Eigen::VectorXcd (*)(const Eigen::VectorXcd &, std::size_t);
    struct Candidate {
        bool symmetric;
        Projector project;
    };
    const Candidate candidates[] = {
        {commutes(eng, [&](const Eigen::VectorXcd &v) { return apply_ztot(v, L); }, seed),
         &project_half_filling},
        {commutes(eng, [&](const Eigen::VectorXcd &v) { return apply_flip_all(v, L); }, seed + 1),
         &project_even_flip},
        {commutes(
             eng, [&](const Eigen::VectorXcd &v) { return project_even_zparity(v, L); },
             seed + 2),
         &project_even_zparity},
    };
    for (const auto &cand : candidates) {
        if (!cand.symmetric) continue;
        // Maximize |P W x| over unit x: top eigenvector of (PW)^dag (PW).
        const std::size_t k = space.size();
        Eigen::MatrixXcd PW(space[0].size(), k);
        for (std::size_t j = 0; j < k; ++j) PW.col(j) = cand.project(space[j], L);
        Eigen::MatrixXcd G = PW.adjoint() * PW;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
        const double best = es.eigenvalues()(k - 1);
        if (best < 1e-8) continue; // no overlap with this sector
        Eigen::VectorXcd w = PW * es.eigenvectors().col(k - 1);
        w.normalize();
        return w;
    }
    return space[0];
}

inline void fix_phase(Statevector &psi) {
    std::size_t imax = 0;
    double best = 0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const double m = std::norm(psi.amps[i]);
        if (m > best) {
            best = m;
            imax = i;
        }
    }
    const cplx a = psi.amps[imax];
    const cplx rot = std::conj(a) / std::abs(a);
    for (cplx &x : psi.amps) x *= rot;
}

} // namespace detail

// Lowest eigenpair with sector-deterministic degeneracy handling and the
// global phase fixed so the largest amplitude is real positive.
inline GroundStateResult ground_state(const SpinHamiltonian &H, const EigOptions &opts = {}) {
    if (H.size > 16) throw ConfigError("ground_state supports L <= 16");
    const std::size_t L = H.size;
    MatvecEngine eng(H);

    std::vector<double> evals;
    std::vector<Eigen::VectorXcd> evecs;
    bool converged = false;

    if (L <= opts.dense_max_l) {
        Eigen::MatrixXcd M = assemble_dense(H);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
        const std::size_t want = std::min<std::size_t>(es.eigenvalues().size(), 8);
        for (std::size_t j = 0; j < want; ++j) {
            evals.push_back(es.eigenvalues()(j));
            evecs.push_back(es.eigenvectors().col(j));
        }
        converged = true;
    } else {
        auto lz = detail::lanczos_lowest(eng, 4, opts.tol, opts.seed, opts.max_matvecs);
        if (!lz.converged)
            throw NumericalError("Lanczos did not converge; residual " +
                                 std::to_string(lz.residual));
        evals = lz.values;
        evecs = std::move(lz.vectors);
        converged = true;
    }

    // Collect the (near-)degenerate lowest eigenspace.
    std::vector<Eigen::VectorXcd> space;
    for (std::size_t j = 0; j < evecs.size(); ++j)
        if (evals[j] - evals[0] < 1e-10) space.push_back(evecs[j]);

    Eigen::VectorXcd g =
        (space.size() > 1) ? detail::tie_break(eng, space, L, opts.seed) : space[0];

    GroundStateResult res;
    res.energy = evals[0];
    res.gap = (evals.size() > 1) ? evals[1] - evals[0] : 0.0;
    res.converged = converged;
    res.state.size = L;
    res.state.amps.assign(g.data(), g.data() + g.size());
    res.state.normalize();
    detail::fix_phase(res.state);
    return res;
}

} // namespace virasoro
