// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "virasoro/measurement.hpp"
#include "virasoro/statevector.hpp"

namespace virasoro {

// Shannon-Renyi entropy (1/(1-n)) ln sum p^n with the analytic n = 1 limit.
inline double shannon_renyi(const ProbabilityTable &t, double n) {
    require_normalized(t);
    if (n <= 0) throw ConfigError("Renyi moment must be positive");
    if (std::abs(n - 1.0) < 1e-9) {
        double s = 0;
        for (double p : t.p)
            if (p > 0) s -= p * std::log(p);
        return s;
    }
    double s = 0;
    for (double p : t.p)
        if (p > 0) s += std::pow(p, n);
    return std::log(s) / (1.0 - n);
}

// Renyi difference Sh_n over the anchored blocks [0,l) and [0,L-l) minus the
// full-table entropy; manifestly symmetric under l <-> L-l.
inline double renyi_difference(const ProbabilityTable &t, std::size_t l, double n) {
    if (l < 1 || l >= t.size) throw ConfigError("subsystem length out of range");
    return shannon_renyi(marginal(t, l), n) + shannon_renyi(marginal(t, t.size - l), n) -
           shannon_renyi(t, n);
}

struct ReducedDensityMatrix {
    std::size_t l = 0;
    Eigen::MatrixXcd rho;
};

// rho_l = Tr over sites [l, L) of |psi><psi|.
inline ReducedDensityMatrix reduced_density_matrix(const Statevector &psi, std::size_t l) {
    if (l < 1 || l >= psi.size) throw ConfigError("subsystem length out of range");
    const std::size_t lo = std::size_t(1) << l;
    const std::size_t hi = psi.dim() >> l;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(lo, lo);
    for (std::size_t h = 0; h < hi; ++h) {
        const std::size_t base = h << l;
        for (std::size_t a = 0; a < lo; ++a) {
            const cplx va = psi.amps[base | a];
            if (va == cplx(0)) continue;
            for (std::size_t b = 0; b < lo; ++b)
                rho(a, b) += va * std::conj(psi.amps[base | b]);
        }
    }
    return {l, std::move(rho)};
}

// Entanglement Renyi entropy (1/(1-n)) ln Tr rho^n from eigenvalues, with the
// von Neumann limit at n = 1.
inline double entanglement_renyi(const ReducedDensityMatrix &rdm, double n) {
    if (n <= 0) throw ConfigError("Renyi moment must be positive");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rdm.rho, Eigen::EigenvaluesOnly);
    if (std::abs(n - 1.0) < 1e-9) {
        double s = 0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
            const double lam = es.eigenvalues()(i);
            if (lam > 1e-300) s -= lam * std::log(lam);
        }
        return s;
    }
    double s = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()(i);
        if (lam > 0) s += std::pow(lam, n);
    }
    return std::log(s) / (1.0 - n);
}

// Coherent pure-state reconstruction |psi> = sum_z sqrt(p_z) |z>.
inline Statevector reconstruct_stoquastic(const ProbabilityTable &t) {
    require_normalized(t);
    if (t.min_entry() < -1e-12)
        throw ConfigError("table has negative entries; post-process before reconstruction");
    Statevector psi(t.size);
    for (std::size_t i = 0; i < t.dim(); ++i) psi.amps[i] = std::sqrt(std::max(0.0, t.p[i]));
    psi.normalize();
    return psi;
}

// <z_0 z_r> - <z_0><z_r> with spin values +-1 from a Z-basis table.
inline double connected_correlator(const ProbabilityTable &t, std::size_t r) {
    require_normalized(t);
    if (t.basis != MeasBasis::Z) throw ConfigError("connected correlator expects a Z-basis table");
    if (r >= t.size) throw ConfigError("correlator distance out of range");
    double zz = 0, z0 = 0, zr = 0;
    for (std::size_t b = 0; b < t.dim(); ++b) {
        const double s0 = bit_at(b, 0) ? -1.0 : 1.0;
        const double sr = bit_at(b, static_cast<unsigned>(r)) ? -1.0 : 1.0;
        zz += t.p[b] * s0 * sr;
        z0 += t.p[b] * s0;
        zr += t.p[b] * sr;
    }
    return zz - z0 * zr;
}

} // namespace virasoro
