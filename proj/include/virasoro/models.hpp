// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <cmath>

#include "virasoro/pauli.hpp"

namespace virasoro {

// H = -J sum_i Z_i Z_{i+1} - h sum_i X_i.
inline SpinHamiltonian build_tfi(std::size_t L, double J, double h, Boundary bc) {
    if (L < 2) throw ConfigError("TFI requires L >= 2");
    SpinHamiltonian H{L, {}, bc};
    const std::size_t bonds = (bc == Boundary::Periodic) ? L : L - 1;
    for (std::size_t i = 0; i < bonds; ++i)
        H.add(-J, pauli_at(L, {{i, Pauli::Z}, {(i + 1) % L, Pauli::Z}}));
    for (std::size_t i = 0; i < L; ++i) H.add(-h, pauli_at(L, {{i, Pauli::X}}));
    return H;
}

// H = -sum_i [X_i X_{i+1} + Y_i Y_{i+1} + Delta Z_i Z_{i+1}].
inline SpinHamiltonian build_xxz(std::size_t L, double Delta, Boundary bc) {
    if (L < 2) throw ConfigError("XXZ requires L >= 2");
    SpinHamiltonian H{L, {}, bc};
    const std::size_t bonds = (bc == Boundary::Periodic) ? L : L - 1;
    for (std::size_t i = 0; i < bonds; ++i) {
        const std::size_t j = (i + 1) % L;
        H.add(-1.0, pauli_at(L, {{i, Pauli::X}, {j, Pauli::X}}));
        H.add(-1.0, pauli_at(L, {{i, Pauli::Y}, {j, Pauli::Y}}));
        H.add(-Delta, pauli_at(L, {{i, Pauli::Z}, {j, Pauli::Z}}));
    }
    return H;
}

// TFI plus the three-site deformation +lambda (X Z Z + Z Z X) on consecutive
// sites; lambda ~ 0.428 sits at the tricritical point.
inline SpinHamiltonian build_tricritical(std::size_t L, double J, double h, double lambda,
                                         Boundary bc) {
    if (L < 3) throw ConfigError("tricritical chain requires L >= 3");
    SpinHamiltonian H = build_tfi(L, J, h, bc);
    const std::size_t triples = (bc == Boundary::Periodic) ? L : L - 2;
    for (std::size_t i = 0; i < triples; ++i) {
        const std::size_t j = (i + 1) % L, k = (i + 2) % L;
        H.add(lambda, pauli_at(L, {{i, Pauli::X}, {j, Pauli::Z}, {k, Pauli::Z}}));
        H.add(lambda, pauli_at(L, {{i, Pauli::Z}, {j, Pauli::Z}, {k, Pauli::X}}));
    }
    return H;
}

// XY chain whose spectrum is exactly the free-fermion form: open XX/YY bonds
// plus a uniform Z field plus the two boundary strings
//   (1+gamma)/2 * Y_0 Z ... Z Y_{L-1}  and  (1-gamma)/2 * X_0 Z ... Z X_{L-1}
// which close the fermion hopping periodically for every parity sector.
inline SpinHamiltonian build_xy_fermionic(std::size_t L, double gamma, double lambda) {
    if (L < 4 || L % 2 != 0) throw ConfigError("fermionic XY chain requires even L >= 4");
    SpinHamiltonian H{L, {}, Boundary::Periodic};
    for (std::size_t i = 0; i + 1 < L; ++i) {
        H.add((1 + gamma) / 2, pauli_at(L, {{i, Pauli::X}, {i + 1, Pauli::X}}));
        H.add((1 - gamma) / 2, pauli_at(L, {{i, Pauli::Y}, {i + 1, Pauli::Y}}));
    }
    for (std::size_t i = 0; i < L; ++i) H.add(lambda, pauli_at(L, {{i, Pauli::Z}}));
    PauliString ystr(L), xstr(L);
    ystr[0] = Pauli::Y;
    ystr[L - 1] = Pauli::Y;
    xstr[0] = Pauli::X;
    xstr[L - 1] = Pauli::X;
    for (std::size_t i = 1; i + 1 < L; ++i) {
        ystr[i] = Pauli::Z;
        xstr[i] = Pauli::Z;
    }
    H.add((1 + gamma) / 2, ystr);
    H.add((1 - gamma) / 2, xstr);
    return H;
}

// Single-particle dispersion of the fermionic XY chain, k = -L/2+1 .. L/2.
inline double xy_omega(int k, std::size_t L, double gamma, double lambda) {
    const double x = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(L);
    const double a = lambda - std::cos(x);
    const double b = gamma * std::sin(x);
    return std::sqrt(a * a + b * b);
}

// Bogoliubov angle theta_k = arccos[(-lambda + cos(2 pi k/L)) / omega_k].
// Zero modes (omega_k = 0) are assigned theta = pi (occupied); this selects
// the even fermion-parity member of the degenerate pair.
inline double xy_theta(int k, std::size_t L, double gamma, double lambda) {
    const double w = xy_omega(k, L, gamma, lambda);
    if (w < 1e-14) return M_PI;
    const double x = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(L);
    double v = (-lambda + std::cos(x)) / w;
    v = std::max(-1.0, std::min(1.0, v));
    return std::acos(v);
}

} // namespace virasoro
