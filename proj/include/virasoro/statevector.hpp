// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "virasoro/core/bits.hpp"
#include "virasoro/core/errors.hpp"
#include "virasoro/pauli.hpp"

namespace virasoro {

// 2^L complex amplitudes, little-endian: site q is bit q of the index.
struct Statevector {
    std::size_t size = 0; // L
    std::vector<cplx> amps;

    Statevector() = default;
    explicit Statevector(std::size_t L) : size(L), amps(std::size_t(1) << L, cplx(0)) {
        amps[0] = 1.0;
    }

    std::size_t dim() const { return amps.size(); }

    double norm2() const {
        double n = 0;
        for (const cplx &a : amps) n += std::norm(a);
        return n;
    }

    void normalize() {
        const double n = std::sqrt(norm2());
        if (n == 0) throw NumericalError("cannot normalize zero vector");
        for (cplx &a : amps) a /= n;
    }
};

inline cplx inner(const Statevector &a, const Statevector &b) {
    if (a.dim() != b.dim()) throw ConfigError("statevector dimension mismatch");
    cplx s = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a.amps[i]) * b.amps[i];
    return s;
}

inline double fidelity(const Statevector &a, const Statevector &b) {
    return std::norm(inner(a, b));
}

// --- single-qubit kernels -------------------------------------------------
// All kernels update amplitudes in place, iterating over index pairs that
// differ only in bit q.

template <class Fn> inline void for_each_pair(std::size_t dim, unsigned q, Fn &&fn) {
    const std::size_t mask = std::size_t(1) << q;
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & mask) continue;
        fn(base, base | mask);
    }
}

inline void apply_h(Statevector &psi, unsigned q) {
    constexpr double inv_sqrt2 = 0.7071067811865475244;
    for_each_pair(psi.dim(), q, [&](std::size_t i0, std::size_t i1) {
        const cplx a = psi.amps[i0], b = psi.amps[i1];
        psi.amps[i0] = inv_sqrt2 * (a + b);
        psi.amps[i1] = inv_sqrt2 * (a - b);
    });
}

inline void apply_x(Statevector &psi, unsigned q) {
    for_each_pair(psi.dim(), q, [&](std::size_t i0, std::size_t i1) {
        std::swap(psi.amps[i0], psi.amps[i1]);
    });
}

inline void apply_ry(Statevector &psi, unsigned q, double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    for_each_pair(psi.dim(), q, [&](std::size_t i0, std::size_t i1) {
        const cplx a = psi.amps[i0], b = psi.amps[i1];
        psi.amps[i0] = c * a - s * b;
        psi.amps[i1] = s * a + c * b;
    });
}

// --- two-qubit kernels ----------------------------------------------------

inline void apply_cz(Statevector &psi, unsigned q0, unsigned q1) {
    const std::size_t m = (std::size_t(1) << q0) | (std::size_t(1) << q1);
    for (std::size_t i = 0; i < psi.dim(); ++i)
        if ((i & m) == m) psi.amps[i] = -psi.amps[i];
}

inline void apply_cp(Statevector &psi, unsigned q0, unsigned q1, double phi) {
    const cplx w = std::polar(1.0, phi);
    const std::size_t m = (std::size_t(1) << q0) | (std::size_t(1) << q1);
    for (std::size_t i = 0; i < psi.dim(); ++i)
        if ((i & m) == m) psi.amps[i] *= w;
}

// Generic 4x4 on (q0, q1). The matrix is indexed little-endian within the
// pair: local state = bit(q0) + 2*bit(q1), element U[row*4 + col].
inline void apply_two_qubit(Statevector &psi, unsigned q0, unsigned q1,
                            const std::array<cplx, 16> &U) {
    if (q0 == q1) throw ConfigError("two-qubit gate targets must be distinct");
    const std::size_t m0 = std::size_t(1) << q0;
    const std::size_t m1 = std::size_t(1) << q1;
    const std::size_t dim = psi.dim();
    for (std::size_t base = 0; base < dim; ++base) {
        if (base & (m0 | m1)) continue;
        const std::size_t i00 = base, i01 = base | m0, i10 = base | m1, i11 = base | m0 | m1;
        const cplx a0 = psi.amps[i00], a1 = psi.amps[i01], a2 = psi.amps[i10], a3 = psi.amps[i11];
        psi.amps[i00] = U[0] * a0 + U[1] * a1 + U[2] * a2 + U[3] * a3;
        psi.amps[i01] = U[4] * a0 + U[5] * a1 + U[6] * a2 + U[7] * a3;
        psi.amps[i10] = U[8] * a0 + U[9] * a1 + U[10] * a2 + U[11] * a3;
        psi.amps[i11] = U[12] * a0 + U[13] * a1 + U[14] * a2 + U[15] * a3;
    }
}

// --- Pauli strings --------------------------------------------------------

inline void apply_pauli(Statevector &psi, const PauliAction &act) {
    if (act.diagonal()) {
        for (std::size_t i = 0; i < psi.dim(); ++i) psi.amps[i] *= act.phase(i);
        return;
    }
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const std::size_t j = i ^ act.flip;
        if (j < i) continue;
        const cplx ai = psi.amps[i], aj = psi.amps[j];
        // P|i> = phase(i)|j> and P|j> = phase(j)|i>.
        psi.amps[j] = act.phase(i) * ai;
        psi.amps[i] = act.phase(j) * aj;
    }
}

inline void apply_pauli(Statevector &psi, const PauliString &p) {
    apply_pauli(psi, PauliAction(p));
}

// H wall on every qubit; maps Z-basis amplitudes to the X basis.
inline void apply_h_wall(Statevector &psi) {
    for (unsigned q = 0; q < psi.size; ++q) apply_h(psi, q);
}

} // namespace virasoro
