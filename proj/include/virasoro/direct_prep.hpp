// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "virasoro/circuit.hpp"
#include "virasoro/core/bits.hpp"
#include "virasoro/models.hpp"

namespace virasoro {

struct DirectPrepCost {
    std::size_t two_qubit_blocks = 0;
    std::size_t cnot_equivalent = 0;
};

inline DirectPrepCost direct_prep_cost(std::size_t L) {
    if (L < 1) throw ConfigError("direct_prep_cost requires L >= 1");
    return {L * L, 3 * L * L};
}

// Exact ground-state preparation for build_xy_fermionic(L, gamma, lambda):
// occupied-mode flips, Bogoliubov blocks on (k, L-k) momentum pairs, then a
// radix-2 fermionic FFT with fswap routing. Wire w initially carries momentum
// mode bit_reverse(w); the final pass restores position order.
inline Circuit build_direct_prep(std::size_t L, double gamma, double lambda) {
    if (!is_power_of_two(L) || L < 4)
        throw ConfigError("direct preparation requires L a power of two, L >= 4");
    const unsigned nbits = log2_exact(L);
    Circuit c;
    c.size = L;

    // slot[w] = label currently on wire w (momentum mode, later virtual
    // position within the FFT butterfly network).
    std::vector<std::size_t> slot(L);
    for (unsigned w = 0; w < L; ++w) slot[w] = bit_reverse(w, nbits);
    auto pos_of = [&](std::size_t label) -> unsigned {
        for (unsigned w = 0; w < L; ++w)
            if (slot[w] == label) return w;
        throw NumericalError("lost track of a wire label");
    };
    auto emit = [&](const std::string &tag, const Gate &g) {
        c.add_layer(tag).gates.push_back(g);
    };
    auto fswap = [&](unsigned w, const std::string &tag) {
        emit(tag, make_fswap(w, w + 1));
        std::swap(slot[w], slot[w + 1]);
    };

    // Occupied self-conjugate modes (0 and L/2) are flipped in place.
    for (std::size_t m : {std::size_t(0), L / 2})
        if (xy_theta(static_cast<int>(m), L, gamma, lambda) > M_PI / 2)
            emit("occupation", make_x(pos_of(m)));

    // Bogoliubov block on each (m, L-m) pair, rotated by theta_m / 2.
    for (std::size_t m = 1; m < L / 2; ++m) {
        const double phi = xy_theta(static_cast<int>(m), L, gamma, lambda) / 2;
        const std::size_t lo = m, hi = L - m;
        const std::string tag = "bogoliubov_" + std::to_string(m);
        while (pos_of(hi) > pos_of(lo) + 1) fswap(pos_of(hi) - 1, tag);
        while (pos_of(hi) < pos_of(lo)) fswap(pos_of(hi), tag);
        emit(tag, make_bogoliubov(pos_of(lo), pos_of(lo) + 1, phi));
    }

    // Restore the bit-reversed layout expected by the butterfly network.
    for (unsigned p = 0; p < L; ++p) {
        const std::size_t want = bit_reverse(p, nbits);
        for (unsigned w = pos_of(want); w > p; --w) fswap(w - 1, "permute");
    }

    // Decimation-in-time stages; relabel wires by virtual array position.
    for (unsigned w = 0; w < L; ++w) slot[w] = w;
    for (unsigned stage = 1; stage <= nbits; ++stage) {
        const std::size_t m = std::size_t(1) << stage;
        const std::string tag = "fft_" + std::to_string(stage);
        for (std::size_t blk = 0; blk < L; blk += m) {
            for (std::size_t j = 0; j < m / 2; ++j) {
                const std::size_t v1 = blk + j, v2 = blk + j + m / 2;
                while (pos_of(v2) > pos_of(v1) + 1) fswap(pos_of(v2) - 1, tag);
                while (pos_of(v2) < pos_of(v1)) fswap(pos_of(v2), tag);
                const double angle = 2 * M_PI * static_cast<double>(j) / static_cast<double>(m);
                emit(tag, make_fourier(pos_of(v1), pos_of(v1) + 1, angle));
            }
        }
    }

    // Bring virtual position p onto wire p.
    for (unsigned p = 0; p < L; ++p)
        for (unsigned w = pos_of(p); w > p; --w) fswap(w - 1, "permute");

    return c;
}

} // namespace virasoro
