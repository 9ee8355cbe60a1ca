// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <string>
#include <vector>

#include "virasoro/circuit.hpp"
#include "virasoro/pauli.hpp"

namespace virasoro {

// theta entry for (layer, site, slot); slot 0 precedes the even-bond wall,
// slot 1 the odd-bond wall. The final wall lives at layer index d.
inline std::size_t checkerboard_param_index(std::size_t L, std::size_t layer, std::size_t site,
                                            std::size_t slot) {
    return layer * 2 * L + slot * L + site;
}

inline std::size_t checkerboard_param_count(std::size_t L, std::size_t d) {
    return L * (2 * d + 1);
}

// H wall, then d repetitions of [RY wall, CZ on even bonds, RY wall, CZ on
// odd bonds], then a final RY wall. Under periodic boundary the odd wall
// includes the wrap bond (L-1, 0); this requires even L.
inline Circuit build_checkerboard(std::size_t L, std::size_t d, const std::vector<double> &theta,
                                  Boundary bc) {
    if (L < 2) throw ConfigError("checkerboard requires L >= 2");
    if (bc == Boundary::Periodic && L % 2 != 0)
        throw ConfigError("periodic checkerboard requires even L");
    if (theta.size() != checkerboard_param_count(L, d))
        throw ConfigError("checkerboard expects L(2d+1) = " +
                          std::to_string(checkerboard_param_count(L, d)) + " parameters, got " +
                          std::to_string(theta.size()));
    Circuit c;
    c.size = L;
    auto &hw = c.add_layer("h_wall");
    for (unsigned q = 0; q < L; ++q) hw.gates.push_back(make_h(q));
    auto ry_wall = [&](std::size_t layer, std::size_t slot, const std::string &tag) {
        auto &w = c.add_layer(tag);
        for (unsigned q = 0; q < L; ++q)
            w.gates.push_back(make_ry(q, theta[checkerboard_param_index(L, layer, q, slot)]));
    };
    for (std::size_t l = 0; l < d; ++l) {
        const std::string n = std::to_string(l);
        ry_wall(l, 0, "ry_" + n + "a");
        auto &even = c.add_layer("cz_even_" + n);
        for (unsigned q = 0; q + 1 < L; q += 2) even.gates.push_back(make_cz(q, q + 1));
        ry_wall(l, 1, "ry_" + n + "b");
        auto &odd = c.add_layer("cz_odd_" + n);
        for (unsigned q = 1; q + 1 < L; q += 2) odd.gates.push_back(make_cz(q, q + 1));
        if (bc == Boundary::Periodic) odd.gates.push_back(make_cz(static_cast<unsigned>(L - 1), 0));
    }
    ry_wall(d, 0, "ry_final");
    return c;
}

} // namespace virasoro
