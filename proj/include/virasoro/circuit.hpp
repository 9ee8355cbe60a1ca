// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "virasoro/core/bits.hpp"
#include "virasoro/core/errors.hpp"
#include "virasoro/statevector.hpp"

namespace virasoro {

// Named two-qubit kinds (Fswap, Fourier, Bogoliubov) carry their defining
// parameter so circuits stay serializable as `GATE q0 [q1] [param]` lines;
// U2 is an in-memory escape hatch for arbitrary 4x4 blocks.
enum class GateKind { H, X, RY, CZ, CP, Fswap, Fourier, Bogoliubov, U2 };

struct Gate {
    GateKind kind = GateKind::H;
    unsigned q0 = 0;
    unsigned q1 = 0;     // two-qubit kinds only
    double param = 0.0;  // RY theta, CP phi, Fourier twiddle angle, Bogoliubov phi
    std::array<cplx, 16> matrix{}; // U2 only

    bool two_qubit() const {
        switch (kind) {
        case GateKind::CZ:
        case GateKind::CP:
        case GateKind::Fswap:
        case GateKind::Fourier:
        case GateKind::Bogoliubov:
        case GateKind::U2: return true;
        default: return false;
        }
    }
};

inline Gate make_h(unsigned q) { return {GateKind::H, q}; }
inline Gate make_x(unsigned q) { return {GateKind::X, q}; }
inline Gate make_ry(unsigned q, double theta) { return {GateKind::RY, q, 0, theta}; }
inline Gate make_cz(unsigned q0, unsigned q1) { return {GateKind::CZ, q0, q1}; }
inline Gate make_cp(unsigned q0, unsigned q1, double phi) { return {GateKind::CP, q0, q1, phi}; }
inline Gate make_fswap(unsigned q0, unsigned q1) { return {GateKind::Fswap, q0, q1}; }
// Fourier mixing block with twiddle alpha = exp(i * angle).
inline Gate make_fourier(unsigned q0, unsigned q1, double angle) {
    return {GateKind::Fourier, q0, q1, angle};
}
// Bogoliubov block rotating the |00>/|11> pair by phi.
inline Gate make_bogoliubov(unsigned q0, unsigned q1, double phi) {
    return {GateKind::Bogoliubov, q0, q1, phi};
}
inline Gate make_u2(unsigned q0, unsigned q1, const std::array<cplx, 16> &m) {
    Gate g{GateKind::U2, q0, q1};
    g.matrix = m;
    return g;
}

// Local index within a pair is bit(q0) + 2*bit(q1); rows/cols little-endian.
inline std::array<cplx, 16> gate_matrix_4x4(const Gate &g) {
    std::array<cplx, 16> m{};
    const cplx I(0, 1);
    switch (g.kind) {
    case GateKind::CZ:
        m[0] = m[5] = m[10] = 1;
        m[15] = -1;
        break;
    case GateKind::CP:
        m[0] = m[5] = m[10] = 1;
        m[15] = std::polar(1.0, g.param);
        break;
    case GateKind::Fswap:
        m[0] = 1;
        m[6] = m[9] = 1;
        m[15] = -1;
        break;
    case GateKind::Fourier: {
        const cplx alpha = std::polar(1.0, g.param);
        const double r = 1.0 / std::sqrt(2.0);
        m[0] = 1;
        m[5] = r;
        m[6] = alpha * r;
        m[9] = r;
        m[10] = -alpha * r;
        m[15] = -alpha;
        break;
    }
    case GateKind::Bogoliubov: {
        const double c = std::cos(g.param), s = std::sin(g.param);
        m[0] = c;
        m[3] = -I * s;
        m[5] = 1;
        m[10] = 1;
        m[12] = -I * s;
        m[15] = c;
        break;
    }
    case GateKind::U2: return g.matrix;
    default: throw ConfigError("not a two-qubit gate");
    }
    return m;
}

struct Layer {
    std::vector<Gate> gates;
    std::string tag;
};

struct Circuit {
    std::size_t size = 0;
    std::vector<Layer> layers;

    Layer &add_layer(std::string tag = {}) {
        layers.push_back({{}, std::move(tag)});
        return layers.back();
    }

    std::size_t gate_count() const {
        std::size_t n = 0;
        for (const auto &l : layers) n += l.gates.size();
        return n;
    }

    std::size_t two_qubit_count() const {
        std::size_t n = 0;
        for (const auto &l : layers)
            for (const auto &g : l.gates) n += g.two_qubit();
        return n;
    }
};

namespace detail {

inline void check_layer_disjoint(const Layer &layer, std::size_t L) {
    std::vector<bool> used(L, false);
    for (const auto &g : layer.gates) {
        if (g.q0 >= L || (g.two_qubit() && g.q1 >= L))
            throw ConfigError("gate target out of range");
        if (g.two_qubit() && g.q0 == g.q1)
            throw ConfigError("two-qubit gate targets must be distinct");
        if (used[g.q0] || (g.two_qubit() && used[g.q1]))
            throw ConfigError("overlapping gate targets within one layer");
        used[g.q0] = true;
        if (g.two_qubit()) used[g.q1] = true;
    }
}

} // namespace detail

inline void apply_gate(Statevector &psi, const Gate &g) {
    switch (g.kind) {
    case GateKind::H: apply_h(psi, g.q0); break;
    case GateKind::X: apply_x(psi, g.q0); break;
    case GateKind::RY: apply_ry(psi, g.q0, g.param); break;
    case GateKind::CZ: apply_cz(psi, g.q0, g.q1); break;
    case GateKind::CP: apply_cp(psi, g.q0, g.q1, g.param); break;
    default: apply_two_qubit(psi, g.q0, g.q1, gate_matrix_4x4(g)); break;
    }
}

inline Statevector run(const Circuit &c, const Statevector &input) {
    if (c.size != input.size) throw ConfigError("circuit and state sizes differ");
    Statevector psi = input;
    for (const auto &layer : c.layers) {
        detail::check_layer_disjoint(layer, c.size);
        for (const auto &g : layer.gates) apply_gate(psi, g);
    }
    return psi;
}

inline Statevector run(const Circuit &c) { return run(c, Statevector(c.size)); }

// --- text format ------------------------------------------------------------
// One gate per line: `GATE q0 [q1] [param]`. Lines starting with '#' open a
// new layer (text after '#' is the tag); files without markers parse as one
// gate per layer.

inline std::string gate_name(GateKind k) {
    switch (k) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::RY: return "RY";
    case GateKind::CZ: return "CZ";
    case GateKind::CP: return "CP";
    case GateKind::Fswap: return "FSWAP";
    case GateKind::Fourier: return "FK";
    case GateKind::Bogoliubov: return "BK";
    case GateKind::U2: return "U2";
    }
    return "?";
}

inline std::string serialize(const Circuit &c) {
    std::ostringstream os;
    os.precision(17);
    os << "# size " << c.size << "\n";
    for (const auto &layer : c.layers) {
        os << "#" << (layer.tag.empty() ? "" : " ") << layer.tag << "\n";
        for (const auto &g : layer.gates) {
            if (g.kind == GateKind::U2)
                throw ConfigError("anonymous two-qubit unitaries are not serializable");
            os << gate_name(g.kind) << " " << g.q0;
            if (g.two_qubit()) os << " " << g.q1;
            switch (g.kind) {
            case GateKind::RY:
            case GateKind::CP:
            case GateKind::Fourier:
            case GateKind::Bogoliubov: os << " " << g.param; break;
            default: break;
            }
            os << "\n";
        }
    }
    return os.str();
}

inline Circuit parse_circuit(const std::string &text) {
    Circuit c;
    std::istringstream is(text);
    std::string line;
    bool explicit_layers = false;
    bool size_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string word;
            ls >> word;
            if (!size_seen && word == "size") {
                ls >> c.size;
                size_seen = true;
                continue;
            }
            c.add_layer(word);
            explicit_layers = true;
            continue;
        }
        std::istringstream ls(line);
        std::string name;
        ls >> name;
        Gate g;
        if (name == "H") g.kind = GateKind::H;
        else if (name == "X") g.kind = GateKind::X;
        else if (name == "RY") g.kind = GateKind::RY;
        else if (name == "CZ") g.kind = GateKind::CZ;
        else if (name == "CP") g.kind = GateKind::CP;
        else if (name == "FSWAP") g.kind = GateKind::Fswap;
        else if (name == "FK") g.kind = GateKind::Fourier;
        else if (name == "BK") g.kind = GateKind::Bogoliubov;
        else throw ConfigError("unknown gate '" + name + "'");
        if (!(ls >> g.q0)) throw ConfigError("missing gate target in '" + line + "'");
        if (g.two_qubit() && !(ls >> g.q1))
            throw ConfigError("missing second target in '" + line + "'");
        const bool has_param = g.kind == GateKind::RY || g.kind == GateKind::CP ||
                               g.kind == GateKind::Fourier || g.kind == GateKind::Bogoliubov;
        if (has_param && !(ls >> g.param))
            throw ConfigError("missing parameter in '" + line + "'");
        if (!explicit_layers || c.layers.empty()) c.add_layer();
        c.layers.back().gates.push_back(g);
        if (!size_seen) c.size = std::max<std::size_t>(c.size, std::max(g.q0, g.q1) + 1);
    }
    return c;
}

} // namespace virasoro
