// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "virasoro/core/bits.hpp"
#include "virasoro/core/errors.hpp"

namespace virasoro {

using cplx = std::complex<double>;

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

// A Pauli string over all L sites. Site i is qubit i (little-endian bit i).
struct PauliString {
    std::vector<Pauli> letters;

    PauliString() = default;
    explicit PauliString(std::size_t L) : letters(L, Pauli::I) {}

    static PauliString parse(const std::string &s) {
        PauliString p;
        p.letters.reserve(s.size());
        for (char c : s) {
            switch (c) {
            case 'I': p.letters.push_back(Pauli::I); break;
            case 'X': p.letters.push_back(Pauli::X); break;
            case 'Y': p.letters.push_back(Pauli::Y); break;
            case 'Z': p.letters.push_back(Pauli::Z); break;
            default: throw ConfigError(std::string("invalid Pauli letter '") + c + "'");
            }
        }
        return p;
    }

    std::size_t size() const { return letters.size(); }

    Pauli &operator[](std::size_t i) { return letters[i]; }
    Pauli operator[](std::size_t i) const { return letters[i]; }

    std::string str() const {
        std::string s;
        s.reserve(letters.size());
        for (Pauli p : letters) s.push_back(static_cast<char>(p));
        return s;
    }

    bool is_identity() const {
        for (Pauli p : letters)
            if (p != Pauli::I) return false;
        return true;
    }

    // Number of non-identity sites.
    int weight() const {
        int w = 0;
        for (Pauli p : letters) w += (p != Pauli::I);
        return w;
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < letters.size(); ++i)
            if (letters[i] != Pauli::I) s.push_back(i);
        return s;
    }
};

// Action of a Pauli string decomposed into bit masks:
//   P |b> = phase(b) |b XOR flip>,
//   phase(b) = i^{#Y} * (-1)^{popcount(b & sign_mask)}
// where flip has the X and Y sites set and sign_mask has the Y and Z sites set.
struct PauliAction {
    bitstring flip = 0;
    bitstring sign_mask = 0;
    cplx y_phase = 1.0; // i^{#Y}

    explicit PauliAction(const PauliString &p) {
        int ycount = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            switch (p[i]) {
            case Pauli::I: break;
            case Pauli::X: flip |= bitstring(1) << i; break;
            case Pauli::Y:
                flip |= bitstring(1) << i;
                sign_mask |= bitstring(1) << i;
                ++ycount;
                break;
            case Pauli::Z: sign_mask |= bitstring(1) << i; break;
            }
        }
        static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        y_phase = kIPow[ycount & 3];
    }

    bool diagonal() const { return flip == 0; }

    cplx phase(bitstring b) const {
        return (bit_parity(b & sign_mask) != 0) ? -y_phase : y_phase;
    }
};

struct PauliTerm {
    double coeff = 0.0;
    PauliString string;
};

enum class Boundary { Open, Periodic };

inline std::string to_string(Boundary b) { return b == Boundary::Open ? "open" : "periodic"; }

// Real-weighted Pauli-string sum. Hermiticity holds by construction since
// every Pauli string is Hermitian and coefficients are real.
struct SpinHamiltonian {
    std::size_t size = 0; // site count L
    std::vector<PauliTerm> terms;
    Boundary boundary = Boundary::Open;

    void add(double coeff, const PauliString &s) {
        if (s.size() != size) throw ConfigError("Pauli string length does not match system size");
        terms.push_back({coeff, s});
    }

    // Sum of |coefficients|; an upper bound on the spectral norm.
    double coeff_norm() const {
        double n = 0;
        for (const auto &t : terms) n += std::abs(t.coeff);
        return n;
    }
};

// Convenience constructor: letters at the given sites, identity elsewhere.
inline PauliString pauli_at(std::size_t L, std::initializer_list<std::pair<std::size_t, Pauli>> ops) {
    PauliString p(L);
    for (const auto &[site, op] : ops) {
        if (site >= L) throw ConfigError("Pauli site out of range");
        p[site] = op;
    }
    return p;
}

} // namespace virasoro
