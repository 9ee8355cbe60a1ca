// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

// Test-side oracles built from explicit Kronecker products. Deliberately
// independent of the library's mask-based operator paths.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "virasoro/pauli.hpp"

namespace oracles {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat pauli_matrix(char p) {
    Mat m(2, 2);
    const cplx I(0, 1);
    switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -I, I, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli letter");
    }
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Little-endian: site 0 is the least significant bit, so it is the rightmost
// Kronecker factor. `letters[0]` is site L-1 (leftmost factor).
inline Mat string_matrix(const std::string &letters) {
    Mat m = pauli_matrix(letters[letters.size() - 1]);
    for (std::size_t i = letters.size() - 1; i-- > 0;) m = kron(pauli_matrix(letters[i]), m);
    return m;
}

inline Mat dense_hamiltonian(const virasoro::SpinHamiltonian &H) {
    const Eigen::Index dim = Eigen::Index(1) << H.size;
    Mat M = Mat::Zero(dim, dim);
    for (const auto &term : H.terms) {
        std::string s = term.string.str();
        std::reverse(s.begin(), s.end()); // string_matrix wants site L-1 first
        M += term.coeff * string_matrix(s);
    }
    return M;
}

// Single-site operator embedded at `site` of an L-site chain.
inline Mat site_matrix(std::size_t L, std::size_t site, char p) {
    std::string s(L, 'I');
    s[L - 1 - site] = p;
    return string_matrix(s);
}

} // namespace oracles
