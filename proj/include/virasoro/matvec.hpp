// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "virasoro/pauli.hpp"
#include "virasoro/statevector.hpp"

namespace virasoro {

// On-the-fly H|psi> from the term list. Diagonal terms are folded into a
// single real vector once; off-diagonal terms are applied per Pauli string
// with bit arithmetic. No matrix is ever stored.
class MatvecEngine {
  public:
    explicit MatvecEngine(const SpinHamiltonian &H) : L_(H.size), dim_(std::size_t(1) << H.size) {
        diag_.assign(dim_, 0.0);
        for (const auto &term : H.terms) {
            PauliAction act(term.string);
            if (act.diagonal()) {
                // phase is +-1 here (no Y sites would still give i^{2#Y}=+-1,
                // but a diagonal string has no X/Y at all).
                for (std::size_t b = 0; b < dim_; ++b)
                    diag_[b] += term.coeff * act.phase(b).real();
            } else {
                offdiag_.push_back({term.coeff, act});
            }
        }
    }

    std::size_t size() const { return L_; }
    std::size_t dim() const { return dim_; }

    // out = H * in. Buffers must be distinct.
    void apply(const std::vector<cplx> &in, std::vector<cplx> &out) const {
        out.resize(dim_);
        for (std::size_t i = 0; i < dim_; ++i) out[i] = diag_[i] * in[i];
        for (const auto &[coeff, act] : offdiag_) {
            for (std::size_t i = 0; i < dim_; ++i) {
                const std::size_t j = i ^ act.flip;
                out[i] += coeff * act.phase(j) * in[j];
            }
        }
    }

    Eigen::VectorXcd apply(const Eigen::VectorXcd &in) const {
        Eigen::VectorXcd out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) out[i] = diag_[i] * in[i];
        for (const auto &[coeff, act] : offdiag_) {
            for (std::size_t i = 0; i < dim_; ++i) {
                const std::size_t j = i ^ act.flip;
                out[i] += coeff * act.phase(j) * in[j];
            }
        }
        return out;
    }

  private:
    std::size_t L_;
    std::size_t dim_;
    std::vector<double> diag_;
    std::vector<std::pair<double, PauliAction>> offdiag_;
};

// Dense matrix assembled column-by-column from the term masks; for small-L
// eigensolves and test oracles only.
inline Eigen::MatrixXcd assemble_dense(const SpinHamiltonian &H) {
    const std::size_t dim = std::size_t(1) << H.size;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &term : H.terms) {
        PauliAction act(term.string);
        for (std::size_t col = 0; col < dim; ++col) {
            M(col ^ act.flip, col) += term.coeff * act.phase(col);
        }
    }
    return M;
}

inline double expectation(const SpinHamiltonian &H, const Statevector &psi) {
    if ((std::size_t(1) << H.size) != psi.dim())
        throw ConfigError("Hamiltonian and state dimensions differ");
    MatvecEngine eng(H);
    std::vector<cplx> hpsi;
    eng.apply(psi.amps, hpsi);
    cplx e = 0;
    for (std::size_t i = 0; i < psi.dim(); ++i) e += std::conj(psi.amps[i]) * hpsi[i];
    return e.real();
}

} // namespace virasoro
