// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "virasoro/core/bits.hpp"
#include "virasoro/core/errors.hpp"
#include "virasoro/core/rng.hpp"
#include "virasoro/statevector.hpp"

namespace virasoro {

enum class MeasBasis { Z, X };

inline std::string to_string(MeasBasis b) { return b == MeasBasis::Z ? "Z" : "X"; }

// Dense table of bitstring weights. Raw PEC tables carry negatives and are
// flagged unnormalized until post-processing.
struct ProbabilityTable {
    std::size_t size = 0;
    MeasBasis basis = MeasBasis::Z;
    std::vector<double> p;
    bool normalized = false;

    ProbabilityTable() = default;
    ProbabilityTable(std::size_t L, MeasBasis b, bool norm = false)
        : size(L), basis(b), p(std::size_t(1) << L, 0.0), normalized(norm) {}

    std::size_t dim() const { return p.size(); }

    double sum() const {
        double s = 0;
        for (double v : p) s += v;
        return s;
    }

    double min_entry() const { return *std::min_element(p.begin(), p.end()); }
};

inline void require_normalized(const ProbabilityTable &t) {
    if (!t.normalized) throw ConfigError("probability table must be normalized first");
    if (std::abs(t.sum() - 1.0) > 1e-9)
        throw NumericalError("normalized table sums to " + std::to_string(t.sum()));
}

// Weights of the state in the given measurement basis; X applies an H wall
// before reading amplitudes.
inline ProbabilityTable measure_basis(const Statevector &psi, MeasBasis basis) {
    ProbabilityTable t(psi.size, basis, true);
    if (basis == MeasBasis::X) {
        Statevector rotated = psi;
        apply_h_wall(rotated);
        for (std::size_t i = 0; i < rotated.dim(); ++i) t.p[i] = std::norm(rotated.amps[i]);
    } else {
        for (std::size_t i = 0; i < psi.dim(); ++i) t.p[i] = std::norm(psi.amps[i]);
    }
    return t;
}

// Marginal over the contiguous subsystem [0, l).
inline ProbabilityTable marginal(const ProbabilityTable &t, std::size_t l) {
    require_normalized(t);
    if (l < 1 || l > t.size) throw ConfigError("marginal subsystem length out of range");
    ProbabilityTable out(l, t.basis, true);
    const std::size_t lo_dim = std::size_t(1) << l;
    for (std::size_t i = 0; i < t.dim(); ++i) out.p[i & (lo_dim - 1)] += t.p[i];
    return out;
}

// Marginal over the complementary subsystem [l, L).
inline ProbabilityTable complement_marginal(const ProbabilityTable &t, std::size_t l) {
    require_normalized(t);
    if (l < 1 || l >= t.size) throw ConfigError("marginal subsystem length out of range");
    ProbabilityTable out(t.size - l, t.basis, true);
    for (std::size_t i = 0; i < t.dim(); ++i) out.p[i >> l] += t.p[i];
    return out;
}

// Site rotation i -> (i + shift) mod L applied to the table (used to test
// translation invariance of subsystem entropies).
inline ProbabilityTable rotate_table(const ProbabilityTable &t, std::size_t shift) {
    ProbabilityTable out(t.size, t.basis, t.normalized);
    const std::size_t L = t.size;
    for (std::size_t b = 0; b < t.dim(); ++b) {
        std::size_t r = 0;
        for (std::size_t i = 0; i < L; ++i)
            if (bit_at(b, static_cast<unsigned>(i))) r |= std::size_t(1) << ((i + shift) % L);
        out.p[r] = t.p[b];
    }
    return out;
}

struct CountTable {
    std::size_t size = 0;
    MeasBasis basis = MeasBasis::Z;
    std::vector<std::uint64_t> counts;
    std::uint64_t shots = 0;
};

// Multinomial sample by CDF inversion; reproducible given seed.
inline CountTable sample_counts(const ProbabilityTable &t, std::uint64_t shots,
                                std::uint64_t seed) {
    require_normalized(t);
    if (t.min_entry() < -1e-12)
        throw ConfigError("table has negative entries; post-process before sampling");
    std::vector<double> cdf(t.dim());
    double acc = 0;
    for (std::size_t i = 0; i < t.dim(); ++i) {
        acc += std::max(0.0, t.p[i]);
        cdf[i] = acc;
    }
    CountTable out{t.size, t.basis, std::vector<std::uint64_t>(t.dim(), 0), shots};
    RngStream rng(seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform01() * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx = std::min<std::size_t>(it - cdf.begin(), t.dim() - 1);
        ++out.counts[idx];
    }
    return out;
}

inline ProbabilityTable counts_to_table(const CountTable &c) {
    if (c.shots == 0) throw ConfigError("empty count table");
    ProbabilityTable t(c.size, c.basis, true);
    for (std::size_t i = 0; i < t.dim(); ++i)
        t.p[i] = static_cast<double>(c.counts[i]) / static_cast<double>(c.shots);
    return t;
}

} // namespace virasoro
