// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <vector>

#include "virasoro/core/bits.hpp"
#include "virasoro/core/errors.hpp"
#include "virasoro/measurement.hpp"

namespace virasoro {

// In-place unnormalized Walsh-Hadamard transform; applying it twice
// multiplies by the length.
inline void fwht(std::vector<double> &a) {
    if (!is_power_of_two(a.size())) throw ConfigError("transform length must be a power of two");
    for (std::size_t len = 1; len < a.size(); len <<= 1)
        for (std::size_t i = 0; i < a.size(); i += len << 1)
            for (std::size_t j = i; j < i + len; ++j) {
                const double u = a[j], v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
}

// <Z^s> for every substring mask s: the transform of the weight table.
inline std::vector<double> z_substring_expectations(const ProbabilityTable &t) {
    std::vector<double> e = t.p;
    fwht(e);
    return e;
}

// p(b) = 2^{-L} sum_s <Z^s> (-1)^{popcount(b & s)}. The result sums to the
// identity-substring entry; entries may be negative for mitigated inputs.
inline ProbabilityTable walsh_hadamard_probs(const std::vector<double> &expectations,
                                             std::size_t L, MeasBasis basis = MeasBasis::Z) {
    if (expectations.size() != (std::size_t(1) << L))
        throw ConfigError("expected one expectation per Z-substring");
    ProbabilityTable t(L, basis, false);
    t.p = expectations;
    fwht(t.p);
    const double scale = 1.0 / static_cast<double>(t.dim());
    for (double &v : t.p) v *= scale;
    return t;
}

} // namespace virasoro
