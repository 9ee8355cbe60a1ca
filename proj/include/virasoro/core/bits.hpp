// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <bit>
#include <cstdint>

namespace virasoro {

using bitstring = std::uint64_t;

inline int popcount(bitstring b) { return std::popcount(b); }

// Parity of the number of set bits: 0 (even) or 1 (odd).
inline int bit_parity(bitstring b) { return std::popcount(b) & 1; }

inline int bit_at(bitstring b, unsigned q) { return static_cast<int>((b >> q) & 1ULL); }

// Reverse the lowest nbits of x (bit 0 <-> bit nbits-1).
inline bitstring bit_reverse(bitstring x, unsigned nbits) {
    bitstring r = 0;
    for (unsigned i = 0; i < nbits; ++i) {
        r = (r << 1) | ((x >> i) & 1ULL);
    }
    return r;
}

inline bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline unsigned log2_exact(std::uint64_t x) {
    unsigned n = 0;
    while ((1ULL << n) < x) ++n;
    return n;
}

} // namespace virasoro
