// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "virasoro/core/bits.hpp"
#include "virasoro/core/rng.hpp"
#include "virasoro/measurement.hpp"
#include "virasoro/pec.hpp"

namespace virasoro {

enum class SectorKind { None, EvenParity, HalfFilling };

inline std::string to_string(SectorKind s) {
    switch (s) {
    case SectorKind::None: return "none";
    case SectorKind::EvenParity: return "even_parity";
    case SectorKind::HalfFilling: return "half_filling";
    }
    return "?";
}

inline bool in_sector(SectorKind sector, bitstring b, std::size_t L) {
    switch (sector) {
    case SectorKind::None: return true;
    case SectorKind::EvenParity: return bit_parity(b) == 0;
    case SectorKind::HalfFilling: return popcount(b) == static_cast<int>(L) / 2;
    }
    return true;
}

// Zero every out-of-sector entry; in-sector entries untouched. The result
// keeps its normalized flag only if nothing was removed.
inline ProbabilityTable project_sector(const ProbabilityTable &t, SectorKind sector) {
    if (sector == SectorKind::HalfFilling && t.basis != MeasBasis::Z)
        throw ConfigError("half-filling sector applies to Z-basis tables only");
    if (sector == SectorKind::EvenParity && t.basis != MeasBasis::X)
        throw ConfigError("even-parity sector applies to X-basis tables only");
    ProbabilityTable out = t;
    double removed = 0;
    for (std::size_t b = 0; b < t.dim(); ++b) {
        if (!in_sector(sector, b, t.size)) {
            removed += std::abs(out.p[b]);
            out.p[b] = 0;
        }
    }
    if (removed > 1e-12) out.normalized = false;
    return out;
}

// Shared cutoff: RMS across datasets of the per-dataset largest |negative
// entry| (0 for datasets without negatives).
inline double compute_cutoff(const std::vector<ProbabilityTable> &datasets) {
    if (datasets.empty()) throw ConfigError("cutoff needs at least one dataset");
    double acc = 0;
    for (const auto &t : datasets) {
        double worst = 0;
        for (double v : t.p)
            if (v < 0) worst = std::max(worst, -v);
        acc += worst * worst;
    }
    return std::sqrt(acc / static_cast<double>(datasets.size()));
}

// Zero entries below the cutoff, then renormalize the remainder.
inline ProbabilityTable cutoff_renormalize(const ProbabilityTable &t, double cutoff) {
    if (cutoff < 0) throw ConfigError("cutoff must be non-negative");
    ProbabilityTable out = t;
    double sum = 0;
    for (double &v : out.p) {
        if (v < cutoff) v = 0;
        sum += v;
    }
    if (sum <= 0) throw NumericalError("all probability removed by sector/cutoff processing");
    for (double &v : out.p) v /= sum;
    out.normalized = true;
    return out;
}

struct BootstrapEnsemble {
    std::vector<ProbabilityTable> datasets; // normalized, sector-pure
    double cutoff = 0;
    std::size_t resample_size = 0;
};

// B datasets of M instances resampled with replacement at mitigated-instance
// granularity; one shared cutoff across the ensemble.
inline BootstrapEnsemble bootstrap(const MitigatedRun &run, SectorKind sector, std::size_t B,
                                   std::size_t M, std::uint64_t seed) {
    if (M > run.instances.size()) throw ConfigError("resample size exceeds instance count");
    if (M < 1 || B < 1) throw ConfigError("bootstrap needs B >= 1 and M >= 1");
    BootstrapEnsemble ens;
    ens.resample_size = M;
    std::vector<ProbabilityTable> raw;
    raw.reserve(B);
    for (std::size_t b = 0; b < B; ++b) {
        RngStream rng = RngStream::child(seed, b);
        std::vector<std::size_t> subset(M);
        for (std::size_t i = 0; i < M; ++i)
            subset[i] = rng.integer(run.instances.size());
        raw.push_back(project_sector(run.raw_table(subset), sector));
    }
    ens.cutoff = compute_cutoff(raw);
    ens.datasets.reserve(B);
    for (const auto &t : raw) ens.datasets.push_back(cutoff_renormalize(t, ens.cutoff));
    return ens;
}

struct AggregateResult {
    double c = 0;
    double sigma_total = 0;
    double sigma_rand = 0;
    double sigma_sys = 0;
};

// Mean across datasets with random (scatter) and systematic (fit error RMS)
// uncertainties combined in quadrature.
inline AggregateResult aggregate(const std::vector<double> &c_values,
                                 const std::vector<double> &fit_errors) {
    if (c_values.size() < 2) throw ConfigError("aggregate needs at least 2 datasets");
    if (c_values.size() != fit_errors.size())
        throw ConfigError("value and fit-error counts differ");
    AggregateResult out;
    const double n = static_cast<double>(c_values.size());
    for (double c : c_values) out.c += c;
    out.c /= n;
    double var = 0, sys2 = 0;
    for (std::size_t i = 0; i < c_values.size(); ++i) {
        var += (c_values[i] - out.c) * (c_values[i] - out.c);
        sys2 += fit_errors[i] * fit_errors[i];
    }
    out.sigma_rand = std::sqrt(var / (n - 1.0));
    out.sigma_sys = std::sqrt(sys2 / n);
    out.sigma_total = std::sqrt(out.sigma_rand * out.sigma_rand + out.sigma_sys * out.sigma_sys);
    return out;
}

} // namespace virasoro
