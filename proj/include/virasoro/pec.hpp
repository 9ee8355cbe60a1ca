// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "virasoro/circuit.hpp"
#include "virasoro/core/rng.hpp"
#include "virasoro/measurement.hpp"
#include "virasoro/noise.hpp"
#include "virasoro/walsh.hpp"

namespace virasoro {

// One stochastic unraveling of the noisy circuit: after each tagged layer,
// every channel independently inserts its Pauli with probability 1 - beta.
inline Statevector simulate_noisy(const Circuit &circuit, const NoiseModel &model,
                                  const Statevector &input, RngStream &rng) {
    if (circuit.size != input.size) throw ConfigError("circuit and state sizes differ");
    Statevector psi = input;
    for (const auto &layer : circuit.layers) {
        detail::check_layer_disjoint(layer, circuit.size);
        for (const auto &g : layer.gates) apply_gate(psi, g);
        if (const auto *channels = model.channels_for(layer.tag)) {
            for (const auto &ch : *channels)
                if (rng.uniform01() >= ch.beta) apply_pauli(psi, ch.pauli);
        }
    }
    return psi;
}

inline Statevector simulate_noisy(const Circuit &circuit, const NoiseModel &model,
                                  const Statevector &input, std::uint64_t seed) {
    RngStream rng(seed);
    return simulate_noisy(circuit, model, input, rng);
}

struct PECEstimate {
    std::string observable;
    double value = 0;
    double std_error = 0;
    double gamma_total = 1;
    std::size_t samples = 0;
};

// One mitigated circuit instance: the product of inversion signs and the
// bitstrings read out from its shots.
struct PecInstance {
    double sign = 1.0;
    std::vector<std::uint32_t> outcomes;
};

namespace detail {

inline std::vector<std::uint32_t> sample_outcomes(const Statevector &psi, std::size_t shots,
                                                  RngStream &rng) {
    std::vector<double> cdf(psi.dim());
    double acc = 0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        acc += std::norm(psi.amps[i]);
        cdf[i] = acc;
    }
    std::vector<std::uint32_t> out(shots);
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = rng.uniform01() * acc;
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        out[s] = static_cast<std::uint32_t>(std::min<std::size_t>(it - cdf.begin(), psi.dim() - 1));
    }
    return out;
}

// Index of the first layer carrying noise; everything before it is the
// deterministic prefix shared by all trajectory samples.
inline std::size_t first_noisy_layer(const Circuit &circuit, const NoiseModel &model) {
    for (std::size_t i = 0; i < circuit.layers.size(); ++i)
        if (model.channels_for(circuit.layers[i].tag)) return i;
    return circuit.layers.size();
}

// Trajectory + quasi-probability inversion for one instance, starting from
// the cached prefix state at layer `start`.
inline double run_instance(const Circuit &circuit, const NoiseModel &model, Statevector &psi,
                           std::size_t start, RngStream &rng) {
    double sign = 1.0;
    for (std::size_t i = start; i < circuit.layers.size(); ++i) {
        const auto &layer = circuit.layers[i];
        for (const auto &g : layer.gates) apply_gate(psi, g);
        if (const auto *channels = model.channels_for(layer.tag)) {
            for (const auto &ch : *channels) {
                const PauliAction act(ch.pauli);
                // Physical noise branch.
                if (rng.uniform01() >= ch.beta) apply_pauli(psi, act);
                // Inversion branch: identity w.p. beta, else the Pauli with
                // a sign flip.
                if (rng.uniform01() >= ch.beta) {
                    apply_pauli(psi, act);
                    sign = -sign;
                }
            }
        }
    }
    return sign;
}

} // namespace detail

// Error-mitigated ensemble: N instances of `shots` readouts each, with the
// inversion sign and gamma bookkeeping needed to reassemble unbiased
// expectation values and probability tables.
struct MitigatedRun {
    std::size_t size = 0;
    MeasBasis basis = MeasBasis::Z;
    double gamma = 1.0;
    std::size_t shots = 0;
    std::vector<PecInstance> instances;

    // Signed empirical table (gamma/N) sum_l sign_l f_l over the chosen
    // instance subset; the full-run table uses every instance.
    ProbabilityTable signed_table(const std::vector<std::size_t> &subset) const {
        ProbabilityTable t(size, basis, false);
        if (subset.empty()) throw ConfigError("empty instance subset");
        const double w =
            gamma / (static_cast<double>(subset.size()) * static_cast<double>(shots));
        for (const std::size_t idx : subset) {
            const auto &inst = instances.at(idx);
            for (const std::uint32_t b : inst.outcomes) t.p[b] += inst.sign * w;
        }
        return t;
    }

    std::vector<std::size_t> all_indices() const {
        std::vector<std::size_t> idx(instances.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        return idx;
    }

    // Z-substring expectations via the Walsh-Hadamard transform of the
    // signed table, with the identity substring pinned to its exact value 1.
    std::vector<double> expectations(const std::vector<std::size_t> &subset) const {
        std::vector<double> e = z_substring_expectations(signed_table(subset));
        e[0] = 1.0;
        return e;
    }

    // Raw mitigated probability table (may carry negative entries).
    ProbabilityTable raw_table(const std::vector<std::size_t> &subset) const {
        return walsh_hadamard_probs(expectations(subset), size, basis);
    }

    ProbabilityTable raw_table() const { return raw_table(all_indices()); }
};

struct PecConfig {
    std::size_t samples = 10000;
    std::size_t shots = 200;
    std::uint64_t seed = 1;
};

// Collect the mitigated ensemble for a circuit under a noise model. The
// basis-X variant appends a measurement H wall (noiseless) so Z-string
// readout happens in the conformal basis.
inline MitigatedRun collect_mitigated(Circuit circuit, const NoiseModel &model, MeasBasis basis,
                                      const PecConfig &cfg) {
    if (cfg.samples < 2) throw ConfigError("need at least 2 mitigated instances");
    if (basis == MeasBasis::X) {
        auto &wall = circuit.add_layer("meas_h_wall");
        for (unsigned q = 0; q < circuit.size; ++q) wall.gates.push_back(make_h(q));
    }
    MitigatedRun run;
    run.size = circuit.size;
    run.basis = basis;
    run.gamma = gamma_total(model, circuit);
    run.shots = cfg.shots;
    run.instances.resize(cfg.samples);

    const std::size_t split = detail::first_noisy_layer(circuit, model);
    Statevector prefix(circuit.size);
    for (std::size_t i = 0; i < split; ++i) {
        detail::check_layer_disjoint(circuit.layers[i], circuit.size);
        for (const auto &g : circuit.layers[i].gates) apply_gate(prefix, g);
    }
    for (std::size_t s = 0; s < cfg.samples; ++s) {
        RngStream rng = RngStream::child(cfg.seed, s);
        Statevector psi = prefix;
        const double sign = detail::run_instance(circuit, model, psi, split, rng);
        run.instances[s] = {sign, detail::sample_outcomes(psi, cfg.shots, rng)};
    }
    return run;
}

// Mitigated estimate of one diagonal Z-substring observable.
inline PECEstimate pec_sample(const Circuit &circuit, const NoiseModel &model,
                              const PauliString &observable, const PecConfig &cfg) {
    PauliAction act(observable);
    if (!act.diagonal()) throw ConfigError("pec_sample expects a Z-substring observable");
    const MitigatedRun run = collect_mitigated(circuit, model, MeasBasis::Z, cfg);
    double mean = 0, m2 = 0;
    std::size_t n = 0;
    for (const auto &inst : run.instances) {
        double shot_mean = 0;
        for (const std::uint32_t b : inst.outcomes)
            shot_mean += bit_parity(b & act.sign_mask) ? -1.0 : 1.0;
        shot_mean /= static_cast<double>(inst.outcomes.size());
        const double x = inst.sign * shot_mean;
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    PECEstimate est;
    est.observable = observable.str();
    est.gamma_total = run.gamma;
    est.samples = n;
    est.value = run.gamma * mean;
    est.std_error = run.gamma * std::sqrt(m2 / (static_cast<double>(n) * (n - 1.0)));
    return est;
}

} // namespace virasoro
