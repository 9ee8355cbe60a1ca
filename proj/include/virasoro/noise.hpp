// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "virasoro/circuit.hpp"
#include "virasoro/pauli.hpp"

namespace virasoro {

// Single Pauli channel Lambda(rho) = beta rho + (1-beta) P rho P.
struct NoiseChannel {
    PauliString pauli;
    double beta = 1.0;
};

inline double channel_gamma(double beta) { return 1.0 / (2.0 * beta - 1.0); }

// Channels keyed by circuit layer tag; applied after the layer's gates.
struct NoiseModel {
    std::map<std::string, std::vector<NoiseChannel>> layers;

    bool empty() const { return layers.empty(); }

    const std::vector<NoiseChannel> *channels_for(const std::string &tag) const {
        const auto it = layers.find(tag);
        return it == layers.end() ? nullptr : &it->second;
    }

    void validate(std::size_t L) const {
        for (const auto &[tag, channels] : layers) {
            if (tag.empty()) throw ConfigError("noise layer tag must be non-empty");
            for (const auto &ch : channels) {
                if (ch.pauli.size() != L)
                    throw ConfigError("noise Pauli length differs from system size in layer '" +
                                      tag + "'");
                const int w = ch.pauli.weight();
                if (w < 1 || w > 2)
                    throw ConfigError("noise Paulis must be one- or two-local in layer '" + tag +
                                      "'");
                if (!(ch.beta > 0.5 && ch.beta <= 1.0))
                    throw ConfigError("channel beta must satisfy 1/2 < beta <= 1 in layer '" +
                                      tag + "'");
            }
        }
    }
};

// Product of per-channel gammas over every tagged layer instance in the
// circuit. Every model tag must match at least one circuit layer.
inline double gamma_total(const NoiseModel &model, const Circuit &circuit) {
    model.validate(circuit.size);
    std::map<std::string, bool> seen;
    for (const auto &[tag, channels] : model.layers) seen[tag] = false;
    double gamma = 1.0;
    for (const auto &layer : circuit.layers) {
        const auto *channels = model.channels_for(layer.tag);
        if (!channels) continue;
        seen[layer.tag] = true;
        for (const auto &ch : *channels) gamma *= channel_gamma(ch.beta);
    }
    for (const auto &[tag, found] : seen)
        if (!found) throw ConfigError("noise layer tag '" + tag + "' not present in circuit");
    return gamma;
}

// Per-qubit overhead of one layer: gamma_layer = gbar^L.
inline double gamma_bar_per_qubit(double gamma_layer, std::size_t L) {
    return std::pow(gamma_layer, 1.0 / static_cast<double>(L));
}

} // namespace virasoro
