// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "virasoro/cft_fit.hpp"
#include "virasoro/checkerboard.hpp"
#include "virasoro/measurement.hpp"
#include "virasoro/noise.hpp"
#include "virasoro/postprocess.hpp"

namespace virasoro {

using json = nlohmann::json;

// --- files ------------------------------------------------------------------

inline std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
}

inline json load_json_file(const std::string &path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::parse_error &e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
}

inline void write_json_file(const std::string &path, const json &j) {
    write_text_file(path, j.dump(2) + "\n");
}

// --- noise model: { layer_tag: [ {pauli, beta}, ... ], ... } ----------------

inline NoiseModel noise_model_from_json(const json &j) {
    if (!j.is_object()) throw ConfigError("noise model must be a JSON object");
    NoiseModel m;
    for (const auto &[tag, arr] : j.items()) {
        if (!arr.is_array()) throw ConfigError("noise layer '" + tag + "' must hold an array");
        std::vector<NoiseChannel> chans;
        for (const auto &e : arr) {
            NoiseChannel ch;
            ch.pauli = PauliString::parse(e.at("pauli").get<std::string>());
            ch.beta = e.at("beta").get<double>();
            chans.push_back(std::move(ch));
        }
        m.layers[tag] = std::move(chans);
    }
    return m;
}

inline json noise_model_to_json(const NoiseModel &m) {
    json j = json::object();
    for (const auto &[tag, chans] : m.layers) {
        json arr = json::array();
        for (const auto &ch : chans)
            arr.push_back(json{{"pauli", ch.pauli.str()}, {"beta", ch.beta}});
        j[tag] = std::move(arr);
    }
    return j;
}

inline NoiseModel load_noise_model(const std::string &path, std::size_t L) {
    NoiseModel m = noise_model_from_json(load_json_file(path));
    m.validate(L);
    return m;
}

// --- fit artifacts -----------------------------------------------------------

inline json fit_json(const FitResult &f, const std::string &model, const std::string &basis) {
    json j;
    j["model"] = model;
    j["basis"] = basis;
    j["n"] = f.n;
    j["boundary"] = to_string(f.geometry);
    j["kind"] = to_string(f.kind);
    j["c"] = f.c;
    j["c_n"] = f.c_n;
    j["sigma_fit"] = f.sigma;
    j["intercept"] = f.intercept;
    j["points"] = f.points;
    return j;
}

inline json aggregate_json(const AggregateResult &a) {
    return {{"c", a.c},
            {"sigma_total", a.sigma_total},
            {"sigma_rand", a.sigma_rand},
            {"sigma_sys", a.sigma_sys}};
}

inline json ensemble_json(const BootstrapEnsemble &e, const std::vector<FitResult> &fits,
                          const AggregateResult &agg) {
    json per = json::array();
    for (const auto &f : fits)
        per.push_back({{"c", f.c}, {"c_n", f.c_n}, {"sigma_fit", f.sigma}});
    return {{"B", e.datasets.size()},
            {"M", e.resample_size},
            {"cutoff", e.cutoff},
            {"per_dataset", std::move(per)},
            {"aggregate", aggregate_json(agg)}};
}

// --- CSV ---------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

inline bool numeric_lead(const std::string &line) {
    for (char ch : line) {
        if (ch == ' ' || ch == '\t') continue;
        return (ch >= '0' && ch <= '9') || ch == '-' || ch == '+' || ch == '.';
    }
    return false;
}

} // namespace detail

// Bitstring character i is site i, so the leftmost character is qubit 0.
inline std::string to_bitstring(std::size_t index, std::size_t L) {
    std::string s(L, '0');
    for (std::size_t q = 0; q < L; ++q)
        if (index >> q & 1) s[q] = '1';
    return s;
}

inline std::size_t bitstring_index(const std::string &s) {
    std::size_t idx = 0;
    for (std::size_t q = 0; q < s.size(); ++q) {
        if (s[q] == '1')
            idx |= std::size_t(1) << q;
        else if (s[q] != '0')
            throw ConfigError("bitstring must contain only 0/1");
    }
    return idx;
}

inline std::string counts_csv(const CountTable &t) {
    std::ostringstream out;
    out << "bitstring,count\n";
    for (std::size_t i = 0; i < t.counts.size(); ++i)
        if (t.counts[i] > 0) out << to_bitstring(i, t.size) << "," << t.counts[i] << "\n";
    return out.str();
}

inline CountTable parse_counts_csv(const std::string &text, MeasBasis basis) {
    std::istringstream in(text);
    std::string line;
    CountTable t;
    t.basis = basis;
    while (std::getline(in, line)) {
        if (line.empty() || !detail::numeric_lead(line)) continue;
        const auto f = detail::split_csv(line);
        if (f.size() != 2) throw ConfigError("counts CSV rows must be bitstring,count");
        if (t.size == 0) {
            t.size = f[0].size();
            t.counts.assign(std::size_t(1) << t.size, 0);
        }
        if (f[0].size() != t.size) throw ConfigError("counts CSV bitstring lengths differ");
        const auto c = std::stoull(f[1]);
        t.counts[bitstring_index(f[0])] += c;
        t.shots += c;
    }
    if (t.size == 0) throw ConfigError("counts CSV holds no rows");
    return t;
}

inline std::string probability_csv(const ProbabilityTable &t) {
    std::ostringstream out;
    out << "bitstring,probability\n" << std::setprecision(17);
    for (std::size_t i = 0; i < t.dim(); ++i)
        if (t.p[i] != 0.0) out << to_bitstring(i, t.size) << "," << t.p[i] << "\n";
    return out.str();
}

struct EntropyRow {
    std::string basis;
    double n = 0;
    std::size_t l = 0;
    double value = 0;
};

inline std::string entropy_csv(const std::vector<EntropyRow> &rows) {
    std::ostringstream out;
    out << "basis,n,l,value\n" << std::setprecision(17);
    for (const auto &r : rows) out << r.basis << "," << r.n << "," << r.l << "," << r.value << "\n";
    return out.str();
}

inline std::vector<EntropyRow> parse_entropy_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::vector<EntropyRow> rows;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && !detail::numeric_lead(line) && line.rfind("basis", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        const auto f = detail::split_csv(line);
        if (f.size() != 4) throw ConfigError("entropy CSV rows must be basis,n,l,value");
        rows.push_back({f[0], std::stod(f[1]), std::stoul(f[2]), std::stod(f[3])});
    }
    if (rows.empty()) throw ConfigError("entropy CSV holds no rows");
    return rows;
}

inline std::string energy_by_order_csv(const std::vector<double> &energies) {
    std::ostringstream out;
    out << "r,energy\n" << std::setprecision(17);
    for (std::size_t i = 0; i < energies.size(); ++i) out << (i + 1) << "," << energies[i] << "\n";
    return out.str();
}

// Checkerboard angles keyed by (layer, site, slot); round-trips through
// checkerboard_param_index so files survive depth or size changes.
inline std::string theta_csv(const std::vector<double> &theta, std::size_t L) {
    if (L == 0 || theta.size() % L != 0 || theta.size() / L % 2 != 1)
        throw ConfigError("theta vector is not L(2d+1) long");
    std::ostringstream out;
    out << "layer,site,slot,value\n" << std::setprecision(17);
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const std::size_t layer = k / (2 * L), rem = k % (2 * L);
        out << layer << "," << rem % L << "," << rem / L << "," << theta[k] << "\n";
    }
    return out.str();
}

inline std::vector<double> parse_theta_csv(const std::string &text, std::size_t &L_out) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t, double>> rows;
    std::size_t max_layer = 0, max_site = 0;
    while (std::getline(in, line)) {
        if (line.empty() || !detail::numeric_lead(line)) continue;
        const auto f = detail::split_csv(line);
        if (f.size() != 4) throw ConfigError("theta CSV rows must be layer,site,slot,value");
        const std::size_t layer = std::stoul(f[0]), site = std::stoul(f[1]),
                          slot = std::stoul(f[2]);
        if (slot > 1) throw ConfigError("theta CSV slot must be 0 or 1");
        rows.emplace_back(layer, site, slot, std::stod(f[3]));
        max_layer = std::max(max_layer, layer);
        max_site = std::max(max_site, site);
    }
    if (rows.empty()) throw ConfigError("theta CSV holds no rows");
    const std::size_t L = max_site + 1, d = max_layer;
    const std::size_t P = checkerboard_param_count(L, d);
    if (rows.size() != P) throw ConfigError("theta CSV row count does not form L(2d+1) angles");
    std::vector<double> theta(P);
    std::vector<bool> seen(P, false);
    for (const auto &[layer, site, slot, value] : rows) {
        const std::size_t k = checkerboard_param_index(L, layer, site, slot);
        if (k >= P || seen[k]) throw ConfigError("theta CSV entry out of range or repeated");
        seen[k] = true;
        theta[k] = value;
    }
    L_out = L;
    return theta;
}

} // namespace virasoro
