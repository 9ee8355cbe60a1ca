// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <chrono>
#include <ctime>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "virasoro/diagonalize.hpp"
#include "virasoro/direct_prep.hpp"
#include "virasoro/entropy.hpp"
#include "virasoro/io.hpp"
#include "virasoro/krylov.hpp"
#include "virasoro/models.hpp"
#include "virasoro/pec.hpp"
#include "virasoro/vqe.hpp"

namespace virasoro {

struct PipelineConfig {
    std::string model = "tfi"; // tfi | xxz | tricritical | xy
    std::size_t L = 8;
    Boundary boundary = Boundary::Periodic;
    double J = 1.0, h = 1.0;              // tfi / tricritical couplings
    double delta = -0.5;                  // xxz anisotropy
    double lambda3 = 0.428;               // tricritical three-site coupling
    double xy_gamma = 1.0, xy_lambda = 1.0;
    std::string preparation = "ed"; // ed | vqe | direct | krylov
    std::vector<MeasBasis> bases{MeasBasis::X};
    std::vector<double> moments{2, 4, 6};
    std::string noise_path; // empty: exact noiseless tables
    std::size_t samples = 10000;
    std::size_t shots = 200;
    std::size_t bootstrap_b = 20;
    std::size_t bootstrap_m = 1000;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    std::size_t vqe_depth = 12;
    std::size_t vqe_restarts = 10;
    std::size_t krylov_order = 20;
    double krylov_dt = 0.0;
    double krylov_eps = 1e-10;
    std::string krylov_reference = "plus"; // plus | minus
};

namespace detail {

inline MeasBasis parse_basis(std::string s) {
    for (char &ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (s == "z") return MeasBasis::Z;
    if (s == "x") return MeasBasis::X;
    throw ConfigError("basis must be Z or X, got '" + s + "'");
}

inline Boundary parse_boundary(std::string s) {
    for (char &ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (s == "periodic" || s == "pbc") return Boundary::Periodic;
    if (s == "open" || s == "obc") return Boundary::Open;
    throw ConfigError("boundary must be periodic or open, got '" + s + "'");
}

inline std::uint64_t fnv1a64(const std::string &s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

inline std::string basis_slug(MeasBasis b) { return b == MeasBasis::Z ? "z" : "x"; }

inline std::string moment_slug(double n) {
    std::ostringstream os;
    os << n;
    return os.str();
}

} // namespace detail

inline json pipeline_config_json(const PipelineConfig &c) {
    json bases = json::array();
    for (MeasBasis b : c.bases) bases.push_back(to_string(b));
    json j;
    j["model"] = c.model;
    j["L"] = c.L;
    j["boundary"] = (c.boundary == Boundary::Periodic) ? "periodic" : "open";
    j["J"] = c.J;
    j["h"] = c.h;
    j["delta"] = c.delta;
    j["lambda3"] = c.lambda3;
    j["xy_gamma"] = c.xy_gamma;
    j["xy_lambda"] = c.xy_lambda;
    j["preparation"] = c.preparation;
    j["bases"] = std::move(bases);
    j["moments"] = c.moments;
    j["noise"] = c.noise_path;
    j["samples"] = c.samples;
    j["shots"] = c.shots;
    j["bootstrap_B"] = c.bootstrap_b;
    j["bootstrap_M"] = c.bootstrap_m;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    j["vqe_depth"] = c.vqe_depth;
    j["vqe_restarts"] = c.vqe_restarts;
    j["krylov"] = {{"order", c.krylov_order},
                   {"dt", c.krylov_dt},
                   {"eps_s", c.krylov_eps},
                   {"reference", c.krylov_reference}};
    return j;
}

inline PipelineConfig parse_pipeline_config(const json &j) {
    if (!j.is_object()) throw ConfigError("pipeline config must be a JSON object");
    static const std::vector<std::string> known = {
        "model",   "L",       "boundary",    "J",           "h",           "delta",
        "lambda3", "xy_gamma", "xy_lambda",  "preparation", "bases",       "moments",
        "noise",   "samples", "shots",       "bootstrap_B", "bootstrap_M", "seed",
        "output_dir", "vqe_depth", "vqe_restarts", "krylov"};
    for (const auto &[key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown config key '" + key + "'");
    PipelineConfig c;
    if (j.contains("model")) c.model = j["model"].get<std::string>();
    if (j.contains("L")) c.L = j["L"].get<std::size_t>();
    if (j.contains("boundary")) c.boundary = detail::parse_boundary(j["boundary"].get<std::string>());
    if (j.contains("J")) c.J = j["J"].get<double>();
    if (j.contains("h")) c.h = j["h"].get<double>();
    if (j.contains("delta")) c.delta = j["delta"].get<double>();
    if (j.contains("lambda3")) c.lambda3 = j["lambda3"].get<double>();
    if (j.contains("xy_gamma")) c.xy_gamma = j["xy_gamma"].get<double>();
    if (j.contains("xy_lambda")) c.xy_lambda = j["xy_lambda"].get<double>();
    if (j.contains("preparation")) c.preparation = j["preparation"].get<std::string>();
    if (j.contains("bases")) {
        c.bases.clear();
        for (const auto &b : j["bases"]) c.bases.push_back(detail::parse_basis(b.get<std::string>()));
    }
    if (j.contains("moments")) c.moments = j["moments"].get<std::vector<double>>();
    if (j.contains("noise")) c.noise_path = j["noise"].get<std::string>();
    if (j.contains("samples")) c.samples = j["samples"].get<std::size_t>();
    if (j.contains("shots")) c.shots = j["shots"].get<std::size_t>();
    if (j.contains("bootstrap_B")) c.bootstrap_b = j["bootstrap_B"].get<std::size_t>();
    if (j.contains("bootstrap_M")) c.bootstrap_m = j["bootstrap_M"].get<std::size_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("vqe_depth")) c.vqe_depth = j["vqe_depth"].get<std::size_t>();
    if (j.contains("vqe_restarts")) c.vqe_restarts = j["vqe_restarts"].get<std::size_t>();
    if (j.contains("krylov")) {
        const auto &k = j["krylov"];
        if (k.contains("order")) c.krylov_order = k["order"].get<std::size_t>();
        if (k.contains("dt")) c.krylov_dt = k["dt"].get<double>();
        if (k.contains("eps_s")) c.krylov_eps = k["eps_s"].get<double>();
        if (k.contains("reference")) c.krylov_reference = k["reference"].get<std::string>();
    }
    if (c.model != "tfi" && c.model != "xxz" && c.model != "tricritical" && c.model != "xy")
        throw ConfigError("unknown model '" + c.model + "'");
    if (c.preparation != "ed" && c.preparation != "vqe" && c.preparation != "direct" &&
        c.preparation != "krylov")
        throw ConfigError("unknown preparation '" + c.preparation + "'");
    if (c.bases.empty()) throw ConfigError("config lists no measurement bases");
    if (c.moments.empty()) throw ConfigError("config lists no Renyi moments");
    return c;
}

// The hash covers every physics-relevant field; the output directory is
// excluded so relocating a run does not change its summary.
inline std::string pipeline_config_hash(const PipelineConfig &c) {
    json j = pipeline_config_json(c);
    j.erase("output_dir");
    return detail::hex64(detail::fnv1a64(j.dump()));
}

inline SpinHamiltonian build_pipeline_model(const PipelineConfig &c) {
    if (c.model == "tfi") return build_tfi(c.L, c.J, c.h, c.boundary);
    if (c.model == "xxz") return build_xxz(c.L, c.delta, c.boundary);
    if (c.model == "tricritical")
        return build_tricritical(c.L, c.J, c.h, c.lambda3, c.boundary);
    if (c.model == "xy") return build_xy_fermionic(c.L, c.xy_gamma, c.xy_lambda);
    throw ConfigError("unknown model '" + c.model + "'");
}

// Transition moment n_t entering the c_n -> c conversion.
inline double pipeline_nt(const PipelineConfig &c, MeasBasis basis) {
    if (c.model == "xxz")
        return basis == MeasBasis::Z ? nt_xxz_z(c.delta) : nt_xxz_x(c.delta);
    return 1.0; // Ising-family chains: every n > 1 sits above the transition
}

// Symmetry sector of the measured distribution, if the basis resolves one.
inline SectorKind pipeline_sector(const PipelineConfig &c, MeasBasis basis) {
    if (c.model == "xxz") return basis == MeasBasis::Z ? SectorKind::HalfFilling : SectorKind::EvenParity;
    if (c.model == "tfi" || c.model == "tricritical")
        return basis == MeasBasis::X ? SectorKind::EvenParity : SectorKind::None;
    return SectorKind::None;
}

struct PreparedState {
    Statevector psi;
    std::optional<Circuit> circuit; // present for circuit-based preparations
    double energy = 0;
    json details;
};

inline Statevector krylov_reference_state(std::size_t L, const std::string &name) {
    Statevector ref(L);
    if (name == "minus")
        for (unsigned q = 0; q < L; ++q) apply_x(ref, q);
    else if (name != "plus")
        throw ConfigError("krylov reference must be 'plus' or 'minus'");
    apply_h_wall(ref);
    return ref;
}

inline KrylovConfig pipeline_krylov_config(const PipelineConfig &c) {
    KrylovConfig k;
    k.order = c.krylov_order;
    k.dt = c.krylov_dt;
    k.eps_s = c.krylov_eps;
    k.reference = krylov_reference_state(c.L, c.krylov_reference);
    return k;
}

inline PreparedState prepare_pipeline_state(const PipelineConfig &c, const SpinHamiltonian &H) {
    PreparedState out;
    if (c.preparation == "ed") {
        GroundStateResult gs = ground_state(H);
        out.psi = std::move(gs.state);
        out.energy = gs.energy;
        out.details = {{"method", "ed"}, {"gap", gs.gap}};
        return out;
    }
    if (c.preparation == "vqe") {
        VqeConfig vc;
        vc.depth = c.vqe_depth;
        vc.restarts = c.vqe_restarts;
        vc.seed = c.seed;
        VqeResult vr = solve_vqe(H, vc);
        CheckerboardEngine eng(H, vc.depth);
        out.psi = eng.state(vr.theta);
        out.circuit = build_checkerboard(c.L, vc.depth, vr.theta, H.boundary);
        out.energy = vr.energy;
        out.details = {{"method", "vqe"},
                       {"depth", c.vqe_depth},
                       {"restarts", c.vqe_restarts},
                       {"evaluations", vr.evaluations},
                       {"best_restart", vr.best_restart},
                       {"theta", vr.theta}};
        return out;
    }
    if (c.preparation == "direct") {
        if (c.model != "xy")
            throw ConfigError("direct preparation applies to the xy model only");
        Circuit circ = build_direct_prep(c.L, c.xy_gamma, c.xy_lambda);
        out.psi = run(circ);
        out.circuit = std::move(circ);
        out.energy = expectation(H, out.psi);
        const DirectPrepCost cost = direct_prep_cost(c.L);
        out.details = {{"method", "direct"},
                       {"two_qubit_blocks", cost.two_qubit_blocks},
                       {"cnot_equivalent", cost.cnot_equivalent}};
        return out;
    }
    if (c.preparation == "krylov") {
        const KrylovConfig kc = pipeline_krylov_config(c);
        KrylovResult kr = krylov_ground(H, kc);
        // Rebuild |psi> = sum_j c_j U(dt)^j |ref> with a second propagation pass.
        MatvecEngine hmv(H);
        Statevector phi = kc.reference;
        Statevector acc(c.L);
        std::fill(acc.amps.begin(), acc.amps.end(), cplx(0));
        for (std::size_t j = 0; j < kc.order; ++j) {
            if (j > 0) expm_apply_inplace(hmv, phi, kr.dt, kc.expm_tol);
            const cplx w = kr.c_min[static_cast<Eigen::Index>(j)];
            for (std::size_t i = 0; i < acc.dim(); ++i) acc.amps[i] += w * phi.amps[i];
        }
        acc.normalize();
        detail::fix_phase(acc);
        out.psi = std::move(acc);
        out.energy = expectation(H, out.psi);
        out.details = {{"method", "krylov"},
                       {"order", kc.order},
                       {"dt", kr.dt},
                       {"kept", kr.kept},
                       {"gevp_energy", kr.energies.front()}};
        return out;
    }
    throw ConfigError("unknown preparation '" + c.preparation + "'");
}

struct PipelineResult {
    std::string directory;
    json summary;
    std::vector<std::string> files;
};

namespace detail {

inline void emit(PipelineResult &res, const std::string &name, const std::string &content) {
    const auto path = std::filesystem::path(res.directory) / name;
    write_text_file(path.string(), content);
    res.files.push_back(name);
}

inline void emit_json(PipelineResult &res, const std::string &name, const json &j) {
    emit(res, name, j.dump(2) + "\n");
}

inline std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace detail

// Full experiment: prepare, measure (optionally through the noise model with
// mitigation), post-process, fit each (basis, moment), and write artifacts.
// Every artifact carries the config hash and seed via summary.json.
inline PipelineResult run_pipeline(const PipelineConfig &cfg) {
    PipelineResult res;
    res.directory = cfg.output_dir;
    std::filesystem::create_directories(res.directory);

    const std::string hash = pipeline_config_hash(cfg);
    const SpinHamiltonian H = with_stage("configure", [&] { return build_pipeline_model(cfg); });
    detail::emit_json(res, "config.json", pipeline_config_json(cfg));

    PreparedState prep =
        with_stage("prepare", [&] { return prepare_pipeline_state(cfg, H); });
    if (prep.circuit) detail::emit(res, "circuit.txt", serialize(*prep.circuit));
    if (cfg.preparation == "vqe")
        detail::emit(res, "theta.csv",
                     theta_csv(prep.details["theta"].get<std::vector<double>>(), cfg.L));

    NoiseModel noise;
    if (!cfg.noise_path.empty()) {
        noise = with_stage("configure", [&] { return load_noise_model(cfg.noise_path, cfg.L); });
        if (!prep.circuit)
            throw ConfigError("noise model requires a circuit preparation (vqe or direct)");
    }
    const bool noisy = !noise.empty();

    const ChordGeometry geom =
        (cfg.boundary == Boundary::Periodic) ? ChordGeometry::Periodic : ChordGeometry::Open;
    const std::vector<std::size_t> ls = default_even_l(cfg.L);

    json fits = json::array();
    json aggregates = json::array();
    std::vector<EntropyRow> entropy_rows;
    double gamma_total_max = 1.0;

    for (std::size_t bi = 0; bi < cfg.bases.size(); ++bi) {
        const MeasBasis basis = cfg.bases[bi];
        const std::string slug = detail::basis_slug(basis);
        const SectorKind sector = pipeline_sector(cfg, basis);

        ProbabilityTable table;
        std::optional<MitigatedRun> mrun;
        if (noisy) {
            PecConfig pc;
            pc.samples = cfg.samples;
            pc.shots = cfg.shots;
            pc.seed = cfg.seed + 7919 * (bi + 1);
            mrun = with_stage("mitigate", [&] {
                return collect_mitigated(*prep.circuit, noise, basis, pc);
            });
            gamma_total_max = std::max(gamma_total_max, mrun->gamma);
            table = with_stage("postprocess", [&] {
                ProbabilityTable raw = mrun->raw_table();
                ProbabilityTable proj = project_sector(raw, sector);
                const double cut = compute_cutoff({proj});
                return cutoff_renormalize(proj, cut);
            });
        } else {
            table = with_stage("measure", [&] { return measure_basis(prep.psi, basis); });
        }
        detail::emit(res, "table_" + slug + ".csv", probability_csv(table));
        if (cfg.shots > 0 && !noisy) {
            const CountTable counts = with_stage("measure", [&] {
                return sample_counts(table, cfg.shots, cfg.seed + 104729 * (bi + 1));
            });
            detail::emit(res, "counts_" + slug + ".csv", counts_csv(counts));
        }

        std::optional<BootstrapEnsemble> ens;
        if (noisy) {
            ens = with_stage("postprocess", [&] {
                return bootstrap(*mrun, sector, cfg.bootstrap_b, cfg.bootstrap_m,
                                 cfg.seed + 15485863 * (bi + 1));
            });
        }

        for (double n : cfg.moments) {
            const double n_t = pipeline_nt(cfg, basis);
            FitPoints pts;
            for (std::size_t l : ls) {
                const double v = with_stage(
                    "entropy", [&] { return renyi_difference(table, l, n); });
                pts.emplace_back(l, v);
                entropy_rows.push_back({to_string(basis), n, l, v});
            }
            const FitResult fit = with_stage("fit", [&] {
                return fit_rdm(pts, cfg.L, n, geom, n_t);
            });
            const json fj = fit_json(fit, cfg.model, to_string(basis));
            detail::emit_json(res, "fit_" + slug + "_n" + detail::moment_slug(n) + ".json", fj);
            fits.push_back(fj);

            if (ens) {
                std::vector<FitResult> rep_fits;
                std::vector<double> cs, errs;
                for (const ProbabilityTable &d : ens->datasets) {
                    FitPoints rp;
                    for (std::size_t l : ls)
                        rp.emplace_back(l, renyi_difference(d, l, n));
                    const FitResult rf = with_stage("fit", [&] {
                        return fit_rdm(rp, cfg.L, n, geom, n_t);
                    });
                    rep_fits.push_back(rf);
                    cs.push_back(rf.c);
                    errs.push_back(rf.sigma);
                }
                const AggregateResult agg =
                    with_stage("postprocess", [&] { return aggregate(cs, errs); });
                json ej = ensemble_json(*ens, rep_fits, agg);
                ej["basis"] = to_string(basis);
                ej["n"] = n;
                detail::emit_json(res, "ensemble_" + slug + "_n" + detail::moment_slug(n) + ".json",
                                  ej);
                json aj = aggregate_json(agg);
                aj["basis"] = to_string(basis);
                aj["n"] = n;
                aggregates.push_back(std::move(aj));
            }
        }
    }
    detail::emit(res, "entropy.csv", entropy_csv(entropy_rows));

    json summary;
    summary["config_hash"] = hash;
    summary["seed"] = cfg.seed;
    summary["model"] = cfg.model;
    summary["L"] = cfg.L;
    summary["boundary"] = (cfg.boundary == Boundary::Periodic) ? "periodic" : "open";
    summary["preparation"] = prep.details;
    summary["energy"] = prep.energy;
    summary["fits"] = std::move(fits);
    if (noisy) {
        summary["gamma_total"] = gamma_total_max;
        summary["aggregates"] = std::move(aggregates);
    }
    res.summary = summary;
    detail::emit_json(res, "summary.json", summary);

    json manifest;
    manifest["config_hash"] = hash;
    manifest["seed"] = cfg.seed;
    manifest["created"] = detail::utc_now();
    std::vector<std::string> sorted_files = res.files;
    std::sort(sorted_files.begin(), sorted_files.end());
    manifest["files"] = sorted_files;
    detail::emit_json(res, "manifest.json", manifest);
    return res;
}

// --- parameter sweeps --------------------------------------------------------

enum class SweepObservable { OrderParameterDerivative, ShannonRenyiN2 };

struct SweepConfig {
    std::string model = "tfi"; // tfi sweeps h, xxz sweeps delta, tricritical sweeps lambda3
    std::size_t L = 8;
    Boundary boundary = Boundary::Periodic;
    double J = 1.0, h = 1.0;
    double lambda3 = 0.428;
    MeasBasis basis = MeasBasis::Z;
    SweepObservable observable = SweepObservable::ShannonRenyiN2;
    std::vector<double> grid;
};

struct SweepPoint {
    double param = 0;
    double value = 0;
};

namespace detail {

// <|sum_i s_i|>/L over the Z-basis distribution.
inline double absolute_magnetization(const ProbabilityTable &t) {
    if (t.basis != MeasBasis::Z) throw ConfigError("order parameter is read in the Z basis");
    double m = 0;
    const double Ld = static_cast<double>(t.size);
    for (std::size_t i = 0; i < t.dim(); ++i) {
        const double sz = Ld - 2.0 * static_cast<double>(popcount(i));
        m += t.p[i] * std::abs(sz) / Ld;
    }
    return m;
}

} // namespace detail

// ED curve of the requested observable over the parameter grid; the
// order-parameter mode returns centered finite differences on interior
// grid points.
inline std::vector<SweepPoint> sweep(const SweepConfig &cfg) {
    if (cfg.model != "tfi" && cfg.model != "xxz" && cfg.model != "tricritical")
        throw ConfigError("sweep supports tfi, xxz, tricritical");
    const bool derivative = cfg.observable == SweepObservable::OrderParameterDerivative;
    if (cfg.grid.size() < (derivative ? 3u : 1u))
        throw ConfigError(derivative ? "derivative sweep needs at least 3 grid points"
                                     : "sweep grid is empty");
    for (std::size_t i = 1; i < cfg.grid.size(); ++i)
        if (cfg.grid[i] <= cfg.grid[i - 1])
            throw ConfigError("sweep grid must be strictly increasing");

    std::vector<double> raw(cfg.grid.size());
    for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
        const double g = cfg.grid[i];
        SpinHamiltonian H = (cfg.model == "tfi")
                                ? build_tfi(cfg.L, cfg.J, g, cfg.boundary)
                            : (cfg.model == "xxz")
                                ? build_xxz(cfg.L, g, cfg.boundary)
                                : build_tricritical(cfg.L, cfg.J, cfg.h, g, cfg.boundary);
        const GroundStateResult gs = ground_state(H);
        if (derivative) {
            raw[i] = detail::absolute_magnetization(measure_basis(gs.state, MeasBasis::Z));
        } else {
            raw[i] = shannon_renyi(measure_basis(gs.state, cfg.basis), 2.0);
        }
    }
    std::vector<SweepPoint> out;
    if (derivative) {
        for (std::size_t i = 1; i + 1 < cfg.grid.size(); ++i)
            out.push_back({cfg.grid[i],
                           (raw[i + 1] - raw[i - 1]) / (cfg.grid[i + 1] - cfg.grid[i - 1])});
    } else {
        for (std::size_t i = 0; i < cfg.grid.size(); ++i) out.push_back({cfg.grid[i], raw[i]});
    }
    return out;
}

inline std::string sweep_csv(const std::vector<SweepPoint> &points) {
    std::ostringstream os;
    os << "param,value\n" << std::setprecision(17);
    for (const auto &p : points) os << p.param << "," << p.value << "\n";
    return os.str();
}

} // namespace virasoro
