// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <map>

#include "virasoro/virasoro.hpp"

namespace {

using namespace virasoro;

PipelineConfig load_config(const std::string &path, const std::string &out_override) {
    PipelineConfig c = parse_pipeline_config(load_json_file(path));
    if (!out_override.empty()) c.output_dir = out_override;
    return c;
}

void ensure_dir(const std::string &dir) { std::filesystem::create_directories(dir); }

void write_artifact(const std::string &dir, const std::string &name, const std::string &content) {
    write_text_file((std::filesystem::path(dir) / name).string(), content);
}

int cmd_prepare(const PipelineConfig &cfg) {
    const SpinHamiltonian H = build_pipeline_model(cfg);
    const PreparedState prep = with_stage("prepare", [&] { return prepare_pipeline_state(cfg, H); });
    ensure_dir(cfg.output_dir);
    json j;
    j["config_hash"] = pipeline_config_hash(cfg);
    j["seed"] = cfg.seed;
    j["energy"] = prep.energy;
    j["preparation"] = prep.details;
    write_artifact(cfg.output_dir, "prepare.json", j.dump(2) + "\n");
    if (prep.circuit) write_artifact(cfg.output_dir, "circuit.txt", serialize(*prep.circuit));
    if (cfg.preparation == "vqe")
        write_artifact(cfg.output_dir, "theta.csv",
                       theta_csv(prep.details["theta"].get<std::vector<double>>(), cfg.L));
    std::cout << "energy " << std::setprecision(12) << prep.energy << "\n";
    return kOk;
}

int cmd_measure(const PipelineConfig &cfg) {
    const SpinHamiltonian H = build_pipeline_model(cfg);
    const PreparedState prep = with_stage("prepare", [&] { return prepare_pipeline_state(cfg, H); });
    ensure_dir(cfg.output_dir);
    for (std::size_t bi = 0; bi < cfg.bases.size(); ++bi) {
        const MeasBasis basis = cfg.bases[bi];
        const std::string slug = basis == MeasBasis::Z ? "z" : "x";
        const ProbabilityTable table =
            with_stage("measure", [&] { return measure_basis(prep.psi, basis); });
        write_artifact(cfg.output_dir, "table_" + slug + ".csv", probability_csv(table));
        if (cfg.shots > 0) {
            const CountTable counts = sample_counts(table, cfg.shots, cfg.seed + 104729 * (bi + 1));
            write_artifact(cfg.output_dir, "counts_" + slug + ".csv", counts_csv(counts));
        }
        std::cout << "measured " << to_string(basis) << " basis\n";
    }
    return kOk;
}

int cmd_mitigate(const PipelineConfig &cfg) {
    if (cfg.noise_path.empty()) throw ConfigError("mitigate requires a noise model path");
    const SpinHamiltonian H = build_pipeline_model(cfg);
    const PreparedState prep = with_stage("prepare", [&] { return prepare_pipeline_state(cfg, H); });
    if (!prep.circuit) throw ConfigError("noise model requires a circuit preparation (vqe or direct)");
    const NoiseModel noise = load_noise_model(cfg.noise_path, cfg.L);
    ensure_dir(cfg.output_dir);
    json report;
    report["config_hash"] = pipeline_config_hash(cfg);
    report["samples"] = cfg.samples;
    report["shots"] = cfg.shots;
    for (std::size_t bi = 0; bi < cfg.bases.size(); ++bi) {
        const MeasBasis basis = cfg.bases[bi];
        const std::string slug = basis == MeasBasis::Z ? "z" : "x";
        PecConfig pc;
        pc.samples = cfg.samples;
        pc.shots = cfg.shots;
        pc.seed = cfg.seed + 7919 * (bi + 1);
        const MitigatedRun run = with_stage(
            "mitigate", [&] { return collect_mitigated(*prep.circuit, noise, basis, pc); });
        write_artifact(cfg.output_dir, "mitigated_" + slug + ".csv",
                       probability_csv(run.raw_table()));
        report["gamma_total"] = run.gamma;
        report["gamma_bar_per_qubit"] = gamma_bar_per_qubit(run.gamma, cfg.L);
        std::cout << "mitigated " << to_string(basis) << " basis, gamma_total "
                  << std::setprecision(6) << run.gamma << "\n";
    }
    write_artifact(cfg.output_dir, "mitigate.json", report.dump(2) + "\n");
    return kOk;
}

int cmd_fit(const PipelineConfig &cfg, const std::string &entropy_path) {
    const std::vector<EntropyRow> rows = parse_entropy_csv(read_text_file(entropy_path));
    const ChordGeometry geom =
        (cfg.boundary == Boundary::Periodic) ? ChordGeometry::Periodic : ChordGeometry::Open;
    std::map<std::pair<std::string, double>, FitPoints> groups;
    for (const auto &r : rows) groups[{r.basis, r.n}].emplace_back(r.l, r.value);
    ensure_dir(cfg.output_dir);
    json all = json::array();
    for (const auto &[key, pts] : groups) {
        const MeasBasis basis = key.first == "Z" || key.first == "z" ? MeasBasis::Z : MeasBasis::X;
        const double n_t = pipeline_nt(cfg, basis);
        const FitResult fit = with_stage("fit", [&, &pts_ref = pts] {
            return fit_rdm(pts_ref, cfg.L, key.second, geom, n_t);
        });
        const json fj = fit_json(fit, cfg.model, key.first);
        const std::string slug = basis == MeasBasis::Z ? "z" : "x";
        std::ostringstream name;
        name << "fit_" << slug << "_n" << key.second << ".json";
        write_artifact(cfg.output_dir, name.str(), fj.dump(2) + "\n");
        all.push_back(fj);
        std::cout << "c(" << key.first << ", n=" << key.second << ") = " << std::setprecision(6)
                  << fit.c << " +- " << fit.sigma << "\n";
    }
    write_artifact(cfg.output_dir, "fits.json", all.dump(2) + "\n");
    return kOk;
}

int cmd_run(const PipelineConfig &cfg) {
    const PipelineResult res = run_pipeline(cfg);
    for (const auto &f : res.summary["fits"])
        std::cout << "c(" << f["basis"].get<std::string>() << ", n=" << f["n"].get<double>()
                  << ") = " << std::setprecision(6) << f["c"].get<double>() << " +- "
                  << f["sigma_fit"].get<double>() << "\n";
    std::cout << "artifacts in " << res.directory << "\n";
    return kOk;
}

SweepConfig parse_sweep_config(const json &j, std::string &out_dir) {
    SweepConfig c;
    if (j.contains("model")) c.model = j["model"].get<std::string>();
    if (j.contains("L")) c.L = j["L"].get<std::size_t>();
    if (j.contains("boundary")) {
        const std::string b = j["boundary"].get<std::string>();
        c.boundary = (b == "open" || b == "obc") ? Boundary::Open : Boundary::Periodic;
    }
    if (j.contains("J")) c.J = j["J"].get<double>();
    if (j.contains("h")) c.h = j["h"].get<double>();
    if (j.contains("lambda3")) c.lambda3 = j["lambda3"].get<double>();
    if (j.contains("basis"))
        c.basis = j["basis"].get<std::string>() == "X" ? MeasBasis::X : MeasBasis::Z;
    if (j.contains("observable")) {
        const std::string o = j["observable"].get<std::string>();
        if (o == "order_parameter_derivative")
            c.observable = SweepObservable::OrderParameterDerivative;
        else if (o == "shannon_renyi_n2")
            c.observable = SweepObservable::ShannonRenyiN2;
        else
            throw ConfigError("unknown sweep observable '" + o + "'");
    }
    if (j.contains("grid")) {
        c.grid = j["grid"].get<std::vector<double>>();
    } else if (j.contains("grid_from") && j.contains("grid_to") && j.contains("grid_points")) {
        const double a = j["grid_from"].get<double>(), b = j["grid_to"].get<double>();
        const std::size_t m = j["grid_points"].get<std::size_t>();
        if (m < 2) throw ConfigError("grid_points must be at least 2");
        for (std::size_t i = 0; i < m; ++i)
            c.grid.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(m - 1));
    } else {
        throw ConfigError("sweep config needs grid or grid_from/grid_to/grid_points");
    }
    if (j.contains("output_dir")) out_dir = j["output_dir"].get<std::string>();
    return c;
}

int cmd_sweep(const std::string &config_path, const std::string &out_override) {
    std::string out_dir = "out";
    const SweepConfig cfg = parse_sweep_config(load_json_file(config_path), out_dir);
    if (!out_override.empty()) out_dir = out_override;
    const std::vector<SweepPoint> points = with_stage("sweep", [&] { return sweep(cfg); });
    ensure_dir(out_dir);
    write_artifact(out_dir, "sweep.csv", sweep_csv(points));
    std::cout << points.size() << " sweep points written\n";
    return kOk;
}

int cmd_krylov(const PipelineConfig &cfg) {
    const SpinHamiltonian H = build_pipeline_model(cfg);
    const KrylovConfig kc = pipeline_krylov_config(cfg);
    const KrylovResult kr = with_stage("krylov", [&] { return krylov_ground(H, kc); });
    ensure_dir(cfg.output_dir);
    write_artifact(cfg.output_dir, "energy_by_order.csv", energy_by_order_csv(kr.energy_by_order));
    json j;
    j["config_hash"] = pipeline_config_hash(cfg);
    j["dt"] = kr.dt;
    j["kept"] = kr.kept;
    j["energies"] = kr.energies;
    j["energy_by_order"] = kr.energy_by_order;
    write_artifact(cfg.output_dir, "krylov.json", j.dump(2) + "\n");
    std::cout << "ground energy " << std::setprecision(12) << kr.energy_by_order.back() << " at order "
              << kr.energy_by_order.size() << "\n";
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"ground-state entropy scaling and central-charge extraction toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir, entropy_path;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--out", out_dir, "output directory override");
    };
    CLI::App *c_prepare = app.add_subcommand("prepare", "prepare the ground state");
    CLI::App *c_measure = app.add_subcommand("measure", "write basis tables and sampled counts");
    CLI::App *c_mitigate = app.add_subcommand("mitigate", "noisy run with probabilistic error cancellation");
    CLI::App *c_fit = app.add_subcommand("fit", "fit entropy CSVs to the scaling law");
    CLI::App *c_run = app.add_subcommand("run", "full pipeline: prepare, measure, mitigate, fit");
    CLI::App *c_sweep = app.add_subcommand("sweep", "observable curve over a coupling grid");
    CLI::App *c_krylov = app.add_subcommand("krylov", "ground energy from the real-time Krylov basis");
    for (CLI::App *sub : {c_prepare, c_measure, c_mitigate, c_fit, c_run, c_sweep, c_krylov})
        add_common(sub);
    c_fit->add_option("--entropy", entropy_path, "entropy CSV (basis,n,l,value)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return virasoro::kConfigError;
    }

    try {
        if (c_sweep->parsed()) return cmd_sweep(config_path, out_dir);
        const PipelineConfig cfg = load_config(config_path, out_dir);
        if (c_prepare->parsed()) return cmd_prepare(cfg);
        if (c_measure->parsed()) return cmd_measure(cfg);
        if (c_mitigate->parsed()) return cmd_mitigate(cfg);
        if (c_fit->parsed()) return cmd_fit(cfg, entropy_path);
        if (c_run->parsed()) return cmd_run(cfg);
        if (c_krylov->parsed()) return cmd_krylov(cfg);
    } catch (const virasoro::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return virasoro::kConfigError;
    } catch (const virasoro::NumericalError &e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return virasoro::kNumericalError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return virasoro::kNumericalError;
    }
    return virasoro::kOk;
}
