// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>
#include <vector>

#include "virasoro/core/errors.hpp"

namespace virasoro {

enum class ChordGeometry { Open, Periodic, Infinite };

inline std::string to_string(ChordGeometry g) {
    switch (g) {
    case ChordGeometry::Open: return "open";
    case ChordGeometry::Periodic: return "periodic";
    case ChordGeometry::Infinite: return "infinite";
    }
    return "?";
}

// Chord length: (L/pi) sin(pi l/L) periodic, (2L/pi) sin(pi l/L) open,
// plain l for the infinite line.
inline double chord(std::size_t L, std::size_t l, ChordGeometry g) {
    if (l == 0 || l >= L) throw ConfigError("chord requires 0 < l < L");
    const double Ld = static_cast<double>(L), ld = static_cast<double>(l);
    switch (g) {
    case ChordGeometry::Periodic: return Ld / M_PI * std::sin(M_PI * ld / Ld);
    case ChordGeometry::Open: return 2.0 * Ld / M_PI * std::sin(M_PI * ld / Ld);
    case ChordGeometry::Infinite: return ld;
    }
    throw ConfigError("bad geometry");
}

// Piecewise coefficient c_n: equals c below the transition moment n_t and
// c*n/(n-1) above it.
inline double cn_theory(double c, double n, double n_t) {
    if (std::abs(n - n_t) < 1e-9)
        throw ConfigError("Renyi moment sits on the n_t discontinuity");
    return (n < n_t) ? c : c * n / (n - 1.0);
}

inline double cn_to_c(double c_n, double n, double n_t) {
    if (std::abs(n - n_t) < 1e-9)
        throw ConfigError("Renyi moment sits on the n_t discontinuity");
    return (n < n_t) ? c_n : c_n * (n - 1.0) / n;
}

// Transition moments of the XXZ chain in each conformal basis.
inline double nt_xxz_z(double delta) {
    if (delta <= -1 || delta >= 1) throw ConfigError("XXZ n_t requires -1 < Delta < 1");
    return 2.0 * M_PI / std::acos(delta);
}

inline double nt_xxz_x(double delta) {
    if (delta <= -1 || delta >= 1) throw ConfigError("XXZ n_t requires -1 < Delta < 1");
    return 2.0 / M_PI * std::acos(delta);
}

enum class ScalingKind { RdmDifference, EntanglementEntropy, FormationProbability, PowerLaw };

inline std::string to_string(ScalingKind k) {
    switch (k) {
    case ScalingKind::RdmDifference: return "rdm";
    case ScalingKind::EntanglementEntropy: return "entanglement";
    case ScalingKind::FormationProbability: return "formation";
    case ScalingKind::PowerLaw: return "power_law";
    }
    return "?";
}

// `c` is the headline parameter: the central charge, or the exponent eta for
// power-law fits. `c_n` is the raw scaling coefficient before any n_t
// conversion.
struct FitResult {
    ScalingKind kind = ScalingKind::RdmDifference;
    ChordGeometry geometry = ChordGeometry::Periodic;
    double n = 0;
    double c = 0;
    double c_n = 0;
    double sigma = 0;
    double intercept = 0;
    double linear_coeff = 0; // formation-probability decay rate a
    Eigen::MatrixXd cov;
    double residual_rms = 0;
    std::vector<std::size_t> points;
};

namespace detail {

struct LsqOut {
    Eigen::VectorXd coef;
    Eigen::MatrixXd cov;
    double residual_rms = 0;
};

// Ordinary least squares with residual-based parameter errors, or weighted
// least squares with caller-supplied per-point variances (no residual
// rescaling in that mode).
inline LsqOut least_squares(const Eigen::MatrixXd &X, const Eigen::VectorXd &y,
                            const std::vector<double> &variances = {}) {
    const Eigen::Index m = X.rows(), k = X.cols();
    if (m < k) throw ConfigError("fewer points than fit parameters");
    Eigen::MatrixXd Xw = X;
    Eigen::VectorXd yw = y;
    const bool weighted = !variances.empty();
    if (weighted) {
        if (static_cast<Eigen::Index>(variances.size()) != m)
            throw ConfigError("variance list length does not match points");
        for (Eigen::Index i = 0; i < m; ++i) {
            if (variances[i] <= 0) throw ConfigError("non-positive point variance");
            const double w = 1.0 / std::sqrt(variances[i]);
            Xw.row(i) *= w;
            yw[i] *= w;
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Xw);
    if (qr.rank() < k) throw NumericalError("singular design matrix");
    LsqOut out;
    out.coef = qr.solve(yw);
    const Eigen::VectorXd resid = y - X * out.coef;
    out.residual_rms = std::sqrt(resid.squaredNorm() / static_cast<double>(m));
    Eigen::MatrixXd xtx_inv = (Xw.transpose() * Xw).inverse();
    if (weighted) {
        out.cov = xtx_inv;
    } else {
        const double dof = static_cast<double>(m - k);
        const double s2 = dof > 0 ? resid.squaredNorm() / dof : 0.0;
        out.cov = s2 * xtx_inv;
    }
    return out;
}

inline Eigen::MatrixXd line_design(const std::vector<double> &x) {
    Eigen::MatrixXd X(x.size(), 2);
    for (std::size_t i = 0; i < x.size(); ++i) {
        X(i, 0) = x[i];
        X(i, 1) = 1.0;
    }
    return X;
}

} // namespace detail

using FitPoints = std::vector<std::pair<std::size_t, double>>;

// The paper's default point set: even l from 2 to L-2.
inline std::vector<std::size_t> default_even_l(std::size_t L) {
    std::vector<std::size_t> ls;
    for (std::size_t l = 2; l + 1 < L; l += 2) ls.push_back(l);
    return ls;
}

// I_n(l) = (c_n/4) ln chord + gamma_n periodic, c_n/8 open. Returns both the
// raw c_n and the n_t-converted c.
inline FitResult fit_rdm(const FitPoints &values, std::size_t L, double n, ChordGeometry geom,
                         double n_t, const std::vector<double> &variances = {}) {
    if (values.size() < 3) throw ConfigError("rdm fit needs at least 3 points");
    std::vector<double> x;
    Eigen::VectorXd y(values.size());
    FitResult out;
    out.kind = ScalingKind::RdmDifference;
    out.geometry = geom;
    out.n = n;
    for (std::size_t i = 0; i < values.size(); ++i) {
        x.push_back(std::log(chord(L, values[i].first, geom)));
        y[i] = values[i].second;
        out.points.push_back(values[i].first);
    }
    const auto lsq = detail::least_squares(detail::line_design(x), y, variances);
    const double pref = (geom == ChordGeometry::Open) ? 8.0 : 4.0;
    out.c_n = pref * lsq.coef[0];
    out.c = cn_to_c(out.c_n, n, n_t);
    const double conv = (n < n_t) ? 1.0 : (n - 1.0) / n;
    out.sigma = pref * conv * std::sqrt(lsq.cov(0, 0));
    out.intercept = lsq.coef[1];
    out.cov = lsq.cov;
    out.residual_rms = lsq.residual_rms;
    return out;
}

// S_n(l) = (c/6)(n+1)/n ln chord periodic, c/12 (n+1)/n open.
inline FitResult fit_entanglement(const FitPoints &values, std::size_t L, double n,
                                  ChordGeometry geom, const std::vector<double> &variances = {}) {
    if (values.size() < 3) throw ConfigError("entanglement fit needs at least 3 points");
    std::vector<double> x;
    Eigen::VectorXd y(values.size());
    FitResult out;
    out.kind = ScalingKind::EntanglementEntropy;
    out.geometry = geom;
    out.n = n;
    for (std::size_t i = 0; i < values.size(); ++i) {
        x.push_back(std::log(chord(L, values[i].first, geom)));
        y[i] = values[i].second;
        out.points.push_back(values[i].first);
    }
    const auto lsq = detail::least_squares(detail::line_design(x), y, variances);
    const double pref = ((geom == ChordGeometry::Open) ? 12.0 : 6.0) * n / (n + 1.0);
    out.c_n = out.c = pref * lsq.coef[0];
    out.sigma = pref * std::sqrt(lsq.cov(0, 0));
    out.intercept = lsq.coef[1];
    out.cov = lsq.cov;
    out.residual_rms = lsq.residual_rms;
    return out;
}

// ln p(l) = -a l - (c/8) ln chord + a0 on the periodic chain.
inline FitResult fit_formation_probability(const FitPoints &values, std::size_t L,
                                           const std::vector<double> &variances = {}) {
    if (values.size() < 4) throw ConfigError("formation fit needs at least 4 points");
    Eigen::MatrixXd X(values.size(), 3);
    Eigen::VectorXd y(values.size());
    FitResult out;
    out.kind = ScalingKind::FormationProbability;
    out.geometry = ChordGeometry::Periodic;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto l = values[i].first;
        X(i, 0) = -static_cast<double>(l);
        X(i, 1) = -std::log(chord(L, l, ChordGeometry::Periodic));
        X(i, 2) = 1.0;
        y[i] = values[i].second;
        out.points.push_back(l);
    }
    const auto lsq = detail::least_squares(X, y, variances);
    out.linear_coeff = lsq.coef[0];
    out.c_n = out.c = 8.0 * lsq.coef[1];
    out.sigma = 8.0 * std::sqrt(lsq.cov(1, 1));
    out.intercept = lsq.coef[2];
    out.cov = lsq.cov;
    out.residual_rms = lsq.residual_rms;
    return out;
}

// ln|corr| = -eta ln chord + const; non-positive correlator values are
// dropped from the fit (their r never enters `points`).
inline FitResult fit_power_law(const std::vector<std::pair<std::size_t, double>> &values,
                               std::size_t L, ChordGeometry geom) {
    std::vector<double> x;
    std::vector<double> ys;
    FitResult out;
    out.kind = ScalingKind::PowerLaw;
    out.geometry = geom;
    for (const auto &[r, corr] : values) {
        if (corr <= 0) continue;
        x.push_back(std::log(chord(L, r, geom)));
        ys.push_back(std::log(corr));
        out.points.push_back(r);
    }
    if (x.size() < 3) throw ConfigError("power-law fit needs at least 3 positive points");
    Eigen::VectorXd y(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) y[i] = ys[i];
    const auto lsq = detail::least_squares(detail::line_design(x), y);
    out.c_n = out.c = -lsq.coef[0]; // eta
    out.sigma = std::sqrt(lsq.cov(0, 0));
    out.intercept = lsq.coef[1];
    out.cov = lsq.cov;
    out.residual_rms = lsq.residual_rms;
    return out;
}

// Inverse-variance-weighted combination of independent estimates.
inline std::pair<double, double>
combine_inverse_variance(const std::vector<std::pair<double, double>> &estimates) {
    if (estimates.empty()) throw ConfigError("nothing to combine");
    double wsum = 0, csum = 0;
    for (const auto &[c, sigma] : estimates) {
        if (sigma <= 0) throw ConfigError("non-positive estimate error");
        const double w = 1.0 / (sigma * sigma);
        wsum += w;
        csum += w * c;
    }
    return {csum / wsum, std::sqrt(1.0 / wsum)};
}

} // namespace virasoro
