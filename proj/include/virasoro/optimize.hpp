// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>

#include "virasoro/core/errors.hpp"

namespace virasoro {

struct OptimizeOptions {
    std::size_t max_evaluations = 20000;
    std::size_t history = 10;        // L-BFGS memory
    double grad_tol = 1e-12;         // infinity-norm stop
    double improvement_tol = 1e-10;  // best-cost improvement window
    std::size_t improvement_window = 50;
};

struct OptimizeResult {
    Eigen::VectorXd x;
    double f = std::numeric_limits<double>::infinity();
    std::size_t evaluations = 0;
    bool converged = false;
};

// f(x) with gradient output; must fill grad to x.size().
using ObjectiveGrad = std::function<double(const Eigen::VectorXd &, Eigen::VectorXd &)>;
using Objective = std::function<double(const Eigen::VectorXd &)>;

namespace detail {

// Tracks the best-improvement stopping rule shared by both optimizers.
class ConvergenceWindow {
  public:
    ConvergenceWindow(double tol, std::size_t window) : tol_(tol), window_(window) {}

    void record(std::size_t eval_count, double f) {
        if (f < best_ - tol_) {
            best_ = f;
            last_improvement_ = eval_count;
        } else if (f < best_) {
            best_ = f;
        }
    }

    bool stalled(std::size_t eval_count) const {
        return eval_count - last_improvement_ >= window_;
    }

  private:
    double tol_;
    std::size_t window_;
    double best_ = std::numeric_limits<double>::infinity();
    std::size_t last_improvement_ = 0;
};

} // namespace detail

// Limited-memory BFGS with two-loop recursion and backtracking Armijo line
// search; exact gradients make this reliable without a Wolfe curvature test.
inline OptimizeResult lbfgs_minimize(const ObjectiveGrad &fg, const Eigen::VectorXd &x0,
                                     const OptimizeOptions &opts = {}) {
    const Eigen::Index n = x0.size();
    if (n == 0) throw ConfigError("empty parameter vector");
    OptimizeResult res;
    res.x = x0;
    std::size_t evals = 0;
    detail::ConvergenceWindow window(opts.improvement_tol, opts.improvement_window);

    Eigen::VectorXd x = x0, g(n), x_new(n), g_new(n);
    auto eval = [&](const Eigen::VectorXd &p, Eigen::VectorXd &grad) {
        ++evals;
        const double f = fg(p, grad);
        window.record(evals, f);
        if (f < res.f) {
            res.f = f;
            res.x = p;
        }
        return f;
    };
    double f = eval(x, g);

    std::deque<Eigen::VectorXd> s_hist, y_hist;
    std::deque<double> rho_hist;

    while (evals < opts.max_evaluations) {
        if (g.lpNorm<Eigen::Infinity>() < opts.grad_tol) {
            res.converged = true;
            break;
        }
        if (window.stalled(evals)) {
            res.converged = true;
            break;
        }
        // Two-loop recursion for d = -H g.
        Eigen::VectorXd q = g;
        std::vector<double> alpha(s_hist.size());
        for (std::size_t i = s_hist.size(); i-- > 0;) {
            alpha[i] = rho_hist[i] * s_hist[i].dot(q);
            q -= alpha[i] * y_hist[i];
        }
        if (!s_hist.empty()) {
            const auto &s = s_hist.back();
            const auto &y = y_hist.back();
            q *= s.dot(y) / y.dot(y);
        }
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const double beta = rho_hist[i] * y_hist[i].dot(q);
            q += (alpha[i] - beta) * s_hist[i];
        }
        Eigen::VectorXd d = -q;
        double dg = d.dot(g);
        if (dg >= 0) { // fall back to steepest descent if curvature went bad
            d = -g;
            dg = -g.squaredNorm();
        }
        // Backtracking Armijo search.
        double t = 1.0;
        const double c1 = 1e-4;
        bool accepted = false;
        double f_new = f;
        for (int bt = 0; bt < 40 && evals < opts.max_evaluations; ++bt) {
            x_new = x + t * d;
            f_new = eval(x_new, g_new);
            if (f_new <= f + c1 * t * dg) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break; // line search exhausted: gradient scale is noise
        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            s_hist.push_back(s);
            y_hist.push_back(y);
            rho_hist.push_back(1.0 / sy);
            if (s_hist.size() > opts.history) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        x = x_new;
        g = g_new;
        f = f_new;
    }
    if (window.stalled(evals) || g.lpNorm<Eigen::Infinity>() < opts.grad_tol)
        res.converged = true;
    res.evaluations = evals;
    return res;
}

// Gradient-free Nelder-Mead simplex with the same stopping rule.
inline OptimizeResult nelder_mead(const Objective &fn, const Eigen::VectorXd &x0,
                                  const OptimizeOptions &opts = {}) {
    const Eigen::Index n = x0.size();
    if (n == 0) throw ConfigError("empty parameter vector");
    OptimizeResult res;
    std::size_t evals = 0;
    detail::ConvergenceWindow window(opts.improvement_tol, opts.improvement_window);
    auto eval = [&](const Eigen::VectorXd &p) {
        ++evals;
        const double f = fn(p);
        window.record(evals, f);
        if (f < res.f) {
            res.f = f;
            res.x = p;
        }
        return f;
    };

    std::vector<Eigen::VectorXd> pts(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (Eigen::Index i = 0; i < n; ++i)
        pts[i + 1][i] += (x0[i] != 0.0) ? 0.05 * std::abs(x0[i]) + 0.01 : 0.05;
    for (std::size_t i = 0; i < pts.size(); ++i) fs[i] = eval(pts[i]);

    auto order = [&] {
        std::vector<std::size_t> idx(pts.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return fs[a] < fs[b]; });
        std::vector<Eigen::VectorXd> p2;
        std::vector<double> f2;
        for (auto i : idx) {
            p2.push_back(pts[i]);
            f2.push_back(fs[i]);
        }
        pts = std::move(p2);
        fs = std::move(f2);
    };

    while (evals < opts.max_evaluations) {
        order();
        if (window.stalled(evals) || std::abs(fs[n] - fs[0]) < opts.improvement_tol) {
            res.converged = true;
            break;
        }
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i) centroid += pts[i];
        centroid /= static_cast<double>(n);
        const Eigen::VectorXd xr = centroid + (centroid - pts[n]);
        const double fr = eval(xr);
        if (fr < fs[0]) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[n]);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[n] = xe;
                fs[n] = fe;
            } else {
                pts[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            pts[n] = xr;
            fs[n] = fr;
        } else {
            const Eigen::VectorXd xc = centroid + 0.5 * (pts[n] - centroid);
            const double fc = eval(xc);
            if (fc < fs[n]) {
                pts[n] = xc;
                fs[n] = fc;
            } else {
                for (Eigen::Index i = 1; i <= n; ++i) {
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
                    fs[i] = eval(pts[i]);
                }
            }
        }
    }
    res.evaluations = evals;
    return res;
}

} // namespace virasoro
