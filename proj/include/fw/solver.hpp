#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fw/objective.hpp"
#include "fw/oracle.hpp"
#include "fw/point.hpp"

namespace fw {

// ---------------------------------------------------------------------------
// Step-size rules for the classical method.
// ---------------------------------------------------------------------------

struct DecreasingStep {};

struct ExactLineSearchStep {};

struct ArmijoStep {
    double delta = 0.5;  // trial shrink factor, in (0,1)
    double gamma = 0.25; // sufficient-decrease fraction, in (0,1/2)
};

struct LipschitzStep {
    double L = 1.0;  // gradient-Lipschitz constant supplied by the caller
};

using StepRule = std::variant<DecreasingStep, ExactLineSearchStep, ArmijoStep, LipschitzStep>;

/// 2/(k+2).
inline double step_decreasing(int k) {
    if (k < 0) throw std::invalid_argument("step_decreasing: k must be >= 0");
    return 2.0 / (k + 2.0);
}

/// Derivative-free golden-section minimization of phi(alpha) = f(x + alpha d)
/// over [0, alpha_max], run to bracket width 1e-10 * alpha_max. Returns the
/// midpoint of the final bracket and the number of phi evaluations.
inline std::pair<double, int> step_exact(const Objective& obj, const Point& x, const Point& d,
                                         double alpha_max) {
    if (!(alpha_max > 0.0 && alpha_max <= 1.0))
        throw std::invalid_argument("step_exact: alpha_max must be in (0,1]");
    const double inv_phi = 0.6180339887498949;  // (sqrt(5)-1)/2
    double lo = 0.0, hi = alpha_max;
    double a = hi - inv_phi * (hi - lo);
    double b = lo + inv_phi * (hi - lo);
    int evals = 2;
    double fa = obj.eval(add_scaled(x, a, d)).value;
    double fb = obj.eval(add_scaled(x, b, d)).value;
    const double width = 1e-10 * alpha_max;
    while (hi - lo > width) {
        if (fa <= fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = obj.eval(add_scaled(x, a, d)).value;
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = obj.eval(add_scaled(x, b, d)).value;
        }
        ++evals;
    }
    return {0.5 * (lo + hi), evals};
}

struct ArmijoResult {
    double alpha = 0.0;
    bool satisfied = false;
    int n_trials = 0;
};

/// Backtracking search for the largest alpha in {delta^m alpha_max} with
/// f(x + alpha d) <= f(x) + gamma alpha <grad, d>. Gives up after 100
/// shrinks and reports the last trial unsatisfied.
inline ArmijoResult step_armijo(const Objective& obj, const Point& x, const Point& d,
                                double alpha_max, double delta, double gamma) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("step_armijo: delta outside (0,1)");
    if (!(gamma > 0.0 && gamma < 0.5)) throw std::invalid_argument("step_armijo: gamma outside (0,1/2)");
    const Eval at_x = obj.eval(x);
    const double slope = inner(at_x.grad, d);
    if (slope > 0.0) throw std::invalid_argument("step_armijo: not a descent direction");
    ArmijoResult res;
    double alpha = alpha_max;
    for (int m = 0; m <= 100; ++m) {
        const double f_trial = obj.eval(add_scaled(x, alpha, d)).value;
        ++res.n_trials;
        res.alpha = alpha;
        if (f_trial <= at_x.value + gamma * alpha * slope) {
            res.satisfied = true;
            return res;
        }
        alpha *= delta;
    }
    return res;
}

/// min{ -<grad,d> / (L ||d||^2), alpha_max }, clipped below at zero.
inline double step_lipschitz(double grad_dot_d, double d_norm2, double L, double alpha_max) {
    if (!(L > 0.0)) throw std::invalid_argument("step_lipschitz: L must be positive");
    if (!(d_norm2 > 0.0)) throw std::invalid_argument("step_lipschitz: degenerate direction");
    const double a = std::min(-grad_dot_d / (L * d_norm2), alpha_max);
    return std::max(a, 0.0);
}

// ---------------------------------------------------------------------------
// Traces and results.
// ---------------------------------------------------------------------------

/// One completed iteration. f_value is the objective after the accepted step
/// (at x_{k+1}); dual_gap is the gap at x_k, where the step was decided.
/// L_k is 0 for classical rules that carry no Lipschitz estimate, and
/// n_checks counts line-search / sufficient-decrease evaluations (0 for the
/// closed-form rules).
struct IterateRecord {
    int k = 0;
    double f_value = 0.0;
    double dual_gap = 0.0;
    double L_k = 0.0;
    double alpha_k = 0.0;
    int n_checks = 0;
    double d_norm = 0.0;
};

struct Trace {
    double f_initial = std::numeric_limits<double>::quiet_NaN();
    std::vector<IterateRecord> records;

    bool empty() const { return records.empty(); }
    std::size_t size() const { return records.size(); }

    /// f(x_k): f_initial for k = 0, else records[k-1].f_value.
    double f_at(std::size_t k) const {
        return k == 0 ? f_initial : records[k - 1].f_value;
    }
};

enum class SolveStatus { GapConverged, IterBudget, Stalled, DegenerateDirection };

inline const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::GapConverged: return "gap_converged";
        case SolveStatus::IterBudget: return "iter_budget";
        case SolveStatus::Stalled: return "stalled";
        case SolveStatus::DegenerateDirection: return "degenerate_direction";
    }
    return "?";
}

struct SolveResult {
    Point final_point;
    double final_f = 0.0;
    double final_gap = 0.0;
    Trace trace;
    SolveStatus status = SolveStatus::IterBudget;
};

/// Frank-Wolfe dual gap G(x) = <grad, x - s> with s = lmo(grad). Nonnegative
/// up to roundoff; for convex f it upper-bounds f(x) - f*.
inline std::pair<double, Point> duality_gap(const Point& x, const Point& grad,
                                            const LmoOracle& oracle) {
    Point s = oracle.lmo(grad);
    return {inner(grad, sub(x, s)), std::move(s)};
}

/// Optional per-iterate hook, called with each accepted iterate (x_{k+1}).
using IterateObserver = std::function<void(int k, const Point& x)>;

// ---------------------------------------------------------------------------
// Classical Frank-Wolfe.
// ---------------------------------------------------------------------------

inline SolveResult classical_fw(const Objective& obj, const LmoOracle& oracle, const Point& x0,
                                const StepRule& rule, int max_iters, double gap_tol = 0.0,
                                const IterateObserver& observer = {}) {
    if (!oracle.contains(x0, 1e-9))
        throw std::invalid_argument("classical_fw: x0 is not feasible");

    SolveResult out;
    Point x = x0;
    Eval cur = obj.eval(x);
    out.trace.f_initial = cur.value;
    out.status = SolveStatus::IterBudget;

    for (int k = 0; k < max_iters; ++k) {
        auto [gap, s] = duality_gap(x, cur.grad, oracle);
        if (gap <= gap_tol) {
            out.status = SolveStatus::GapConverged;
            out.final_gap = gap;
            out.final_point = std::move(x);
            out.final_f = cur.value;
            return out;
        }
        const Point d = sub(s, x);
        const double dn = norm2(d);
        if (dn <= 1e-15) {
            out.status = SolveStatus::DegenerateDirection;
            out.final_gap = gap;
            out.final_point = std::move(x);
            out.final_f = cur.value;
            return out;
        }

        double alpha = 0.0;
        double recorded_L = 0.0;
        int n_checks = 0;
        if (std::holds_alternative<DecreasingStep>(rule)) {
            alpha = step_decreasing(k);
        } else if (std::holds_alternative<ExactLineSearchStep>(rule)) {
            auto [a, evals] = step_exact(obj, x, d, 1.0);
            alpha = a;
            n_checks = evals;
        } else if (const auto* ar = std::get_if<ArmijoStep>(&rule)) {
            const ArmijoResult res = step_armijo(obj, x, d, 1.0, ar->delta, ar->gamma);
            alpha = res.alpha;
            n_checks = res.n_trials;
        } else {
            const auto& ls = std::get<LipschitzStep>(rule);
            alpha = step_lipschitz(inner(cur.grad, d), dn * dn, ls.L, 1.0);
            recorded_L = ls.L;
        }

        x = convex_combine(x, s, alpha);
        cur = obj.eval(x);
        out.trace.records.push_back({k, cur.value, gap, recorded_L, alpha, n_checks, dn});
        if (observer) observer(k, x);
    }

    out.final_gap = duality_gap(x, cur.grad, oracle).first;
    out.final_point = std::move(x);
    out.final_f = cur.value;
    return out;
}

// ---------------------------------------------------------------------------
// Adaptive Frank-Wolfe with backtracking estimation of the smoothness
// constant. Each iteration halves the running estimate, then doubles it until
// one of two acceptance inequalities holds:
//   theta < 1:  f(x + theta d) <= f(x) - <g,d>^2 / (2 L ||d||^2),
//   theta >= 1: f(x + d) <= f(x) + <g,d> + (L/2) ||d||^2,
// with theta = min{ -<g,d> / (L ||d||^2), 1 }. The direction is unchanged by
// retries, so each retry costs one objective evaluation.
// ---------------------------------------------------------------------------

struct AdaptiveConfig {
    double L_init = 1.0;  // estimate entering the run (halved before first use)
    int max_iters = 100;
    double gap_tol = 0.0;
    double alpha_min = 1e-16;
    double L_max_factor = 1152921504606846976.0;  // 2^60
    int max_backtracks_per_iter = 200;

    void validate() const {
        if (!(L_init > 0.0)) throw std::invalid_argument("AdaptiveConfig: L_init must be positive");
        if (max_iters < 0) throw std::invalid_argument("AdaptiveConfig: max_iters must be >= 0");
        if (!(gap_tol >= 0.0)) throw std::invalid_argument("AdaptiveConfig: gap_tol must be >= 0");
        if (!(alpha_min > 0.0)) throw std::invalid_argument("AdaptiveConfig: alpha_min must be positive");
        if (!(L_max_factor > 0.0)) throw std::invalid_argument("AdaptiveConfig: L_max_factor must be positive");
        if (max_backtracks_per_iter < 1)
            throw std::invalid_argument("AdaptiveConfig: max_backtracks_per_iter must be >= 1");
    }
};

inline SolveResult adaptive_fw(const Objective& obj, const LmoOracle& oracle,
                               const AdaptiveConfig& cfg, const Point& x0,
                               const IterateObserver& observer = {}) {
    cfg.validate();
    if (!oracle.contains(x0, 1e-9))
        throw std::invalid_argument("adaptive_fw: x0 is not feasible");

    SolveResult out;
    Point x = x0;
    Eval cur = obj.eval(x);
    out.trace.f_initial = cur.value;
    out.status = SolveStatus::IterBudget;
    double L = cfg.L_init;
    const double L_cap = cfg.L_init * cfg.L_max_factor;

    auto finish = [&](SolveStatus st, double gap) {
        out.status = st;
        out.final_gap = gap;
        out.final_point = x;
        out.final_f = cur.value;
    };

    for (int k = 0; k < cfg.max_iters; ++k) {
        L /= 2.0;
        auto [gap, s] = duality_gap(x, cur.grad, oracle);
        if (gap <= cfg.gap_tol) {
            finish(SolveStatus::GapConverged, gap);
            return out;
        }
        const Point d = sub(s, x);
        const double dn = norm2(d);
        if (dn <= 1e-15) {
            finish(SolveStatus::DegenerateDirection, gap);
            return out;
        }
        const double dn2 = dn * dn;
        const double gd = inner(cur.grad, d);  // negative here: gap = -gd > 0

        int n_checks = 0;
        double alpha = 0.0;
        Eval trial;
        Point x_trial;
        while (true) {
            if (n_checks >= cfg.max_backtracks_per_iter || L > L_cap) {
                finish(SolveStatus::Stalled, gap);
                return out;
            }
            const double theta = std::min(-gd / (L * dn2), 1.0);
            if (theta < 1.0) {
                x_trial = add_scaled(x, theta, d);
                trial = obj.eval(x_trial);
                ++n_checks;
                if (trial.value <= cur.value - gd * gd / (2.0 * L * dn2)) {
                    alpha = theta;
                    break;
                }
            } else {
                x_trial = add_scaled(x, 1.0, d);
                trial = obj.eval(x_trial);
                ++n_checks;
                if (trial.value <= cur.value + gd + 0.5 * L * dn2) {
                    alpha = 1.0;
                    break;
                }
            }
            L *= 2.0;
        }

        if (alpha < cfg.alpha_min) {
            finish(SolveStatus::Stalled, gap);
            return out;
        }

        x = std::move(x_trial);
        cur = trial;
        out.trace.records.push_back({k, cur.value, gap, L, alpha, n_checks, dn});
        if (observer) observer(k, x);
    }

    out.final_gap = duality_gap(x, cur.grad, oracle).first;
    out.final_point = std::move(x);
    out.final_f = cur.value;
    return out;
}

}  // namespace fw
