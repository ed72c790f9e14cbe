#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "fw/solver.hpp"

namespace fw {

/// Outcome of checking one theoretical bound against a recorded trace.
/// worst_margin is min over all checks of (bound - observed); the certificate
/// holds iff worst_margin >= -tol. A certificate with zero checks holds
/// vacuously with infinite margin.
struct CertificateReport {
    std::string name;
    bool holds = true;
    double worst_margin = std::numeric_limits<double>::infinity();
    std::optional<int> first_violation_k;
    int checks = 0;
};

namespace detail {

inline void require_trace(const Trace& trace, const char* who) {
    if (trace.records.empty()) throw std::invalid_argument(std::string(who) + ": empty trace");
}

inline void require_f_initial(const Trace& trace, const char* who) {
    if (std::isnan(trace.f_initial))
        throw std::invalid_argument(std::string(who) + ": trace missing initial objective value");
}

/// Fold one comparison `observed <= bound (+tol)` into the report.
inline void check(CertificateReport& rep, double bound, double observed, double tol, int k) {
    ++rep.checks;
    const double margin = bound - observed;
    if (margin < rep.worst_margin) rep.worst_margin = margin;
    if (margin < -tol && !rep.first_violation_k) {
        rep.holds = false;
        rep.first_violation_k = k;
    }
}

}  // namespace detail

/// Sublinear rate: f(x_k) - f* <= 2 D^2 max_{j<k} L_j / (k+2) for all k >= 1.
inline CertificateReport cert_sublinear(const Trace& trace, double fstar, double D,
                                        double tol = 1e-9) {
    detail::require_trace(trace, "cert_sublinear");
    CertificateReport rep{"sublinear_rate"};
    double max_L = 0.0;
    for (std::size_t j = 0; j < trace.records.size(); ++j) {
        max_L = std::max(max_L, trace.records[j].L_k);
        const int k = static_cast<int>(j) + 1;  // bound applies to x_{j+1}
        const double bound = 2.0 * D * D * max_L / (k + 2.0);
        detail::check(rep, bound, trace.records[j].f_value - fstar, tol, k);
    }
    return rep;
}

/// Residual-halving guarantees around full steps:
///  (a) every alpha = 1 step at least halves f - f*;
///  (b) a terminal run of m < n consecutive alpha = 1 steps gives
///      f(x_n) - f* <= (1/2^{m-1}) D^2 max_{j<=n-m-1} L_j / (n-m+2);
///  (c) with t full steps overall, f(x_n) - f* <= (f(x_0) - f*) / 2^t.
inline CertificateReport cert_halving(const Trace& trace, double fstar, double D,
                                      double tol = 1e-9) {
    detail::require_trace(trace, "cert_halving");
    detail::require_f_initial(trace, "cert_halving");
    CertificateReport rep{"halving"};

    const std::size_t n = trace.records.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (trace.records[k].alpha_k == 1.0) {
            const double h_before = trace.f_at(k) - fstar;
            const double h_after = trace.records[k].f_value - fstar;
            detail::check(rep, 0.5 * h_before, h_after, tol, static_cast<int>(k) + 1);
        }
    }

    std::size_t m = 0;
    while (m < n && trace.records[n - 1 - m].alpha_k == 1.0) ++m;
    if (m >= 1 && m < n) {
        double max_L = 0.0;
        for (std::size_t j = 0; j + m < n; ++j) max_L = std::max(max_L, trace.records[j].L_k);
        const double denom = static_cast<double>(n - m) + 2.0;
        const double bound = std::pow(0.5, static_cast<double>(m) - 1.0) * D * D * max_L / denom;
        detail::check(rep, bound, trace.records[n - 1].f_value - fstar, tol, static_cast<int>(n));
    }

    std::size_t t = 0;
    for (const IterateRecord& r : trace.records)
        if (r.alpha_k == 1.0) ++t;
    const double h0 = trace.f_initial - fstar;
    detail::check(rep, h0 / std::pow(2.0, static_cast<double>(t)),
                  trace.records[n - 1].f_value - fstar, tol, static_cast<int>(n));
    return rep;
}

/// Geometric product bound on the prefix where f(x_j) - f* stays >= Delta:
/// f(x_k) - f* <= (f(x_0) - f*) prod_{j<k} phi_j with phi_j = 1/2 on full
/// steps and 1 - Delta / (2 L_j D^2) otherwise.
inline CertificateReport cert_product(const Trace& trace, double fstar, double Delta, double D,
                                      double tol = 1e-9) {
    detail::require_trace(trace, "cert_product");
    detail::require_f_initial(trace, "cert_product");
    if (!(Delta > 0.0)) throw std::invalid_argument("cert_product: Delta must be positive");
    CertificateReport rep{"residual_product"};

    std::size_t prefix = 0;  // largest k with h_j >= Delta for all j < k
    while (prefix < trace.records.size() && trace.f_at(prefix) - fstar >= Delta) ++prefix;

    const double h0 = trace.f_initial - fstar;
    double product = 1.0;
    for (std::size_t j = 0; j < prefix; ++j) {
        const IterateRecord& r = trace.records[j];
        product *= r.alpha_k == 1.0 ? 0.5 : 1.0 - Delta / (2.0 * r.L_k * D * D);
        detail::check(rep, h0 * product, r.f_value - fstar, tol, static_cast<int>(j) + 1);
    }
    return rep;
}

/// Constants of a gradient-dominated objective with an interior minimizer:
/// (f(x) - f*) / c^2 <= ||grad f(x)||^2 and B(x*, r) inside the feasible set.
struct PLParams {
    double c = 1.0;
    double r = 1.0;
    double D = 2.0;

    void validate() const {
        if (!(c > 0.0 && r > 0.0 && D > 0.0))
            throw std::invalid_argument("PLParams: constants must be positive");
        if (r > D / 2.0 + 1e-12)
            throw std::invalid_argument("PLParams: interior radius exceeds D/2");
    }
};

/// Geometric rate under gradient dominance: partial steps contract the
/// residual by 1 - r^2 / (2 L_k c^2 D^2), full steps by 1/2; both per step
/// and chained from the initial residual.
inline CertificateReport cert_pl(const Trace& trace, double fstar, const PLParams& pl,
                                 double tol = 1e-9) {
    detail::require_trace(trace, "cert_pl");
    detail::require_f_initial(trace, "cert_pl");
    pl.validate();
    CertificateReport rep{"gradient_dominance_rate"};

    const double h0 = trace.f_initial - fstar;
    double product = 1.0;
    for (std::size_t k = 0; k < trace.records.size(); ++k) {
        const IterateRecord& r = trace.records[k];
        const double phi =
            r.alpha_k == 1.0 ? 0.5 : 1.0 - pl.r * pl.r / (2.0 * r.L_k * pl.c * pl.c * pl.D * pl.D);
        const double h_before = trace.f_at(k) - fstar;
        const double h_after = r.f_value - fstar;
        detail::check(rep, h_before * phi, h_after, tol, static_cast<int>(k) + 1);
        product *= phi;
        detail::check(rep, h0 * product, h_after, tol, static_cast<int>(k) + 1);
    }
    return rep;
}

/// Backtracking economy: total acceptance checks stay within
/// 2N + log2(2 L_true / L0) + 1 and every estimate stays below 2 L_true
/// (valid when the run started at or below 2 L_true).
inline CertificateReport cert_backtracks(const Trace& trace, double L_true, double L0) {
    detail::require_trace(trace, "cert_backtracks");
    if (!(L_true > 0.0)) throw std::invalid_argument("cert_backtracks: L_true must be positive");
    if (!(L0 > 0.0)) throw std::invalid_argument("cert_backtracks: L0 must be positive");
    CertificateReport rep{"backtrack_budget"};

    long long total = 0;
    for (const IterateRecord& r : trace.records) total += r.n_checks;
    const double budget =
        2.0 * static_cast<double>(trace.records.size()) + std::log2(2.0 * L_true / L0) + 1.0;
    detail::check(rep, budget, static_cast<double>(total), 0.0, static_cast<int>(trace.records.size()));

    for (std::size_t k = 0; k < trace.records.size(); ++k)
        detail::check(rep, 2.0 * L_true, trace.records[k].L_k, 0.0, static_cast<int>(k));
    return rep;
}

}  // namespace fw
