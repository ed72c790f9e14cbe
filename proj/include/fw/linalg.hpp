#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fw/point.hpp"

namespace fw {

/// y = A x for a row-major (m x n) matrix stored flat.
inline std::vector<double> matvec(const std::vector<double>& a, int m, int n,
                                  const std::vector<double>& x) {
    std::vector<double> y(static_cast<std::size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        double s = 0.0;
        const double* row = a.data() + static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) s += row[j] * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

/// y = A^T x.
inline std::vector<double> matvec_t(const std::vector<double>& a, int m, int n,
                                    const std::vector<double>& x) {
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m; ++i) {
        const double* row = a.data() + static_cast<std::size_t>(i) * n;
        const double xi = x[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) y[static_cast<std::size_t>(j)] += row[j] * xi;
    }
    return y;
}

/// Smaller Gram matrix of A (m x n): A^T A when n <= m, else A A^T.
/// Returns the symmetric matrix flat row-major plus its order.
inline std::pair<std::vector<double>, int> smaller_gram(const std::vector<double>& a, int m,
                                                        int n) {
    const bool use_cols = n <= m;
    const int d = use_cols ? n : m;
    std::vector<double> g(static_cast<std::size_t>(d) * d, 0.0);
    if (use_cols) {
        for (int i = 0; i < m; ++i) {
            const double* row = a.data() + static_cast<std::size_t>(i) * n;
            for (int p = 0; p < n; ++p) {
                const double v = row[p];
                if (v == 0.0) continue;
                for (int q = p; q < n; ++q)
                    g[static_cast<std::size_t>(p) * n + q] += v * row[q];
            }
        }
    } else {
        for (int p = 0; p < m; ++p) {
            const double* rp = a.data() + static_cast<std::size_t>(p) * n;
            for (int q = p; q < m; ++q) {
                const double* rq = a.data() + static_cast<std::size_t>(q) * n;
                double s = 0.0;
                for (int j = 0; j < n; ++j) s += rp[j] * rq[j];
                g[static_cast<std::size_t>(p) * m + q] = s;
            }
        }
    }
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < p; ++q)
            g[static_cast<std::size_t>(p) * d + q] = g[static_cast<std::size_t>(q) * d + p];
    return {std::move(g), d};
}

/// Eigenvalues of a symmetric matrix (flat row-major, order n) by cyclic
/// Jacobi rotations. Descending order. Dense, intended for desk-scale inputs.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n) {
    if (n == 0) return {};
    double frob = 0.0;
    for (double v : a) frob += v * v;
    frob = std::sqrt(frob);
    const double stop = 1e-14 * std::max(frob, 1e-300);
    auto idx = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * a[idx(i, j)] * a[idx(i, j)];
        if (std::sqrt(off) <= stop) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a[idx(p, q)];
                if (std::abs(apq) <= stop / (n * n)) continue;
                const double app = a[idx(p, p)];
                const double aqq = a[idx(q, q)];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a[idx(k, p)];
                    const double akq = a[idx(k, q)];
                    a[idx(k, p)] = c * akp - s * akq;
                    a[idx(k, q)] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a[idx(p, k)];
                    const double aqk = a[idx(q, k)];
                    a[idx(p, k)] = c * apk - s * aqk;
                    a[idx(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a[idx(i, i)];
    std::sort(eig.begin(), eig.end(), std::greater<double>());
    return eig;
}

/// Singular values of an m x n matrix (flat row-major), descending, via the
/// eigenvalues of the smaller Gram matrix.
inline std::vector<double> singular_values(const std::vector<double>& a, int m, int n) {
    auto [gram, d] = smaller_gram(a, m, n);
    std::vector<double> eig = symmetric_eigenvalues(std::move(gram), d);
    for (double& v : eig) v = std::sqrt(std::max(v, 0.0));
    return eig;
}

inline double nuclear_norm(const std::vector<double>& a, int m, int n) {
    double s = 0.0;
    for (double v : singular_values(a, m, n)) s += v;
    return s;
}

}  // namespace fw
