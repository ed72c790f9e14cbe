#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fw/linalg.hpp"
#include "fw/objective.hpp"
#include "fw/point.hpp"

namespace fw {

/// Anchor points A_1..A_N shared by the distance-sum and covering objectives.
struct AnchorSet {
    std::vector<Point> points;

    int dim() const { return points.empty() ? 0 : points.front().dim(); }

    void validate() const {
        if (points.empty()) throw std::invalid_argument("AnchorSet: needs at least one anchor");
        for (const Point& p : points) {
            if (p.dim() != points.front().dim())
                throw std::invalid_argument("AnchorSet: mixed dimensions");
            if (!p.all_finite()) throw std::invalid_argument("AnchorSet: non-finite coordinate");
        }
    }
};

/// Sparse set of observed matrix entries (i, j, value).
struct ObservedEntry {
    int i = 0;
    int j = 0;
    double value = 0.0;
};

struct ObservedEntries {
    std::vector<ObservedEntry> entries;
    int rows = 0;
    int cols = 0;

    void validate() const {
        std::vector<std::pair<int, int>> seen;
        seen.reserve(entries.size());
        for (const ObservedEntry& e : entries) {
            if (e.i < 0 || e.i >= rows || e.j < 0 || e.j >= cols)
                throw std::invalid_argument("ObservedEntries: index out of range");
            seen.emplace_back(e.i, e.j);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw std::invalid_argument("ObservedEntries: duplicate entry");
    }
};

/// Row-major feature matrix with one binary label per row.
struct LabeledDataset {
    std::vector<double> features;  // num_rows x num_cols, row-major
    int num_rows = 0;
    int num_cols = 0;
    std::vector<int> labels;  // in {0, 1}

    void validate() const {
        if (static_cast<std::size_t>(num_rows) * num_cols != features.size())
            throw std::invalid_argument("LabeledDataset: feature matrix size mismatch");
        if (static_cast<int>(labels.size()) != num_rows)
            throw std::invalid_argument("LabeledDataset: label count mismatch");
        for (int y : labels)
            if (y != 0 && y != 1)
                throw std::invalid_argument("LabeledDataset: label outside {0,1}");
    }
};

// ---------------------------------------------------------------------------
// Sum of Euclidean distances to the anchors (Fermat-Torricelli-Steiner).
// Nonsmooth at the anchors; the subgradient drops any term with
// ||x - A_k|| <= 1e-15, which is a valid selection there.
// ---------------------------------------------------------------------------
class FtsObjective final : public Objective {
  public:
    explicit FtsObjective(AnchorSet anchors) : anchors_(std::move(anchors)) {
        anchors_.validate();
    }

    int dim() const override { return anchors_.dim(); }

    Eval eval(const Point& x) const override {
        Eval out;
        out.grad = Point::zeros(x.dim());
        out.grad.shape = x.shape;
        for (const Point& a : anchors_.points) {
            require_same_dim(x, a, "FtsObjective::eval");
            double d2 = 0.0;
            for (int i = 0; i < x.dim(); ++i) {
                const double t = x.coords[static_cast<std::size_t>(i)] - a.coords[static_cast<std::size_t>(i)];
                d2 += t * t;
            }
            const double d = std::sqrt(d2);
            out.value += d;
            if (d > 1e-15) {
                for (int i = 0; i < x.dim(); ++i)
                    out.grad.coords[static_cast<std::size_t>(i)] +=
                        (x.coords[static_cast<std::size_t>(i)] - a.coords[static_cast<std::size_t>(i)]) / d;
            }
        }
        return out;
    }

    const AnchorSet& anchors() const { return anchors_; }

  private:
    AnchorSet anchors_;
};

// ---------------------------------------------------------------------------
// Largest squared distance to the anchors (smallest covering ball). The
// subgradient is 2(x - A_k*) for the lowest index attaining the max.
// ---------------------------------------------------------------------------
class MaxBallObjective final : public Objective {
  public:
    explicit MaxBallObjective(AnchorSet anchors) : anchors_(std::move(anchors)) {
        anchors_.validate();
    }

    int dim() const override { return anchors_.dim(); }

    Eval eval(const Point& x) const override {
        double best = -1.0;
        std::size_t best_k = 0;
        for (std::size_t k = 0; k < anchors_.points.size(); ++k) {
            const Point& a = anchors_.points[k];
            require_same_dim(x, a, "MaxBallObjective::eval");
            double d2 = 0.0;
            for (int i = 0; i < x.dim(); ++i) {
                const double t = x.coords[static_cast<std::size_t>(i)] - a.coords[static_cast<std::size_t>(i)];
                d2 += t * t;
            }
            if (d2 > best) {
                best = d2;
                best_k = k;
            }
        }
        Eval out;
        out.value = best;
        out.grad = scale(sub(x, anchors_.points[best_k]), 2.0);
        out.grad.shape = x.shape;
        return out;
    }

  private:
    AnchorSet anchors_;
};

// ---------------------------------------------------------------------------
// Weighted sum of squared coordinates: sum_i a_i x_i^2 with a_i > 0.
// ---------------------------------------------------------------------------
class WeightedQuadObjective final : public Objective {
  public:
    explicit WeightedQuadObjective(std::vector<double> a, std::optional<double> fstar = {})
        : a_(std::move(a)), fstar_(fstar) {
        for (double v : a_)
            if (!(v > 0.0)) throw std::invalid_argument("WeightedQuadObjective: weights must be positive");
    }

    int dim() const override { return static_cast<int>(a_.size()); }

    Eval eval(const Point& x) const override {
        if (x.coords.size() != a_.size())
            throw std::invalid_argument("WeightedQuadObjective::eval: dimension mismatch");
        Eval out;
        out.grad = Point::zeros(x.dim());
        out.grad.shape = x.shape;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            out.value += a_[i] * x.coords[i] * x.coords[i];
            out.grad.coords[i] = 2.0 * a_[i] * x.coords[i];
        }
        return out;
    }

    std::optional<double> known_fstar() const override { return fstar_; }

    /// Gradient-Lipschitz constant in the Euclidean norm.
    double lipschitz_constant() const { return 2.0 * *std::max_element(a_.begin(), a_.end()); }

    const std::vector<double>& weights() const { return a_; }

  private:
    std::vector<double> a_;
    std::optional<double> fstar_;
};

// ---------------------------------------------------------------------------
// Squared error over the observed entries of a matrix.
// ---------------------------------------------------------------------------
class MatrixCompletionObjective final : public Objective {
  public:
    explicit MatrixCompletionObjective(ObservedEntries obs) : obs_(std::move(obs)) {
        obs_.validate();
    }

    int dim() const override { return obs_.rows * obs_.cols; }

    Eval eval(const Point& x) const override {
        if (!x.shape || x.shape->rows != obs_.rows || x.shape->cols != obs_.cols)
            throw std::invalid_argument("MatrixCompletionObjective::eval: shape mismatch");
        Eval out;
        out.grad = Point::zeros(obs_.rows, obs_.cols);
        for (const ObservedEntry& e : obs_.entries) {
            const std::size_t idx = static_cast<std::size_t>(e.i) * obs_.cols + e.j;
            const double resid = x.coords[idx] - e.value;
            out.value += resid * resid;
            out.grad.coords[idx] = 2.0 * resid;
        }
        return out;
    }

    const ObservedEntries& observed() const { return obs_; }

  private:
    ObservedEntries obs_;
};

// ---------------------------------------------------------------------------
// SVM dual ||A x||^2 on the simplex, evaluated in factored form. A is d x n
// with column i equal to y_i p_i; A^T A is never materialized.
// ---------------------------------------------------------------------------
class SvmDualObjective final : public Objective {
  public:
    SvmDualObjective(std::vector<double> a, int d, int n)
        : a_(std::move(a)), d_(d), n_(n) {
        if (static_cast<std::size_t>(d_) * n_ != a_.size())
            throw std::invalid_argument("SvmDualObjective: matrix size mismatch");
    }

    /// Build A = (y_1 p_1 ... y_n p_n) from a labeled dataset; labels {0,1}
    /// are remapped to {-1,+1}.
    static SvmDualObjective from_dataset(const LabeledDataset& ds) {
        ds.validate();
        const int d = ds.num_cols;
        const int n = ds.num_rows;
        std::vector<double> a(static_cast<std::size_t>(d) * n, 0.0);
        for (int i = 0; i < n; ++i) {
            const double y = ds.labels[static_cast<std::size_t>(i)] == 1 ? 1.0 : -1.0;
            for (int f = 0; f < d; ++f)
                a[static_cast<std::size_t>(f) * n + i] =
                    y * ds.features[static_cast<std::size_t>(i) * d + f];
        }
        return SvmDualObjective(std::move(a), d, n);
    }

    int dim() const override { return n_; }

    Eval eval(const Point& x) const override {
        if (x.dim() != n_) throw std::invalid_argument("SvmDualObjective::eval: dimension mismatch");
        const std::vector<double> ax = matvec(a_, d_, n_, x.coords);
        Eval out;
        for (double v : ax) out.value += v * v;
        out.grad = Point(matvec_t(a_, d_, n_, ax));
        out.grad.shape = x.shape;
        for (double& v : out.grad.coords) v *= 2.0;
        return out;
    }

  private:
    std::vector<double> a_;  // d x n, row-major
    int d_;
    int n_;
};

// ---------------------------------------------------------------------------
// Binary cross-entropy of a logistic model. Logits are clamped to [-30, 30]
// before exponentiation and predictions to [1e-12, 1 - 1e-12] inside the
// logarithms; the gradient uses the unclamped sigmoid of the clamped logit.
// ---------------------------------------------------------------------------
class LogRegObjective final : public Objective {
  public:
    explicit LogRegObjective(LabeledDataset data) : data_(std::move(data)) {
        data_.validate();
        if (data_.num_rows < 1) throw std::invalid_argument("LogRegObjective: empty dataset");
    }

    int dim() const override { return data_.num_cols; }

    Eval eval(const Point& w) const override {
        if (w.dim() != data_.num_cols)
            throw std::invalid_argument("LogRegObjective::eval: dimension mismatch");
        const int m = data_.num_rows;
        const int n = data_.num_cols;
        Eval out;
        out.grad = Point::zeros(n);
        out.grad.shape = w.shape;
        for (int i = 0; i < m; ++i) {
            const double* row = data_.features.data() + static_cast<std::size_t>(i) * n;
            double z = 0.0;
            for (int j = 0; j < n; ++j) z += row[j] * w.coords[static_cast<std::size_t>(j)];
            z = std::clamp(z, -30.0, 30.0);
            const double yhat = 1.0 / (1.0 + std::exp(-z));
            const double y = static_cast<double>(data_.labels[static_cast<std::size_t>(i)]);
            const double yhat_log = std::clamp(yhat, 1e-12, 1.0 - 1e-12);
            out.value -= y * std::log(yhat_log) + (1.0 - y) * std::log(1.0 - yhat_log);
            const double coef = yhat - y;
            for (int j = 0; j < n; ++j)
                out.grad.coords[static_cast<std::size_t>(j)] += coef * row[j];
        }
        out.value /= m;
        for (double& v : out.grad.coords) v /= m;
        return out;
    }

  private:
    LabeledDataset data_;
};

}  // namespace fw
