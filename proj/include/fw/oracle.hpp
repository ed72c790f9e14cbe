#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "fw/linalg.hpp"
#include "fw/point.hpp"
#include "fw/rng.hpp"

namespace fw {

enum class SetKind { L1Ball, L2Ball, LInfBall, Simplex, NuclearBall };

inline const char* set_kind_name(SetKind k) {
    switch (k) {
        case SetKind::L1Ball: return "l1";
        case SetKind::L2Ball: return "l2";
        case SetKind::LInfBall: return "linf";
        case SetKind::Simplex: return "simplex";
        case SetKind::NuclearBall: return "nuclear";
    }
    return "?";
}

/// Description of a feasible set. `radius` is r for the norm balls and delta
/// for the nuclear ball; it is ignored for the simplex. NuclearBall requires
/// a matrix shape with rows*cols == dim.
struct FeasibleSetSpec {
    SetKind kind = SetKind::L2Ball;
    double radius = 1.0;
    int dim = 0;
    std::optional<Shape> shape;

    void validate() const {
        if (dim <= 0) throw std::invalid_argument("FeasibleSetSpec: dim must be positive");
        if (kind != SetKind::Simplex && !(radius > 0.0))
            throw std::invalid_argument("FeasibleSetSpec: radius must be positive");
        if (kind == SetKind::NuclearBall) {
            if (!shape) throw std::invalid_argument("FeasibleSetSpec: nuclear ball requires a shape");
            if (static_cast<long long>(shape->rows) * shape->cols != dim)
                throw std::invalid_argument("FeasibleSetSpec: shape does not match dim");
        }
    }
};

/// Linear minimization oracle over a compact convex set Q:
/// lmo(g) minimizes <g, z> over z in Q.
class LmoOracle {
  public:
    virtual ~LmoOracle() = default;

    virtual int dim() const = 0;
    virtual Point lmo(const Point& g) const = 0;
    /// Euclidean (Frobenius) diameter of Q.
    virtual double diameter() const = 0;
    virtual bool contains(const Point& p, double tol) const = 0;
};

// ---------------------------------------------------------------------------
// Closed-form LMOs. Ties are broken toward the lowest index throughout so
// that traces are reproducible.
// ---------------------------------------------------------------------------

/// argmin over the l1 ball of radius r: a signed vertex of the cross-polytope.
/// g = 0 picks r*e0.
inline Point lmo_l1(const Point& g, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("lmo_l1: radius must be positive");
    int best = 0;
    double best_abs = -1.0;
    for (int i = 0; i < g.dim(); ++i) {
        const double a = std::abs(g.coords[static_cast<std::size_t>(i)]);
        if (a > best_abs) {
            best_abs = a;
            best = i;
        }
    }
    Point z = Point::zeros(g.dim());
    z.shape = g.shape;
    if (best_abs <= 0.0) {
        z.coords[0] = r;
        return z;
    }
    const double gi = g.coords[static_cast<std::size_t>(best)];
    z.coords[static_cast<std::size_t>(best)] = gi > 0.0 ? -r : r;
    return z;
}

/// argmin over the l2 ball: -r g / ||g||, or 0 for g = 0.
inline Point lmo_l2(const Point& g, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("lmo_l2: radius must be positive");
    const double n = norm2(g);
    if (n == 0.0) {
        Point z = Point::zeros(g.dim());
        z.shape = g.shape;
        return z;
    }
    return scale(g, -r / n);
}

/// argmin over the l-infinity ball: coordinatewise -r sign(g_i), sign(0) = 0.
inline Point lmo_linf(const Point& g, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("lmo_linf: radius must be positive");
    Point z = Point::zeros(g.dim());
    z.shape = g.shape;
    for (int i = 0; i < g.dim(); ++i) {
        const double gi = g.coords[static_cast<std::size_t>(i)];
        if (gi > 0.0)
            z.coords[static_cast<std::size_t>(i)] = -r;
        else if (gi < 0.0)
            z.coords[static_cast<std::size_t>(i)] = r;
    }
    return z;
}

/// argmin over the unit simplex: the vertex of the smallest coordinate of g.
inline Point lmo_simplex(const Point& g) {
    if (g.dim() < 1) throw std::invalid_argument("lmo_simplex: empty point");
    int best = 0;
    for (int i = 1; i < g.dim(); ++i)
        if (g.coords[static_cast<std::size_t>(i)] < g.coords[static_cast<std::size_t>(best)])
            best = i;
    return Point::basis(g.dim(), best);
}

/// Power-iteration controls for the nuclear-ball LMO. max_iter = 0 selects
/// the default budget 10*max(m,n) + 200.
struct PowerIterConfig {
    double rel_tol = 1e-10;
    int max_iter = 0;
    std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

class PowerIterationError : public std::runtime_error {
  public:
    PowerIterationError(const std::string& what, double residual)
        : std::runtime_error(what), last_residual(residual) {}
    double last_residual;
};

namespace detail {

struct TopSingular {
    double sigma = 0.0;
    std::vector<double> u;
    std::vector<double> v;
};

/// Top singular pair of an m x n matrix by power iteration on the smaller
/// Gram matrix, started from a seeded unit Gaussian vector. One restart with
/// a shifted seed before giving up.
inline TopSingular top_singular_pair(const std::vector<double>& a, int m, int n,
                                     const PowerIterConfig& cfg) {
    const int budget = cfg.max_iter > 0 ? cfg.max_iter : 10 * std::max(m, n) + 200;
    const bool use_cols = n <= m;
    const int d = use_cols ? n : m;

    // One Gram-matrix application without materializing the Gram matrix.
    auto apply =
        [&](const std::vector<double>& x) {
            if (use_cols) return matvec_t(a, m, n, matvec(a, m, n, x));  // A^T A x
            return matvec(a, m, n, matvec_t(a, m, n, x));                // A A^T x
        };

    double last_residual = 0.0;
    for (int attempt = 0; attempt < 2; ++attempt) {
        Rng rng(cfg.seed + static_cast<std::uint64_t>(attempt));
        std::vector<double> v(static_cast<std::size_t>(d));
        double nv = 0.0;
        for (double& x : v) {
            x = rng.gaussian();
            nv += x * x;
        }
        nv = std::sqrt(nv);
        for (double& x : v) x /= nv;

        double rho_prev = -1.0;
        for (int it = 0; it < budget; ++it) {
            std::vector<double> w = apply(v);
            double rho = 0.0;
            for (int i = 0; i < d; ++i) rho += v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)];
            double nw = 0.0;
            for (double x : w) nw += x * x;
            nw = std::sqrt(nw);
            if (nw == 0.0) break;  // v landed in the null space; restart
            for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] / nw;
            last_residual = std::abs(rho - rho_prev) / std::max(std::abs(rho), 1e-300);
            if (rho_prev >= 0.0 && last_residual <= cfg.rel_tol) {
                TopSingular out;
                out.sigma = std::sqrt(std::max(rho, 0.0));
                if (use_cols) {
                    out.v = v;
                    out.u = matvec(a, m, n, v);
                } else {
                    out.u = v;
                    out.v = matvec_t(a, m, n, v);
                }
                double no = 0.0;
                for (double x : (use_cols ? out.u : out.v)) no += x * x;
                no = std::sqrt(no);
                if (no == 0.0) break;  // sigma = 0 direction; restart
                for (double& x : (use_cols ? out.u : out.v)) x /= no;
                return out;
            }
            rho_prev = rho;
        }
    }
    throw PowerIterationError("power iteration did not converge", last_residual);
}

}  // namespace detail

/// argmin over the nuclear-norm ball of radius delta: -delta u1 v1^T for the
/// top singular pair (u1, v1). G = 0 returns the zero matrix.
inline Point lmo_nuclear(const Point& g, double delta, const PowerIterConfig& cfg = {}) {
    if (!(delta > 0.0)) throw std::invalid_argument("lmo_nuclear: delta must be positive");
    if (!g.shape) throw std::invalid_argument("lmo_nuclear: gradient must carry a matrix shape");
    const int m = g.shape->rows;
    const int n = g.shape->cols;
    if (norm2(g) == 0.0) return Point::zeros(m, n);
    const detail::TopSingular top = detail::top_singular_pair(g.coords, m, n, cfg);
    Point z = Point::zeros(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            z.coords[static_cast<std::size_t>(i) * n + j] =
                -delta * top.u[static_cast<std::size_t>(i)] * top.v[static_cast<std::size_t>(j)];
    return z;
}

/// Euclidean (Frobenius) diameter of each supported set.
inline double set_diameter(const FeasibleSetSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case SetKind::L1Ball: return 2.0 * spec.radius;
        case SetKind::L2Ball: return 2.0 * spec.radius;
        case SetKind::LInfBall: return 2.0 * spec.radius * std::sqrt(static_cast<double>(spec.dim));
        case SetKind::Simplex: return std::sqrt(2.0);
        case SetKind::NuclearBall: return 2.0 * spec.radius;
    }
    throw std::logic_error("set_diameter: unreachable");
}

// ---------------------------------------------------------------------------
// Oracle classes over the closed forms above.
// ---------------------------------------------------------------------------

class L1BallOracle final : public LmoOracle {
  public:
    L1BallOracle(int dim, double r) : dim_(dim), r_(r) {
        FeasibleSetSpec{SetKind::L1Ball, r, dim, std::nullopt}.validate();
    }
    int dim() const override { return dim_; }
    Point lmo(const Point& g) const override { return lmo_l1(g, r_); }
    double diameter() const override { return 2.0 * r_; }
    bool contains(const Point& p, double tol) const override {
        double s = 0.0;
        for (double v : p.coords) s += std::abs(v);
        return s <= r_ + tol;
    }

  private:
    int dim_;
    double r_;
};

class L2BallOracle final : public LmoOracle {
  public:
    L2BallOracle(int dim, double r) : dim_(dim), r_(r) {
        FeasibleSetSpec{SetKind::L2Ball, r, dim, std::nullopt}.validate();
    }
    int dim() const override { return dim_; }
    Point lmo(const Point& g) const override { return lmo_l2(g, r_); }
    double diameter() const override { return 2.0 * r_; }
    bool contains(const Point& p, double tol) const override { return norm2(p) <= r_ + tol; }

  private:
    int dim_;
    double r_;
};

class LInfBallOracle final : public LmoOracle {
  public:
    LInfBallOracle(int dim, double r) : dim_(dim), r_(r) {
        FeasibleSetSpec{SetKind::LInfBall, r, dim, std::nullopt}.validate();
    }
    int dim() const override { return dim_; }
    Point lmo(const Point& g) const override { return lmo_linf(g, r_); }
    double diameter() const override { return 2.0 * r_ * std::sqrt(static_cast<double>(dim_)); }
    bool contains(const Point& p, double tol) const override {
        for (double v : p.coords)
            if (std::abs(v) > r_ + tol) return false;
        return true;
    }

  private:
    int dim_;
    double r_;
};

class SimplexOracle final : public LmoOracle {
  public:
    explicit SimplexOracle(int dim) : dim_(dim) {
        if (dim < 1) throw std::invalid_argument("SimplexOracle: dim must be >= 1");
    }
    int dim() const override { return dim_; }
    Point lmo(const Point& g) const override { return lmo_simplex(g); }
    double diameter() const override { return std::sqrt(2.0); }
    bool contains(const Point& p, double tol) const override {
        double s = 0.0;
        for (double v : p.coords) {
            if (v < -tol) return false;
            s += v;
        }
        return std::abs(s - 1.0) <= tol;
    }

  private:
    int dim_;
};

class NuclearBallOracle final : public LmoOracle {
  public:
    NuclearBallOracle(Shape shape, double delta, PowerIterConfig cfg = {})
        : shape_(shape), delta_(delta), cfg_(cfg) {
        FeasibleSetSpec{SetKind::NuclearBall, delta, shape.rows * shape.cols, shape}.validate();
    }
    int dim() const override { return shape_.rows * shape_.cols; }
    Point lmo(const Point& g) const override {
        Point shaped = g;
        if (!shaped.shape) shaped.shape = shape_;
        return lmo_nuclear(shaped, delta_, cfg_);
    }
    double diameter() const override { return 2.0 * delta_; }
    bool contains(const Point& p, double tol) const override {
        return nuclear_norm(p.coords, shape_.rows, shape_.cols) <= delta_ + tol;
    }
    const PowerIterConfig& power_config() const { return cfg_; }

  private:
    Shape shape_;
    double delta_;
    PowerIterConfig cfg_;
};

inline std::unique_ptr<LmoOracle> make_oracle(const FeasibleSetSpec& spec,
                                              PowerIterConfig pw = {}) {
    spec.validate();
    switch (spec.kind) {
        case SetKind::L1Ball: return std::make_unique<L1BallOracle>(spec.dim, spec.radius);
        case SetKind::L2Ball: return std::make_unique<L2BallOracle>(spec.dim, spec.radius);
        case SetKind::LInfBall: return std::make_unique<LInfBallOracle>(spec.dim, spec.radius);
        case SetKind::Simplex: return std::make_unique<SimplexOracle>(spec.dim);
        case SetKind::NuclearBall:
            return std::make_unique<NuclearBallOracle>(*spec.shape, spec.radius, pw);
    }
    throw std::logic_error("make_oracle: unreachable");
}

}  // namespace fw
