#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fw {

/// Matrix layout attached to a flat coordinate vector. Element (i,j) lives at
/// coords[i*cols + j] (row-major).
struct Shape {
    int rows = 0;
    int cols = 0;

    friend bool operator==(const Shape& a, const Shape& b) {
        return a.rows == b.rows && a.cols == b.cols;
    }
};

/// Dense point in R^n. Doubles as an m-by-n matrix when `shape` is set;
/// all arithmetic below is shape-agnostic (Euclidean == Frobenius).
struct Point {
    std::vector<double> coords;
    std::optional<Shape> shape;

    Point() = default;
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}
    Point(std::vector<double> c, Shape s) : coords(std::move(c)), shape(s) {
        if (static_cast<std::size_t>(s.rows) * static_cast<std::size_t>(s.cols) !=
            coords.size()) {
            throw std::invalid_argument("Point: shape does not match coordinate count");
        }
    }

    static Point zeros(int n) { return Point(std::vector<double>(static_cast<std::size_t>(n), 0.0)); }

    static Point zeros(int rows, int cols) {
        return Point(std::vector<double>(static_cast<std::size_t>(rows) * cols, 0.0),
                     Shape{rows, cols});
    }

    static Point basis(int n, int i, double scale = 1.0) {
        Point p = zeros(n);
        p.coords.at(static_cast<std::size_t>(i)) = scale;
        return p;
    }

    int dim() const { return static_cast<int>(coords.size()); }

    double& at(int i, int j) {
        return coords[static_cast<std::size_t>(i) * shape->cols + j];
    }
    double at(int i, int j) const {
        return coords[static_cast<std::size_t>(i) * shape->cols + j];
    }

    double& operator[](std::size_t i) { return coords[i]; }
    double operator[](std::size_t i) const { return coords[i]; }

    bool all_finite() const {
        for (double v : coords)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

inline void require_same_dim(const Point& a, const Point& b, const char* who) {
    if (a.coords.size() != b.coords.size())
        throw std::invalid_argument(std::string(who) + ": dimension mismatch (" +
                                    std::to_string(a.coords.size()) + " vs " +
                                    std::to_string(b.coords.size()) + ")");
}

/// Euclidean inner product; Frobenius inner product for matrix-shaped points.
inline double inner(const Point& a, const Point& b) {
    require_same_dim(a, b, "inner");
    double s = 0.0;
    for (std::size_t i = 0; i < a.coords.size(); ++i) s += a.coords[i] * b.coords[i];
    return s;
}

/// Euclidean (Frobenius) norm.
inline double norm2(const Point& a) {
    double s = 0.0;
    for (double v : a.coords) s += v * v;
    return std::sqrt(s);
}

/// (1-alpha)*x + alpha*s. Requires alpha in [0,1]; keeps x's shape.
inline Point convex_combine(const Point& x, const Point& s, double alpha) {
    require_same_dim(x, s, "convex_combine");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("convex_combine: alpha outside [0,1]");
    Point out = x;
    for (std::size_t i = 0; i < x.coords.size(); ++i)
        out.coords[i] = (1.0 - alpha) * x.coords[i] + alpha * s.coords[i];
    return out;
}

/// a - b, keeping a's shape.
inline Point sub(const Point& a, const Point& b) {
    require_same_dim(a, b, "sub");
    Point out = a;
    for (std::size_t i = 0; i < a.coords.size(); ++i) out.coords[i] = a.coords[i] - b.coords[i];
    return out;
}

/// x + t*d, keeping x's shape.
inline Point add_scaled(const Point& x, double t, const Point& d) {
    require_same_dim(x, d, "add_scaled");
    Point out = x;
    for (std::size_t i = 0; i < x.coords.size(); ++i) out.coords[i] = x.coords[i] + t * d.coords[i];
    return out;
}

inline Point scale(const Point& a, double t) {
    Point out = a;
    for (double& v : out.coords) v *= t;
    return out;
}

}  // namespace fw
