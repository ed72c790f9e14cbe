#pragma once

#include <optional>

#include "fw/point.hpp"

namespace fw {

/// Value and (sub)gradient of an objective at one point. The gradient always
/// has the same dimension and shape as the query point.
struct Eval {
    double value = 0.0;
    Point grad;
};

/// Convex objective contract: deterministic, side-effect-free evaluation.
class Objective {
  public:
    virtual ~Objective() = default;

    virtual int dim() const = 0;
    virtual Eval eval(const Point& p) const = 0;

    /// Optimal value over the feasible set, where analytically known.
    virtual std::optional<double> known_fstar() const { return std::nullopt; }
};

}  // namespace fw
