#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "rds/grid.hpp"

namespace rds {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// (h^N sum |f|^p)^{1/p}, or max |f| for p = infinity. Throws for p < 1.
double norm_p(std::span<const double> f, const Grid& g, double p);

/// h^N sum f (signed midpoint integral).
double integral(std::span<const double> f, const Grid& g);

/// A time-stamped field sample.
struct TimedField {
  double t = 0.0;
  ScalarField values;
};

/// L^p(Q_T) norm computed from sampled snapshots.
struct SpaceTimeNorm {
  double p = 1.0;
  double value = 0.0;
};

/// Trapezoid in time of ||f(t)||_p^p, then the 1/p root. For p = infinity
/// the largest snapshot sup norm is returned. Samples must be sorted by time
/// and there must be at least two.
SpaceTimeNorm spacetime_norm(std::span<const TimedField> samples, const Grid& g, double p);

}  // namespace rds
