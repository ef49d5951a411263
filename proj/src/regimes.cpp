#include "rds/regimes.hpp"

#include <algorithm>
#include <cmath>

namespace rds {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::GlobalEqualDiffusion: return "GlobalEqualDiffusion";
    case Regime::GlobalTheorem1: return "GlobalTheorem1";
    case Regime::GlobalTheorem2i: return "GlobalTheorem2i";
    case Regime::GlobalTheorem2ii: return "GlobalTheorem2ii";
    case Regime::GlobalTheorem3: return "GlobalTheorem3";
    case Regime::Open: return "Open";
  }
  return "?";
}

double gamma_star(int dim) { return (dim + 6.0) / (dim + 2.0); }

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

RegimeVerdict classify(const Params& p) {
  p.validate();
  const double gs = gamma_star(p.dim);
  const double ab = p.alpha + p.beta;
  const bool sum_equals_gamma = nearly_equal(ab, p.gamma);

  if (nearly_equal(p.d1, p.d2) && nearly_equal(p.d2, p.d3)) {
    return {Regime::GlobalEqualDiffusion, "d1=d2=d3", gs};
  }
  if (ab < p.gamma && !sum_equals_gamma) {
    return {Regime::GlobalTheorem1, "alpha+beta<gamma", gs};
  }
  if (nearly_equal(p.d1, p.d3) || nearly_equal(p.d2, p.d3)) {
    return {Regime::GlobalTheorem2i,
            nearly_equal(p.d1, p.d3) ? "d1=d3" : "d2=d3", gs};
  }
  if (nearly_equal(p.d1, p.d2) && !sum_equals_gamma) {
    return {Regime::GlobalTheorem2ii, "d1=d2 and alpha+beta!=gamma", gs};
  }
  if (p.gamma < gs && !nearly_equal(p.gamma, gs)) {
    return {Regime::GlobalTheorem3, "1<=gamma<(N+6)/(N+2)", gs};
  }
  if (nearly_equal(p.d1, p.d2)) {
    return {Regime::Open, "d1=d2 with alpha+beta=gamma", gs};
  }
  return {Regime::Open, "(N+6)/(N+2)<=gamma<=alpha+beta with distinct diffusions", gs};
}

}  // namespace rds
