#pragma once

#include <string>
#include <string_view>

#include "rds/kinetics.hpp"

namespace rds {

enum class Regime {
  GlobalEqualDiffusion,
  GlobalTheorem1,
  GlobalTheorem2i,
  GlobalTheorem2ii,
  GlobalTheorem3,
  Open,
};

std::string_view to_string(Regime r);

struct RegimeVerdict {
  Regime tag = Regime::Open;
  std::string rationale;
  double gamma_star = 0.0;  // (N + 6) / (N + 2)
};

/// (N + 6) / (N + 2).
double gamma_star(int dim);

/// Relative equality used for diffusion coefficients and exponents (1e-12).
bool nearly_equal(double a, double b);

/// First matching hypothesis, in order: equal diffusion, alpha + beta < gamma,
/// d1 = d3 or d2 = d3, d1 = d2 with alpha + beta != gamma,
/// gamma < (N + 6) / (N + 2); otherwise Open.
RegimeVerdict classify(const Params& p);

}  // namespace rds
