#pragma once

#include <functional>

namespace rds {

/// Diffusion coefficients, reaction exponents, and the spatial dimension used
/// for regime classification.
struct Params {
  double d1 = 1.0;
  double d2 = 1.0;
  double d3 = 1.0;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  int dim = 1;

  /// Throws ContractError unless d_i > 0, exponents >= 1 and dim >= 1.
  void validate() const;
};

/// x^a for a >= 1 with 0^a = 0 (and any non-positive x mapped to 0).
double power(double x, double a);

/// Net rate of alpha U + beta V <=> gamma W: R = w^gamma - u^alpha v^beta.
/// Species u and v gain +R, w gains -R.
double reaction_rate(double u, double v, double w, const Params& p);

/// Pointwise rate R(u, v, w). Applied with signs (+R, +R, -R).
using RateModel = std::function<double(double u, double v, double w)>;

/// Mass-action rate for the given exponents.
RateModel mass_action(const Params& p);

/// Test surrogate R = u^2: u grows like u' = u^2 and blows up in finite time
/// while w is drained. Used to exercise the blow-up detector.
RateModel surrogate_growth();

/// Spatially homogeneous steady state.
struct Equilibrium {
  double u_bar = 0.0;
  double v_bar = 0.0;
  double w_bar = 0.0;
};

/// The unique nonnegative (u, v, w) with u - v = m2, u + v + 2w = m1 and
/// u^alpha v^beta = w^gamma. Throws InfeasibleInvariants when |m2| > m1.
Equilibrium equilibrium(const Params& p, double m1, double m2);

struct Concentrations {
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
};

/// Well-mixed limit u' = R, v' = R, w' = -R integrated with classical RK4.
/// The step is adjusted down so that an integer number of steps lands on T.
/// Throws OracleStepTooLarge if a component drops below -1e-10.
Concentrations ode_oracle(Concentrations y0, const Params& p, double T, double dt);

}  // namespace rds
