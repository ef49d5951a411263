#include "rds/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rds/errors.hpp"

namespace rds {

void Params::validate() const {
  const auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  const auto exponent = [](double x) { return x >= 1.0 && std::isfinite(x); };
  if (!positive(d1) || !positive(d2) || !positive(d3)) {
    throw ContractError("Params: diffusion coefficients must be positive");
  }
  if (!exponent(alpha) || !exponent(beta) || !exponent(gamma)) {
    throw ContractError("Params: exponents alpha, beta, gamma must be >= 1");
  }
  if (dim < 1) throw ContractError("Params: dim must be >= 1");
}

double power(double x, double a) {
  if (x <= 0.0) return 0.0;
  return std::pow(x, a);
}

double reaction_rate(double u, double v, double w, const Params& p) {
  if (u < 0.0 || v < 0.0 || w < 0.0) {
    throw ContractError("reaction_rate: concentrations must be nonnegative");
  }
  return power(w, p.gamma) - power(u, p.alpha) * power(v, p.beta);
}

RateModel mass_action(const Params& p) {
  return [alpha = p.alpha, beta = p.beta, gamma = p.gamma](double u, double v, double w) {
    return power(w, gamma) - power(u, alpha) * power(v, beta);
  };
}

RateModel surrogate_growth() {
  return [](double u, double, double) { return u * u; };
}

Equilibrium equilibrium(const Params& p, double m1, double m2) {
  if (!(m1 >= 0.0) || !std::isfinite(m1) || !std::isfinite(m2)) {
    throw ContractError("equilibrium: m1 must be finite and nonnegative");
  }
  if (std::abs(m2) > m1) {
    throw InfeasibleInvariants("equilibrium: |m2| = " + std::to_string(std::abs(m2)) +
                               " exceeds m1 = " + std::to_string(m1));
  }
  const auto state_at = [&](double w) {
    return Equilibrium{0.5 * (m1 - 2.0 * w + m2), 0.5 * (m1 - 2.0 * w - m2), w};
  };
  // g(w) = u^alpha v^beta - w^gamma is strictly decreasing on [0, (m1-|m2|)/2].
  const auto g = [&](double w) {
    const Equilibrium e = state_at(w);
    return power(e.u_bar, p.alpha) * power(e.v_bar, p.beta) - power(w, p.gamma);
  };

  double lo = 0.0;
  double hi = 0.5 * (m1 - std::abs(m2));
  if (hi <= 0.0) return state_at(0.0);
  // Bisect until the bracket stops shrinking: well below the 1e-13 target.
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double w = std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
  Equilibrium e = state_at(w);
  // u - v = m2 must hold exactly on the nonnegative side
  e.u_bar = std::max(e.u_bar, 0.0);
  e.v_bar = std::max(e.v_bar, 0.0);
  return e;
}

namespace {

Concentrations axpy(const Concentrations& y, double a, double rate) {
  return {y.u + a * rate, y.v + a * rate, y.w - a * rate};
}

}  // namespace

Concentrations ode_oracle(Concentrations y0, const Params& p, double T, double dt) {
  if (!(T > 0.0) || !(dt > 0.0) || dt > T) {
    throw ContractError("ode_oracle: need 0 < dt <= T");
  }
  if (y0.u < 0.0 || y0.v < 0.0 || y0.w < 0.0) {
    throw ContractError("ode_oracle: initial concentrations must be nonnegative");
  }
  const RateModel rate = mass_action(p);
  const auto f = [&](const Concentrations& y) { return rate(y.u, y.v, y.w); };

  const auto steps = static_cast<long>(std::ceil(T / dt - 1e-12));
  const double h = T / static_cast<double>(steps);
  Concentrations y = y0;
  for (long k = 0; k < steps; ++k) {
    const double k1 = f(y);
    const double k2 = f(axpy(y, 0.5 * h, k1));
    const double k3 = f(axpy(y, 0.5 * h, k2));
    const double k4 = f(axpy(y, h, k3));
    y = axpy(y, h / 6.0, k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (y.u < -1e-10 || y.v < -1e-10 || y.w < -1e-10) {
      throw OracleStepTooLarge("ode_oracle: negative concentration at step " +
                               std::to_string(k) + "; halve dt");
    }
  }
  return y;
}

}  // namespace rds
