#include "rds/norms.hpp"

#include <algorithm>
#include <cmath>

#include "rds/errors.hpp"

namespace rds {

double norm_p(std::span<const double> f, const Grid& g, double p) {
  g.check(f);
  if (!(p >= 1.0)) throw ContractError("norm_p: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : f) m = std::max(m, std::abs(x));
    return m;
  }
  double acc = 0.0;
  if (p == 1.0) {
    for (double x : f) acc += std::abs(x);
    return g.cell_measure() * acc;
  }
  if (p == 2.0) {
    for (double x : f) acc += x * x;
    return std::sqrt(g.cell_measure() * acc);
  }
  for (double x : f) acc += std::pow(std::abs(x), p);
  return std::pow(g.cell_measure() * acc, 1.0 / p);
}

double integral(std::span<const double> f, const Grid& g) {
  g.check(f);
  double acc = 0.0;
  for (double x : f) acc += x;
  return g.cell_measure() * acc;
}

SpaceTimeNorm spacetime_norm(std::span<const TimedField> samples, const Grid& g, double p) {
  if (samples.size() < 2) throw ContractError("spacetime_norm: need at least two samples");
  for (std::size_t k = 1; k < samples.size(); ++k) {
    if (samples[k].t < samples[k - 1].t) {
      throw ContractError("spacetime_norm: samples are not sorted by time");
    }
  }
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, norm_p(s.values, g, p));
    return {p, m};
  }
  double acc = 0.0;
  double prev = std::pow(norm_p(samples.front().values, g, p), p);
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double cur = std::pow(norm_p(samples[k].values, g, p), p);
    acc += 0.5 * (samples[k].t - samples[k - 1].t) * (prev + cur);
    prev = cur;
  }
  return {p, std::pow(acc, 1.0 / p)};
}

}  // namespace rds
