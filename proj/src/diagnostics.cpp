#include "rds/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "rds/errors.hpp"

namespace rds {

std::vector<TimedField> species_series(std::span<const Snapshot> snapshots, Species s) {
  std::vector<TimedField> out;
  out.reserve(snapshots.size());
  for (const auto& snap : snapshots) {
    const ScalarField& f = s == Species::U ? snap.u : (s == Species::V ? snap.v : snap.w);
    out.push_back({snap.t, f});
  }
  return out;
}

namespace {

std::vector<TimedField> sorted(std::span<const TimedField> samples) {
  std::vector<TimedField> out(samples.begin(), samples.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const TimedField& a, const TimedField& b) { return a.t < b.t; });
  return out;
}

}  // namespace

double hmp_ratio(std::span<const TimedField> samples_psi, std::span<const TimedField> samples_phi,
                 const Grid& g, double p) {
  if (!(p > 1.0)) throw ContractError("hmp_ratio: p must exceed 1");
  if (samples_psi.size() != samples_phi.size()) {
    throw ContractError("hmp_ratio: sample counts differ");
  }
  const auto psi = sorted(samples_psi);
  const auto phi = sorted(samples_phi);
  for (std::size_t k = 0; k < psi.size(); ++k) {
    if (psi[k].t != phi[k].t) throw ContractError("hmp_ratio: sample times are not aligned");
  }
  const double num = spacetime_norm(psi, g, p).value;
  const double den = 1.0 + spacetime_norm(phi, g, p).value;
  return num / den;
}

DualityReport duality_ratio(const RunResult& result, const Grid& g, const Params& p) {
  if (g.bc() != Boundary::Neumann) {
    throw ContractError("duality_ratio: only defined for Neumann runs");
  }
  if (result.snapshots.size() < 2) {
    throw ContractError("duality_ratio: need at least two stored snapshots");
  }

  const double d_lo = std::min({p.d1, p.d2, p.d3});
  const double d_hi = std::max({p.d1, p.d2, p.d3});
  DualityReport rep;
  rep.a_min = std::numeric_limits<double>::infinity();
  rep.a_max = -std::numeric_limits<double>::infinity();

  std::vector<TimedField> z_series;
  z_series.reserve(result.snapshots.size());
  for (const auto& s : result.snapshots) {
    ScalarField z(s.u.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      z[i] = s.u[i] + s.v[i] + 2.0 * s.w[i];
      const double a =
          z[i] > 0.0 ? (p.d1 * s.u[i] + p.d2 * s.v[i] + 2.0 * p.d3 * s.w[i]) / z[i] : p.d3;
      rep.a_min = std::min(rep.a_min, a);
      rep.a_max = std::max(rep.a_max, a);
    }
    z_series.push_back({s.t, std::move(z)});
  }
  std::stable_sort(z_series.begin(), z_series.end(),
                   [](const TimedField& a, const TimedField& b) { return a.t < b.t; });

  if (rep.a_min < d_lo - 1e-12 || rep.a_max > d_hi + 1e-12) {
    throw ContractError("duality_ratio: A left [min d_i, max d_i]");
  }
  const double z0 = norm_p(z_series.front().values, g, 2.0);
  if (!(z0 > 0.0)) throw DivisionDomainError("duality_ratio: Z0 vanishes");
  rep.ratio = spacetime_norm(z_series, g, 2.0).value / z0;
  return rep;
}

ComparisonSuprema comparison_suprema(const RunResult& result) {
  if (result.snapshots.empty()) throw ContractError("comparison_suprema: no snapshots");
  const Snapshot& s0 = result.snapshots.front();
  double z0 = 0.0, uw0 = 0.0, uv0 = 0.0;
  for (std::size_t i = 0; i < s0.u.size(); ++i) {
    z0 = std::max(z0, std::abs(s0.u[i] + s0.v[i] + 2.0 * s0.w[i]));
    uw0 = std::max(uw0, std::abs(s0.u[i] + s0.w[i]));
    uv0 = std::max(uv0, std::abs(s0.u[i] - s0.v[i]));
  }
  constexpr double kFloor = 1e-300;
  const RunExtrema& e = result.extrema;
  return {e.sup_z / std::max(z0, kFloor), e.sup_uw / std::max(uw0, kFloor),
          e.sup_uv / std::max(uv0, kFloor)};
}

}  // namespace rds
