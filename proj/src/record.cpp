#include "rds/record.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rds/norms.hpp"

namespace rds {

MassReference mass_reference(std::span<const double> u, std::span<const double> v,
                             std::span<const double> w, const Grid& g) {
  g.check(u);
  g.check(v);
  g.check(w);
  double total = 0.0;
  double diff = 0.0;
  double sum_uv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    total += u[i] + v[i] + 2.0 * w[i];
    diff += u[i] - v[i];
    sum_uv += u[i] + v[i];
  }
  const double m = g.cell_measure();
  return {m * total, m * diff, m * sum_uv};
}

namespace {

double relative_change(double now, double ref, double scale) {
  const double delta = std::abs(now - ref);
  return scale > 0.0 ? delta / scale : delta;
}

}  // namespace

DiagnosticsRecord make_record(double t, double dt, std::span<const double> u,
                              std::span<const double> v, std::span<const double> w,
                              const Grid& g, const MassReference& ref,
                              std::span<const double> lp_orders) {
  DiagnosticsRecord r;
  r.t = t;
  r.dt = dt;
  r.linf_u = norm_p(u, g, kInf);
  r.linf_v = norm_p(v, g, kInf);
  r.linf_w = norm_p(w, g, kInf);

  const MassReference now = mass_reference(u, v, w, g);
  r.l1_mass = now.total;
  r.mass_drift = relative_change(now.total, ref.total, std::abs(ref.total));
  r.uv_drift = relative_change(now.uv, ref.uv, ref.uv_scale);

  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < u.size(); ++i) lo = std::min({lo, u[i], v[i], w[i]});
  r.min_uvw = lo;

  for (double p : lp_orders) {
    r.lp_samples[p] = {norm_p(u, g, p), norm_p(v, g, p), norm_p(w, g, p)};
  }
  return r;
}

}  // namespace rds
