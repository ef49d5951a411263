#pragma once

#include <array>
#include <map>
#include <span>

#include "rds/grid.hpp"

namespace rds {

/// Reference integrals of the initial data, used for drift measurements.
struct MassReference {
  double total = 0.0;     // integral of u0 + v0 + 2 w0
  double uv = 0.0;        // integral of u0 - v0
  double uv_scale = 0.0;  // integral of u0 + v0, the natural size of the u - v integral
};

/// One diagnostics sample taken along a run.
struct DiagnosticsRecord {
  double t = 0.0;
  double dt = 0.0;
  double linf_u = 0.0;
  double linf_v = 0.0;
  double linf_w = 0.0;
  double l1_mass = 0.0;    // h^N sum (u + v + 2w)
  double mass_drift = 0.0; // relative to the initial l1_mass
  double uv_drift = 0.0;   // |change of the u - v integral| / integral of (u0 + v0)
  double min_uvw = 0.0;
  /// p -> (||u||_p, ||v||_p, ||w||_p)
  std::map<double, std::array<double, 3>> lp_samples;
};

MassReference mass_reference(std::span<const double> u, std::span<const double> v,
                             std::span<const double> w, const Grid& g);

DiagnosticsRecord make_record(double t, double dt, std::span<const double> u,
                              std::span<const double> v, std::span<const double> w,
                              const Grid& g, const MassReference& ref,
                              std::span<const double> lp_orders = {});

}  // namespace rds
