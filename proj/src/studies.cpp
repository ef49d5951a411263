#include "rds/studies.hpp"

#include <algorithm>
#include <cmath>

#include "rds/diagnostics.hpp"
#include "rds/errors.hpp"

namespace rds {

std::vector<double> smoothing_times() {
  std::vector<double> ts;
  for (int k = 0; k <= 12; ++k) ts.push_back(std::pow(10.0, -k / 4.0));
  return ts;
}

ScalarField center_spike(const Grid& g) {
  ScalarField y(g.cell_count(), 0.0);
  const std::size_t n = static_cast<std::size_t>(g.cells_per_axis());
  const std::size_t mid = n / 2;
  y[g.dimension() == 1 ? mid : mid * n + mid] = 1.0;
  return y;
}

SmoothingCheck smoothing_check(const Grid& g, const Params& p, int substeps) {
  SmoothingCheck out;
  out.ok = true;
  const ScalarField y = center_spike(g);
  for (double d : {p.d1, p.d2, p.d3}) {
    double first_decade = 0.0;
    double last_decade = 0.0;
    for (double t : smoothing_times()) {
      const double r = smoothing_ratio(y, g, d, t, 1.0, kInf, substeps);
      out.samples.push_back({d, t, r});
      if (!std::isfinite(r)) out.ok = false;
      if (t <= 0.1 * (1.0 + 1e-12) && t >= 1e-2 * (1.0 - 1e-12)) {
        first_decade = std::max(first_decade, r);
      }
      if (t <= 1e-2 * (1.0 + 1e-12)) last_decade = std::max(last_decade, r);
    }
    if (!(last_decade <= kSmoothingGrowth * first_decade)) out.ok = false;
  }
  return out;
}

double relative_difference(double a, double b) {
  const double delta = std::abs(b - a);
  if (delta == 0.0) return 0.0;
  return delta / std::abs(a);
}

bool LemmaReport::passed() const { return hmp_stable && duality_stable && smoothing.ok; }

LemmaReport verify_lemmas(const ScenarioConfig& cfg) {
  LemmaReport rep;
  rep.coarse_cells = cfg.grid.cells_per_axis;
  rep.fine_cells = 2 * cfg.grid.cells_per_axis;

  RunOptions opts;
  opts.snapshot_every = cfg.control.sample_every;

  ScenarioConfig fine_cfg = cfg;
  fine_cfg.grid.cells_per_axis = rep.fine_cells;

  const Grid g_coarse = cfg.grid.make();
  const Grid g_fine = fine_cfg.grid.make();
  const RunResult coarse = run_scenario(cfg, opts);
  const RunResult fine = run_scenario(fine_cfg, opts);
  rep.coarse_status = coarse.status;
  rep.fine_status = fine.status;
  if (coarse.status != RunStatus::ReachedT || fine.status != RunStatus::ReachedT) return rep;

  const auto hmp = [](const RunResult& r, const Grid& g, Species s) {
    return hmp_ratio(species_series(r.snapshots, s), species_series(r.snapshots, Species::W), g,
                     2.0);
  };
  rep.hmp_uw_coarse = hmp(coarse, g_coarse, Species::U);
  rep.hmp_uw_fine = hmp(fine, g_fine, Species::U);
  rep.hmp_vw_coarse = hmp(coarse, g_coarse, Species::V);
  rep.hmp_vw_fine = hmp(fine, g_fine, Species::V);
  rep.hmp_stable = relative_difference(rep.hmp_uw_coarse, rep.hmp_uw_fine) <= kHmpBand &&
                   relative_difference(rep.hmp_vw_coarse, rep.hmp_vw_fine) <= kHmpBand;

  if (cfg.grid.bc == Boundary::Neumann) {
    rep.duality_coarse = duality_ratio(coarse, g_coarse, cfg.params).ratio;
    rep.duality_fine = duality_ratio(fine, g_fine, cfg.params).ratio;
    rep.duality_stable = relative_difference(*rep.duality_coarse, *rep.duality_fine) <= kDualityBand;
  } else {
    rep.duality_stable = true;
  }

  rep.smoothing = smoothing_check(g_coarse, cfg.params);
  return rep;
}

ScalarField restrict_to_coarse(std::span<const double> fine, const Grid& fine_grid) {
  fine_grid.check(fine);
  const int nf = fine_grid.cells_per_axis();
  if (nf % 2 != 0) throw ContractError("restrict_to_coarse: odd fine resolution");
  const int nc = nf / 2;
  if (fine_grid.dimension() == 1) {
    ScalarField out(nc);
    for (int i = 0; i < nc; ++i) out[i] = 0.5 * (fine[2 * i] + fine[2 * i + 1]);
    return out;
  }
  ScalarField out(static_cast<std::size_t>(nc) * nc);
  for (int j = 0; j < nc; ++j) {
    for (int i = 0; i < nc; ++i) {
      const auto at = [&](int jj, int ii) { return fine[static_cast<std::size_t>(jj) * nf + ii]; };
      out[static_cast<std::size_t>(j) * nc + i] =
          0.25 * (at(2 * j, 2 * i) + at(2 * j, 2 * i + 1) + at(2 * j + 1, 2 * i) +
                  at(2 * j + 1, 2 * i + 1));
    }
  }
  return out;
}

namespace {

double max_difference(const State& a, const State& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.u.size(); ++i) {
    m = std::max({m, std::abs(a.u[i] - b.u[i]), std::abs(a.v[i] - b.v[i]),
                  std::abs(a.w[i] - b.w[i])});
  }
  return m;
}

State restrict_state(const State& s, const Grid& fine_grid) {
  State out = s;
  out.u = restrict_to_coarse(s.u, fine_grid);
  out.v = restrict_to_coarse(s.v, fine_grid);
  out.w = restrict_to_coarse(s.w, fine_grid);
  return out;
}

State fixed_step_final(ScenarioConfig cfg, double dt, int cells) {
  cfg.grid.cells_per_axis = cells;
  cfg.control.dt_init = dt;
  cfg.control.dt_max = dt;
  cfg.control.dt_min = std::min(cfg.control.dt_min, dt);
  cfg.control.sample_every = cfg.t_end;
  RunOptions opts;
  opts.snapshot_every = -1.0;
  opts.lp_orders = {};
  RunResult r = run_scenario(cfg, opts);
  if (r.status != RunStatus::ReachedT) {
    throw ContractError("convergence run stopped early with status " +
                        std::string(to_string(r.status)));
  }
  return std::move(r.final_state);
}

}  // namespace

ConvergenceReport convergence_study(const ScenarioConfig& cfg) {
  ConvergenceReport rep;
  rep.dt = cfg.control.dt_init;
  rep.smooth_data = is_smooth(cfg.u) && is_smooth(cfg.v) && is_smooth(cfg.w);
  const int n = cfg.grid.cells_per_axis;

  const State t1 = fixed_step_final(cfg, rep.dt, n);
  const State t2 = fixed_step_final(cfg, rep.dt / 2, n);
  const State t4 = fixed_step_final(cfg, rep.dt / 4, n);
  rep.temporal_errors[0] = max_difference(t1, t2);
  rep.temporal_errors[1] = max_difference(t2, t4);

  ScenarioConfig fine = cfg;
  fine.grid.cells_per_axis = 2 * n;
  ScenarioConfig finest = cfg;
  finest.grid.cells_per_axis = 4 * n;
  const State x1 = t1;
  const State x2 = fixed_step_final(cfg, rep.dt, 2 * n);
  const State x4 = fixed_step_final(cfg, rep.dt, 4 * n);
  rep.spatial_errors[0] = max_difference(x1, restrict_state(x2, fine.grid.make()));
  rep.spatial_errors[1] = max_difference(x2, restrict_state(x4, finest.grid.make()));

  double scale = 1.0;
  for (const auto* f : {&t1.u, &t1.v, &t1.w}) {
    for (double x : *f) scale = std::max(scale, std::abs(x));
  }
  const double tiny = 1e-12 * scale;
  if (rep.temporal_errors[0] <= tiny || rep.spatial_errors[0] <= tiny ||
      rep.temporal_errors[1] <= tiny || rep.spatial_errors[1] <= tiny) {
    rep.degenerate = true;
    return rep;
  }
  rep.temporal_order = std::log2(rep.temporal_errors[0] / rep.temporal_errors[1]);
  rep.spatial_order = std::log2(rep.spatial_errors[0] / rep.spatial_errors[1]);
  return rep;
}

}  // namespace rds
