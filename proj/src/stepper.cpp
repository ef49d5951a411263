#include "rds/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rds/errors.hpp"
#include "rds/norms.hpp"

namespace rds {

void StepControl::validate() const {
  if (!(dt_min > 0.0) || !(dt_init > 0.0) || !(dt_max > 0.0)) {
    throw ContractError("StepControl: step sizes must be positive");
  }
  if (!(dt_min <= dt_init && dt_init <= dt_max)) {
    throw ContractError("StepControl: need dt_min <= dt_init <= dt_max");
  }
  if (!(safety > 0.0 && safety < 1.0)) throw ContractError("StepControl: safety must be in (0,1)");
  if (!(blowup_threshold > 0.0)) throw ContractError("StepControl: blowup_threshold must be positive");
  if (!(sample_every > 0.0)) throw ContractError("StepControl: sample_every must be positive");
}

double default_blowup_threshold(const State& s) {
  double m = 0.0;
  for (const auto* f : {&s.u, &s.v, &s.w}) {
    for (double x : *f) m = std::max(m, std::abs(x));
  }
  return 1e6 * std::max(1.0, m);
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::ReachedT: return "ReachedT";
    case RunStatus::BlowUpSuspected: return "BlowUpSuspected";
    case RunStatus::DtUnderflow: return "DtUnderflow";
  }
  return "?";
}

StepReport step_detailed(const State& s, const Params& p, const Grid& g, const StepControl& c,
                         const RateModel& rate) {
  g.check(s.u);
  g.check(s.v);
  g.check(s.w);
  if (!(s.dt > 0.0)) throw ContractError("step: dt must be positive");

  const std::size_t n = s.u.size();
  std::vector<double> r(n);
  double dt = s.dt;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = s.u[i];
    const double v = s.v[i];
    const double w = s.w[i];
    r[i] = rate(u, v, w);
    if (r[i] < 0.0) {
      dt = std::min(dt, c.safety * std::min(u, v) / -r[i]);
    } else if (r[i] > 0.0) {
      dt = std::min(dt, c.safety * w / r[i]);
    } else if (std::isnan(r[i])) {
      dt = 0.0;
    }
  }
  const bool limited = dt < s.dt;
  if (limited && !(dt >= c.dt_min)) throw DtUnderflow(s.t, dt);

  StepReport out;
  out.dt_taken = dt;
  out.limited = limited;
  State& next = out.state;
  next.t = s.t + dt;
  next.u = s.u;
  next.v = s.v;
  next.w = s.w;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = dt * r[i];
    next.u[i] += a;
    next.v[i] += a;
    next.w[i] -= a;
  }
  next.u = heat_step_implicit(next.u, g, p.d1, dt);
  next.v = heat_step_implicit(next.v, g, p.d2, dt);
  next.w = heat_step_implicit(next.w, g, p.d3, dt);
  next.dt = limited ? dt : std::min(c.dt_max, kDtGrowth * dt);
  return out;
}

State step(const State& s, const Params& p, const Grid& g, const StepControl& c) {
  return step_detailed(s, p, g, c, mass_action(p)).state;
}

BlowupCheck detect_blowup(const State& s, const StepControl& c) {
  double total = 0.0;
  for (const auto* f : {&s.u, &s.v, &s.w}) {
    double m = 0.0;
    for (double x : *f) {
      if (!std::isfinite(x)) return BlowupCheck::BlowUpSuspected;
      m = std::max(m, std::abs(x));
    }
    total += m;
  }
  return total > c.blowup_threshold ? BlowupCheck::BlowUpSuspected : BlowupCheck::Ok;
}

namespace {

void update_extrema(RunExtrema& e, const State& s) {
  double lu = 0.0, lv = 0.0, lw = 0.0, z = 0.0, uw = 0.0, uv = 0.0;
  double lo = e.min_uvw;
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    const double u = s.u[i], v = s.v[i], w = s.w[i];
    lu = std::max(lu, std::abs(u));
    lv = std::max(lv, std::abs(v));
    lw = std::max(lw, std::abs(w));
    z = std::max(z, std::abs(u + v + 2.0 * w));
    uw = std::max(uw, std::abs(u + w));
    uv = std::max(uv, std::abs(u - v));
    lo = std::min({lo, u, v, w});
  }
  e.sup_linf_total = std::max(e.sup_linf_total, lu + lv + lw);
  e.sup_z = std::max(e.sup_z, z);
  e.sup_uw = std::max(e.sup_uw, uw);
  e.sup_uv = std::max(e.sup_uv, uv);
  e.min_uvw = lo;
}

// Event times t0 + k * every, evaluated by multiplication so they do not drift.
class Cadence {
 public:
  Cadence(double t0, double every, double t_end) : t0_(t0), every_(every), t_end_(t_end) {}

  bool enabled() const { return every_ > 0.0; }
  double next() const {
    if (!enabled()) return std::numeric_limits<double>::infinity();
    return std::min(t_end_, t0_ + every_ * static_cast<double>(k_));
  }
  bool due(double t) const { return enabled() && t >= next(); }
  void advance(double t) {
    while (enabled() && t0_ + every_ * static_cast<double>(k_) <= t) ++k_;
  }

 private:
  double t0_;
  double every_;
  double t_end_;
  long k_ = 1;
};

}  // namespace

RunResult run(const State& s0, const Params& p, const Grid& g, const StepControl& c,
              double t_end, const RunOptions& options) {
  p.validate();
  c.validate();
  g.check(s0.u);
  g.check(s0.v);
  g.check(s0.w);
  if (!(t_end > s0.t)) throw ContractError("run: t_end must exceed the initial time");
  for (const auto* f : {&s0.u, &s0.v, &s0.w}) {
    for (double x : *f) {
      if (!(x >= 0.0) || !std::isfinite(x)) {
        throw ContractError("run: initial concentrations must be finite and nonnegative");
      }
    }
  }

  const RateModel rate = options.rate ? options.rate : mass_action(p);
  const MassReference ref = mass_reference(s0.u, s0.v, s0.w, g);
  const double snapshot_every =
      options.snapshot_every == 0.0 ? c.sample_every : options.snapshot_every;

  RunResult result;
  State s = s0;
  double dt_proposal = std::clamp(s0.dt > 0.0 ? s0.dt : c.dt_init, c.dt_min, c.dt_max);
  s.dt = dt_proposal;

  auto record = [&](double last_dt) {
    result.records.push_back(make_record(s.t, last_dt, s.u, s.v, s.w, g, ref, options.lp_orders));
  };
  auto snapshot = [&] { result.snapshots.push_back({s.t, s.u, s.v, s.w}); };

  Cadence samples(s0.t, c.sample_every, t_end);
  Cadence snaps(s0.t, snapshot_every, t_end);

  result.extrema.min_uvw = std::numeric_limits<double>::infinity();
  update_extrema(result.extrema, s);
  record(dt_proposal);
  if (snaps.enabled()) snapshot();

  result.status = RunStatus::ReachedT;
  if (detect_blowup(s, c) == BlowupCheck::BlowUpSuspected) {
    result.status = RunStatus::BlowUpSuspected;
  }

  double last_dt = dt_proposal;
  const double t_eps = 1e-12 * std::max(1.0, std::abs(t_end));
  while (result.status == RunStatus::ReachedT && s.t < t_end) {
    const double target = std::min({samples.next(), snaps.next(), t_end});
    const double remaining = target - s.t;
    if (remaining <= t_eps) {
      s.t = target;
    } else {
      const bool capped = remaining < dt_proposal;
      State trial = s;
      trial.dt = capped ? remaining : dt_proposal;
      StepReport rep;
      try {
        rep = step_detailed(trial, p, g, c, rate);
      } catch (const DtUnderflow&) {
        result.status = RunStatus::DtUnderflow;
        break;
      }
      s = std::move(rep.state);
      last_dt = rep.dt_taken;
      if (!rep.limited && capped) s.t = target;
      if (!rep.limited && !capped && std::abs(s.t - target) <= t_eps) s.t = target;
      if (rep.limited) {
        dt_proposal = rep.dt_taken;
      } else if (!capped) {
        dt_proposal = std::min(c.dt_max, kDtGrowth * dt_proposal);
      }
      update_extrema(result.extrema, s);
      if (detect_blowup(s, c) == BlowupCheck::BlowUpSuspected) {
        result.status = RunStatus::BlowUpSuspected;
        break;
      }
    }
    if (samples.due(s.t)) {
      record(last_dt);
      samples.advance(s.t);
    }
    if (snaps.due(s.t)) {
      snapshot();
      snaps.advance(s.t);
    }
  }

  if (result.status == RunStatus::ReachedT) {
    s.t = t_end;
    result.t_stop = t_end;
  } else {
    result.t_stop = s.t;
    if (result.records.back().t != s.t) record(last_dt);
    if (snaps.enabled() && result.snapshots.back().t != s.t) snapshot();
  }
  s.dt = dt_proposal;
  result.final_state = std::move(s);
  return result;
}

}  // namespace rds
