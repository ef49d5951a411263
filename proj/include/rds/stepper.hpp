#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "rds/grid.hpp"
#include "rds/kinetics.hpp"
#include "rds/record.hpp"

namespace rds {

struct State {
  double t = 0.0;
  double dt = 0.0;
  ScalarField u;
  ScalarField v;
  ScalarField w;
};

struct StepControl {
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double dt_max = 1e-2;
  double safety = 0.9;
  double blowup_threshold = 1e6;
  double sample_every = 0.1;

  void validate() const;
};

inline constexpr double kDtGrowth = 1.2;

/// 1e6 * max(1, largest initial concentration).
double default_blowup_threshold(const State& s);

enum class RunStatus { ReachedT, BlowUpSuspected, DtUnderflow };
enum class BlowupCheck { Ok, BlowUpSuspected };

std::string_view to_string(RunStatus s);

/// Largest values seen over every accepted step (initial state included).
struct RunExtrema {
  double sup_linf_total = 0.0;  // ||u||_inf + ||v||_inf + ||w||_inf
  double sup_z = 0.0;           // ||u + v + 2w||_inf
  double sup_uw = 0.0;          // ||u + w||_inf
  double sup_uv = 0.0;          // ||u - v||_inf
  double min_uvw = 0.0;         // smallest concentration anywhere
};

struct Snapshot {
  double t = 0.0;
  ScalarField u;
  ScalarField v;
  ScalarField w;
};

struct RunResult {
  State final_state;
  RunStatus status = RunStatus::ReachedT;
  double t_stop = 0.0;
  std::vector<DiagnosticsRecord> records;
  /// Field snapshots, first one is the initial state.
  std::vector<Snapshot> snapshots;
  RunExtrema extrema;
};

struct RunOptions {
  /// Defaults to mass_action(params) when empty.
  RateModel rate;
  /// Extra L^p norms stored in each record.
  std::vector<double> lp_orders;
  /// Snapshot cadence; 0 uses sample_every, a negative value disables snapshots.
  double snapshot_every = 0.0;
};

struct StepReport {
  State state;
  double dt_taken = 0.0;
  bool limited = false;
};

/// One reaction-then-diffusion step of size at most s.dt. The same rate is
/// applied to all species (u += dt R, v += dt R, w -= dt R), with dt shrunk so
/// no concentration loses more than `safety` of its value; then each species
/// takes one implicit diffusion step. Throws DtUnderflow when the limited
/// step falls below dt_min.
StepReport step_detailed(const State& s, const Params& p, const Grid& g, const StepControl& c,
                         const RateModel& rate);

/// step_detailed with mass-action kinetics. The returned state's dt is the
/// proposal for the next step: the limited step, or the taken step grown by
/// kDtGrowth (capped at dt_max) when no limiting occurred.
State step(const State& s, const Params& p, const Grid& g, const StepControl& c);

/// Thresholded blow-up test: sum of the three sup norms strictly above the cap.
/// Non-finite values also count as suspected blow-up.
BlowupCheck detect_blowup(const State& s, const StepControl& c);

/// Integrates to t_end, sampling diagnostics every c.sample_every (and at the
/// stop time). Stops early on suspected blow-up or dt underflow.
RunResult run(const State& s0, const Params& p, const Grid& g, const StepControl& c,
              double t_end, const RunOptions& options = {});

}  // namespace rds
