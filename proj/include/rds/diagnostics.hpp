#pragma once

#include <span>
#include <vector>

#include "rds/grid.hpp"
#include "rds/kinetics.hpp"
#include "rds/norms.hpp"
#include "rds/stepper.hpp"

namespace rds {

/// Which species a snapshot series is extracted for.
enum class Species { U, V, W };

std::vector<TimedField> species_series(std::span<const Snapshot> snapshots, Species s);

/// ||psi||_{L^p(Q_t)} / (1 + ||phi||_{L^p(Q_t)}) for a pair exchanging mass
/// with opposite-sign sources, here psi = u (or v) and phi = w. Samples may
/// come in any order; they are sorted by time and must share the same times.
double hmp_ratio(std::span<const TimedField> samples_psi, std::span<const TimedField> samples_phi,
                 const Grid& g, double p);

struct DualityReport {
  double ratio = 0.0;  // ||Z||_{L^2(Q_T)} / ||Z0||_{L^2}
  double a_min = 0.0;
  double a_max = 0.0;
};

/// Duality check for Z = u + v + 2w with A = (d1 u + d2 v + 2 d3 w) / Z
/// (A := d3 where Z = 0). Requires a Neumann grid and at least two
/// snapshots. Throws ContractError if A leaves [min d_i, max d_i].
DualityReport duality_ratio(const RunResult& result, const Grid& g, const Params& p);

struct ComparisonSuprema {
  double r_total = 0.0;  // sup ||u+v+2w||_inf / ||Z0||_inf
  double r_uw = 0.0;     // sup ||u+w||_inf / ||u0+w0||_inf
  double r_uv = 0.0;     // sup ||u-v||_inf / max(||u0-v0||_inf, 1e-300)
};

/// Maximum-principle ratios, using suprema tracked over every step.
ComparisonSuprema comparison_suprema(const RunResult& result);

}  // namespace rds
