#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rds/record.hpp"
#include "rds/scenario.hpp"

namespace rds {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitBlowUp = 2,
  kExitDtUnderflow = 3,
  kExitOutOfBand = 4,
};

int exit_code_for(RunStatus s);

/// %.17g: round-trips every double.
std::string format_number(double x);

inline constexpr const char* kSeriesHeader =
    "t,dt,linf_u,linf_v,linf_w,l1_mass,mass_drift,uv_drift,min_uvw";

void write_series_csv(std::ostream& out, std::span<const DiagnosticsRecord> records);

/// `# n=<n> dim=<dim>`, `# t=<t>`, then one value per line, row-major.
void write_snapshot_csv(std::ostream& out, const Grid& g, double t, std::span<const double> f);

/// Subcommands. Each returns the process exit code; `out` receives the
/// summary lines (suppressed by `quiet`), `err` receives diagnostics.
struct CommandIo {
  std::ostream& out;
  std::ostream& err;
  bool quiet = false;
};

int cmd_run(const std::filesystem::path& config, CommandIo io);
int cmd_classify(const std::filesystem::path& config, CommandIo io);
int cmd_verify_lemmas(const std::filesystem::path& config, CommandIo io);
int cmd_sweep(const std::filesystem::path& config, CommandIo io);
int cmd_convergence(const std::filesystem::path& config, CommandIo io);

/// Parsed sweep description.
struct SweepConfig {
  std::vector<double> alpha, beta, gamma, d1, d2, d3;
  int dim = 1;
  bool run = false;
  std::optional<ScenarioConfig> base;
  std::string output_path;  // empty: write to the command's output stream
  int threads = 0;          // 0: hardware concurrency
  std::filesystem::path base_dir;
};

SweepConfig parse_sweep(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

struct SweepRow {
  Params params;
  std::string verdict;
  std::string status;  // RunStatus name or NotRun
  double sup_linf_total = 0.0;
  double t_stop = 0.0;
};

/// Cartesian product in declared order (alpha outermost, d3 innermost).
/// Tuples may be evaluated concurrently; rows come back in that order.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

inline constexpr const char* kSweepHeader =
    "alpha,beta,gamma,d1,d2,d3,verdict,status,sup_linf_total,t_stop";

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace rds
