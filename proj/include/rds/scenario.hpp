#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "rds/grid.hpp"
#include "rds/kinetics.hpp"
#include "rds/stepper.hpp"

namespace rds {

namespace initial {

struct Constant {
  double value = 0.0;
};
/// base + amplitude * prod_k cos(mode * pi * x_k / L); |amplitude| <= base.
struct CosineBump {
  double base = 1.0;
  double amplitude = 0.0;
  int mode = 1;
};
/// low on cells with even index sum, high on odd.
struct Checkerboard {
  double low = 0.0;
  double high = 1.0;
};
/// Row-major cell values read from a text file (snapshot layout accepted).
struct File {
  std::string path;
};

}  // namespace initial

using InitialSpec =
    std::variant<initial::Constant, initial::CosineBump, initial::Checkerboard, initial::File>;

enum class KineticsModel { MassAction, SurrogateGrowth };

struct GridSpec {
  int dimension = 1;
  int cells_per_axis = 64;
  double length = 1.0;
  Boundary bc = Boundary::Neumann;

  Grid make() const { return Grid(dimension, cells_per_axis, length, bc); }
};

struct ControlSpec {
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double dt_max = 1e-2;
  double safety = 0.9;
  /// Empty: 1e6 * max(1, largest initial value).
  std::optional<double> blowup_threshold;
  double sample_every = 0.1;
};

struct OutputSpec {
  std::string series_path;  // empty: no series file
  std::optional<std::string> snapshots_path;  // directory for field snapshots
  double snapshot_every = 0.0;                // 0: same cadence as samples
  std::vector<double> lp_orders;
};

struct ScenarioConfig {
  Params params;
  GridSpec grid;
  InitialSpec u = initial::Constant{1.0};
  InitialSpec v = initial::Constant{1.0};
  InitialSpec w = initial::Constant{1.0};
  double t_end = 1.0;
  ControlSpec control;
  OutputSpec outputs;
  KineticsModel kinetics = KineticsModel::MassAction;
  /// Relative file paths are resolved against this directory.
  std::filesystem::path base_dir;
};

/// Strict parse: unknown keys, wrong types and invalid values throw ConfigError.
ScenarioConfig parse_scenario(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Normalized form: every default made explicit.
nlohmann::json to_json(const ScenarioConfig& cfg);

/// Params as a JSON object (shared by scenario and sweep output).
Params parse_params(const nlohmann::json& j, int default_dim);

ScalarField build_initial(const InitialSpec& spec, const Grid& g,
                          const std::filesystem::path& base_dir = {});

/// Initial state on the given grid (defaults to the configured one).
State initial_state(const ScenarioConfig& cfg, const Grid& g);
StepControl step_control(const ScenarioConfig& cfg, const State& s0);

/// Whether the data is smooth enough for order-of-accuracy studies.
bool is_smooth(const InitialSpec& spec);

/// Builds the grid, initial data and controls, then integrates to t_end.
RunResult run_scenario(const ScenarioConfig& cfg, const RunOptions& extra = {});

}  // namespace rds
