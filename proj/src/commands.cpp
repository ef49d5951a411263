#include "rds/commands.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <thread>

#include "rds/errors.hpp"
#include "rds/regimes.hpp"
#include "rds/studies.hpp"

namespace rds {

using nlohmann::json;

int exit_code_for(RunStatus s) {
  switch (s) {
    case RunStatus::ReachedT: return kExitOk;
    case RunStatus::BlowUpSuspected: return kExitBlowUp;
    case RunStatus::DtUnderflow: return kExitDtUnderflow;
  }
  return kExitConfigError;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_series_csv(std::ostream& out, std::span<const DiagnosticsRecord> records) {
  out << kSeriesHeader << '\n';
  for (const auto& r : records) {
    out << format_number(r.t) << ',' << format_number(r.dt) << ',' << format_number(r.linf_u)
        << ',' << format_number(r.linf_v) << ',' << format_number(r.linf_w) << ','
        << format_number(r.l1_mass) << ',' << format_number(r.mass_drift) << ','
        << format_number(r.uv_drift) << ',' << format_number(r.min_uvw) << '\n';
  }
}

void write_snapshot_csv(std::ostream& out, const Grid& g, double t, std::span<const double> f) {
  g.check(f);
  out << "# n=" << g.cells_per_axis() << " dim=" << g.dimension() << '\n';
  out << "# t=" << format_number(t) << '\n';
  for (double x : f) out << format_number(x) << '\n';
}

namespace {

std::filesystem::path output_path(const ScenarioConfig& cfg, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !cfg.base_dir.empty() ? cfg.base_dir / path : path;
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  return f;
}

// Shared error handling: config problems map to exit code 1.
template <typename F>
int guarded(CommandIo io, F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    io.err << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
  }
  return kExitConfigError;
}

void write_snapshots(const ScenarioConfig& cfg, const Grid& g, const RunResult& r) {
  const auto dir = output_path(cfg, *cfg.outputs.snapshots_path);
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < r.snapshots.size(); ++k) {
    const Snapshot& s = r.snapshots[k];
    char suffix[32];
    std::snprintf(suffix, sizeof suffix, "_%06zu.csv", k);
    for (const auto& [name, field] :
         {std::pair{"u", &s.u}, std::pair{"v", &s.v}, std::pair{"w", &s.w}}) {
      auto f = open_output(dir / (std::string(name) + suffix));
      write_snapshot_csv(f, g, s.t, *field);
    }
  }
}

}  // namespace

int cmd_run(const std::filesystem::path& config, CommandIo io) {
  return guarded(io, [&]() -> int {
    const ScenarioConfig cfg = load_scenario(config);
    const Grid g = cfg.grid.make();
    RunOptions opts;
    // Without a snapshot directory there is no need to keep fields around.
    if (!cfg.outputs.snapshots_path) opts.snapshot_every = -1.0;
    const RunResult r = run_scenario(cfg, opts);

    if (!cfg.outputs.series_path.empty()) {
      auto f = open_output(output_path(cfg, cfg.outputs.series_path));
      write_series_csv(f, r.records);
    }
    if (cfg.outputs.snapshots_path) write_snapshots(cfg, g, r);
    if (!io.quiet) {
      io.out << "status=" << to_string(r.status) << " t_stop=" << format_number(r.t_stop) << '\n';
    }
    return exit_code_for(r.status);
  });
}

int cmd_classify(const std::filesystem::path& config, CommandIo io) {
  return guarded(io, [&]() -> int {
    const ScenarioConfig cfg = load_scenario(config);
    const RegimeVerdict v = classify(cfg.params);
    if (!io.quiet) {
      io.out << "verdict=" << to_string(v.tag) << " gamma_star=" << format_number(v.gamma_star)
             << " rationale=" << v.rationale << '\n';
    }
    return kExitOk;
  });
}

int cmd_verify_lemmas(const std::filesystem::path& config, CommandIo io) {
  return guarded(io, [&]() -> int {
    const ScenarioConfig cfg = load_scenario(config);
    const LemmaReport rep = verify_lemmas(cfg);
    for (RunStatus s : {rep.coarse_status, rep.fine_status}) {
      if (s != RunStatus::ReachedT) {
        if (!io.quiet) io.out << "status=" << to_string(s) << " lemma checks not evaluated\n";
        return exit_code_for(s);
      }
    }
    if (!io.quiet) {
      if (!rep.duality_coarse) {
        io.out << "notice: duality check skipped (Dirichlet walls do not conserve mass)\n";
      }
      io.out << "hmp_ratio_p2=" << format_number(rep.hmp_uw_coarse) << ','
             << format_number(rep.hmp_uw_fine) << " duality_ratio=";
      if (rep.duality_coarse) {
        io.out << format_number(*rep.duality_coarse) << ',' << format_number(*rep.duality_fine);
      } else {
        io.out << "skipped";
      }
      io.out << " smoothing_ok=" << (rep.smoothing.ok ? "true" : "false") << '\n';
      io.out << "hmp_ratio_vw_p2=" << format_number(rep.hmp_vw_coarse) << ','
             << format_number(rep.hmp_vw_fine) << '\n';
    }
    return rep.passed() ? kExitOk : kExitOutOfBand;
  });
}

int cmd_convergence(const std::filesystem::path& config, CommandIo io) {
  return guarded(io, [&]() -> int {
    const ScenarioConfig cfg = load_scenario(config);
    const ConvergenceReport rep = convergence_study(cfg);
    if (rep.degenerate) {
      if (!io.quiet) io.out << "degenerate\n";
      return kExitOk;
    }
    if (!io.quiet) {
      io.out << "temporal_order=" << format_number(rep.temporal_order)
             << " spatial_order=" << format_number(rep.spatial_order) << '\n';
    }
    if (rep.temporal_ok() && rep.spatial_ok()) return kExitOk;
    if (!io.quiet) io.out << (rep.smooth_data ? "order-out-of-band\n" : "rough-data\n");
    return kExitOutOfBand;
  });
}

SweepConfig parse_sweep(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("sweep: expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "ranges" && key != "dim" && key != "run" && key != "base" &&
        key != "output_path" && key != "threads") {
      throw ConfigError("sweep: unknown key '" + key + "'");
    }
  }
  SweepConfig cfg;
  cfg.base_dir = base_dir;
  if (!j.contains("ranges") || !j.at("ranges").is_object()) {
    throw ConfigError("sweep: missing object 'ranges'");
  }
  const json& r = j.at("ranges");
  const std::pair<const char*, std::vector<double>*> axes[] = {
      {"alpha", &cfg.alpha}, {"beta", &cfg.beta}, {"gamma", &cfg.gamma},
      {"d1", &cfg.d1},       {"d2", &cfg.d2},     {"d3", &cfg.d3}};
  for (const auto& [key, value] : r.items()) {
    bool known = false;
    for (const auto& a : axes) known = known || key == a.first;
    if (!known) throw ConfigError("sweep.ranges: unknown key '" + key + "'");
  }
  for (const auto& [name, dst] : axes) {
    if (!r.contains(name) || !r.at(name).is_array()) {
      throw ConfigError(std::string("sweep.ranges: '") + name + "' must be an array");
    }
    for (const auto& x : r.at(name)) {
      if (!x.is_number()) throw ConfigError(std::string("sweep.ranges.") + name + ": numbers only");
      dst->push_back(x.get<double>());
    }
  }
  if (j.contains("base")) cfg.base = parse_scenario(j.at("base"), base_dir);
  if (j.contains("dim")) {
    if (!j.at("dim").is_number_integer() || j.at("dim").get<int>() < 1) {
      throw ConfigError("sweep.dim: expected a positive integer");
    }
    cfg.dim = j.at("dim").get<int>();
  } else if (cfg.base) {
    cfg.dim = cfg.base->params.dim;
  }
  if (j.contains("run")) {
    if (!j.at("run").is_boolean()) throw ConfigError("sweep.run: expected a boolean");
    cfg.run = j.at("run").get<bool>();
  }
  if (cfg.run && !cfg.base) throw ConfigError("sweep: 'run' requires a 'base' scenario");
  if (j.contains("output_path")) {
    if (!j.at("output_path").is_string()) throw ConfigError("sweep.output_path: expected a string");
    cfg.output_path = j.at("output_path").get<std::string>();
  }
  if (j.contains("threads")) {
    if (!j.at("threads").is_number_integer()) throw ConfigError("sweep.threads: expected an integer");
    cfg.threads = j.at("threads").get<int>();
  }
  return cfg;
}

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  std::vector<Params> tuples;
  for (double a : cfg.alpha)
    for (double b : cfg.beta)
      for (double g : cfg.gamma)
        for (double d1 : cfg.d1)
          for (double d2 : cfg.d2)
            for (double d3 : cfg.d3) tuples.push_back({d1, d2, d3, a, b, g, cfg.dim});

  for (const Params& p : tuples) {
    try {
      p.validate();
    } catch (const ContractError& e) {
      throw ConfigError(std::string("sweep tuple: ") + e.what());
    }
  }

  std::vector<SweepRow> rows(tuples.size());
  std::vector<std::exception_ptr> failures(tuples.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tuples.size(); i = next++) {
      try {
        SweepRow row;
        row.params = tuples[i];
        row.verdict = std::string(to_string(classify(tuples[i]).tag));
        row.status = "NotRun";
        if (cfg.run) {
          ScenarioConfig sc = *cfg.base;
          sc.params = tuples[i];
          RunOptions opts;
          opts.snapshot_every = -1.0;
          const RunResult r = run_scenario(sc, opts);
          row.status = std::string(to_string(r.status));
          row.sup_linf_total = r.extrema.sup_linf_total;
          row.t_stop = r.t_stop;
        }
        rows[i] = std::move(row);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
  if (!cfg.run) n_threads = 1;
  n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, std::max<std::size_t>(1, tuples.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    const Params& p = r.params;
    out << format_number(p.alpha) << ',' << format_number(p.beta) << ','
        << format_number(p.gamma) << ',' << format_number(p.d1) << ',' << format_number(p.d2)
        << ',' << format_number(p.d3) << ',' << r.verdict << ',' << r.status << ',';
    if (r.status != "NotRun") {
      out << format_number(r.sup_linf_total) << ',' << format_number(r.t_stop);
    } else {
      out << ',';
    }
    out << '\n';
  }
}

int cmd_sweep(const std::filesystem::path& config, CommandIo io) {
  return guarded(io, [&]() -> int {
    std::ifstream in(config);
    if (!in) throw ConfigError("cannot open sweep config " + config.string());
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("sweep config: ") + e.what());
    }
    const SweepConfig cfg = parse_sweep(j, config.parent_path());
    const std::vector<SweepRow> rows = run_sweep(cfg);
    if (cfg.output_path.empty()) {
      write_sweep_csv(io.out, rows);
    } else {
      std::filesystem::path path(cfg.output_path);
      if (path.is_relative()) path = cfg.base_dir / path;
      auto f = open_output(path);
      write_sweep_csv(f, rows);
      if (!io.quiet) io.out << "rows=" << rows.size() << " output=" << path.string() << '\n';
    }
    return kExitOk;
  });
}

}  // namespace rds
