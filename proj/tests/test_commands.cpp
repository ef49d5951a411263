#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "rds/commands.hpp"
#include "rds/errors.hpp"
#include "rds/regimes.hpp"
#include "test_support.hpp"

using namespace rds;
using nlohmann::json;

namespace {

struct Captured {
  int code = 0;
  std::string out;
  std::string err;
};

template <typename Cmd>
Captured call(Cmd cmd, const std::filesystem::path& config, bool quiet = false) {
  std::ostringstream out, err;
  Captured c;
  c.code = cmd(config, CommandIo{out, err, quiet});
  c.out = out.str();
  c.err = err.str();
  return c;
}

json equilibrium_scenario() {
  auto j = test::base_scenario();
  j["params"] = {{"d1", 1.0}, {"d2", 2.0}, {"d3", 3.0}, {"alpha", 1.0}, {"beta", 1.0}, {"gamma", 1.0}};
  j["initial"] = {{"u", {{"constant", {{"value", 1.0}}}}},
                  {"v", {{"constant", {{"value", 1.0}}}}},
                  {"w", {{"constant", {{"value", 1.0}}}}}};
  j["t_end"] = 1.0;
  return j;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("exit codes and number format") {
  CHECK(exit_code_for(RunStatus::ReachedT) == 0);
  CHECK(exit_code_for(RunStatus::BlowUpSuspected) == 2);
  CHECK(exit_code_for(RunStatus::DtUnderflow) == 3);
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
}

TEST_CASE("run writes a reproducible series") {
  const auto dir = test::scratch_dir("cmd_run");
  auto j = equilibrium_scenario();
  j["outputs"] = {{"series_path", "out/series.csv"}};
  const auto cfg = test::write_json(dir / "eq.json", j);

  const auto first = call(cmd_run, cfg);
  CHECK(first.code == 0);
  CHECK(first.out == "status=ReachedT t_stop=1\n");
  const std::string series = test::read_text(dir / "out/series.csv");
  const auto rows = lines(series);
  REQUIRE(rows.size() == 22);  // header, t = 0, 0.05, ..., 1
  CHECK(rows[0] == kSeriesHeader);
  CHECK(rows[1].rfind("0,", 0) == 0);
  CHECK(rows.back().rfind("1,", 0) == 0);

  CHECK(call(cmd_run, cfg).code == 0);
  CHECK(test::read_text(dir / "out/series.csv") == series);
}

TEST_CASE("run writes snapshots in the documented layout") {
  const auto dir = test::scratch_dir("cmd_snap");
  auto j = test::base_scenario();
  j["grid"]["cells_per_axis"] = 8;
  j["t_end"] = 0.1;
  j["outputs"] = {{"snapshots_path", "snaps"}, {"snapshot_every", 0.05}};
  const auto cfg = test::write_json(dir / "s.json", j);
  CHECK(call(cmd_run, cfg).code == 0);
  const auto u0 = lines(test::read_text(dir / "snaps/u_000000.csv"));
  REQUIRE(u0.size() == 10);
  CHECK(u0[0] == "# n=8 dim=1");
  CHECK(u0[1] == "# t=0");
  CHECK(std::filesystem::exists(dir / "snaps/w_000002.csv"));
  CHECK_FALSE(std::filesystem::exists(dir / "snaps/w_000003.csv"));

  // a snapshot file is valid initial data for another run
  j["initial"]["u"] = {{"file", {{"path", "snaps/u_000002.csv"}}}};
  j.erase("outputs");
  CHECK(call(cmd_run, test::write_json(dir / "restart.json", j)).code == 0);
}

TEST_CASE("run exit codes for blow-up, underflow and bad configs") {
  const auto dir = test::scratch_dir("cmd_codes");
  auto blow = test::base_scenario();
  blow["initial"] = {{"u", {{"constant", {{"value", 10.0}}}}},
                     {"v", {{"constant", {{"value", 10.0}}}}},
                     {"w", {{"constant", {{"value", 9e5}}}}}};
  blow["control"]["blowup_threshold"] = 1e6;
  blow["kinetics"] = "surrogate_growth";
  auto r = call(cmd_run, test::write_json(dir / "blow.json", blow));
  CHECK(r.code == 2);
  CHECK(r.out.rfind("status=BlowUpSuspected", 0) == 0);

  auto under = equilibrium_scenario();
  under["initial"]["w"] = {{"constant", {{"value", 0.0}}}};
  under["initial"]["u"] = {{"constant", {{"value", 10.0}}}};
  under["initial"]["v"] = {{"constant", {{"value", 10.0}}}};
  under["control"] = {{"dt_init", 0.5}, {"dt_min", 0.1}, {"dt_max", 1.0}};
  r = call(cmd_run, test::write_json(dir / "under.json", under));
  CHECK(r.code == 3);
  CHECK(r.out.rfind("status=DtUnderflow", 0) == 0);

  auto bad = test::base_scenario();
  bad["contrl"] = json::object();
  r = call(cmd_run, test::write_json(dir / "bad.json", bad));
  CHECK(r.code == 1);
  CHECK(r.err.find("contrl") != std::string::npos);
  CHECK(call(cmd_run, dir / "missing.json").code == 1);
}

TEST_CASE("quiet suppresses the summary line") {
  const auto dir = test::scratch_dir("cmd_quiet");
  const auto cfg = test::write_json(dir / "eq.json", equilibrium_scenario());
  const auto r = call(cmd_run, cfg, true);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("classify prints verdict, gamma star and rationale") {
  const auto dir = test::scratch_dir("cmd_classify");
  auto j = test::base_scenario();
  auto r = call(cmd_classify, test::write_json(dir / "t1.json", j));
  CHECK(r.code == 0);
  CHECK(r.out == "verdict=GlobalTheorem1 gamma_star=2.3333333333333335 rationale=alpha+beta<gamma\n");

  j["params"] = {{"d1", 1.0}, {"d2", 2.0}, {"d3", 3.0}, {"alpha", 2.0}, {"beta", 2.0}, {"gamma", 4.0}};
  j["grid"]["dimension"] = 2;
  j["grid"]["cells_per_axis"] = 8;
  r = call(cmd_classify, test::write_json(dir / "open.json", j));
  CHECK(r.out.rfind("verdict=Open gamma_star=2 ", 0) == 0);
}

TEST_CASE("verify-lemmas on uniform equilibrium data") {
  const auto dir = test::scratch_dir("cmd_lemmas");
  const auto r = call(cmd_verify_lemmas, test::write_json(dir / "eq.json", equilibrium_scenario()));
  CHECK(r.code == 0);
  CHECK(r.out.find("hmp_ratio_p2=0.5") == 0);
  CHECK(r.out.find("smoothing_ok=true") != std::string::npos);
}

TEST_CASE("verify-lemmas under Dirichlet walls skips duality") {
  const auto dir = test::scratch_dir("cmd_lemmas_dir");
  auto j = test::base_scenario();
  j["grid"]["bc"] = "dirichlet";
  const auto r = call(cmd_verify_lemmas, test::write_json(dir / "d.json", j));
  CHECK(r.code == 0);
  CHECK(r.out.find("notice:") == 0);
  CHECK(r.out.find("duality_ratio=skipped") != std::string::npos);
}

TEST_CASE("convergence outcomes") {
  const auto dir = test::scratch_dir("cmd_conv");
  auto smooth = test::base_scenario();
  smooth["t_end"] = 0.2;
  smooth["control"] = {{"dt_init", 4e-3}, {"dt_max", 4e-3}, {"sample_every", 0.2}};
  auto r = call(cmd_convergence, test::write_json(dir / "smooth.json", smooth));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("temporal_order=", 0) == 0);

  auto eq = equilibrium_scenario();
  eq["t_end"] = 0.1;
  r = call(cmd_convergence, test::write_json(dir / "eq.json", eq));
  CHECK(r.code == 0);
  CHECK(r.out == "degenerate\n");

  auto rough = smooth;
  rough["initial"]["u"] = {{"checkerboard", {{"low", 0.0}, {"high", 2.0}}}};
  r = call(cmd_convergence, test::write_json(dir / "rough.json", rough));
  CHECK(r.code == 4);
  CHECK(r.out.find("rough-data") != std::string::npos);
}

TEST_CASE("sweep: empty range gives only the header") {
  const auto dir = test::scratch_dir("cmd_sweep_empty");
  json j = {{"ranges", {{"alpha", json::array()}, {"beta", {1.0}}, {"gamma", {1.0}},
                        {"d1", {1.0}}, {"d2", {1.0}}, {"d3", {1.0}}}}};
  const auto r = call(cmd_sweep, test::write_json(dir / "s.json", j));
  CHECK(r.code == 0);
  CHECK(r.out == std::string(kSweepHeader) + "\n");
}

TEST_CASE("sweep: rows follow the declared order") {
  json j = {{"ranges", {{"alpha", {1.0}}, {"beta", {1.0}}, {"gamma", {1.0, 2.0, 3.0}},
                        {"d1", {1.0}}, {"d2", {2.0}}, {"d3", {3.0}}}},
            {"dim", 1}};
  const auto rows = run_sweep(parse_sweep(j));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].verdict == "GlobalTheorem3");
  CHECK(rows[1].verdict == "GlobalTheorem3");
  CHECK(rows[2].verdict == "GlobalTheorem1");
  CHECK(rows[2].status == "NotRun");
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  CHECK(lines(csv.str())[3] == "1,1,3,1,2,3,GlobalTheorem1,NotRun,,");
}

TEST_CASE("sweep: a single tuple agrees with classify and run") {
  const auto dir = test::scratch_dir("cmd_sweep_one");
  auto base = test::base_scenario();
  base["t_end"] = 0.2;
  json j = {{"ranges", {{"alpha", {1.0}}, {"beta", {1.0}}, {"gamma", {3.0}},
                        {"d1", {1.0}}, {"d2", {2.0}}, {"d3", {3.0}}}},
            {"run", true},
            {"base", base},
            {"threads", 2}};
  const auto rows = run_sweep(parse_sweep(j));
  REQUIRE(rows.size() == 1);
  const auto cfg = parse_scenario(base);
  const auto direct = run_scenario(cfg);
  CHECK(rows[0].verdict == std::string(to_string(classify(cfg.params).tag)));
  CHECK(rows[0].status == "ReachedT");
  CHECK(rows[0].t_stop == direct.t_stop);
  CHECK(rows[0].sup_linf_total == direct.extrema.sup_linf_total);
}

TEST_CASE("sweep config errors") {
  CHECK_THROWS_AS(parse_sweep(json{{"ranges", {{"alpha", {1.0}}}}}), ConfigError);
  CHECK_THROWS_AS(parse_sweep(json{{"rangez", json::object()}}), ConfigError);
  json j = {{"ranges", {{"alpha", {1.0}}, {"beta", {1.0}}, {"gamma", {1.0}},
                        {"d1", {1.0}}, {"d2", {1.0}}, {"d3", {1.0}}}},
            {"run", true}};
  CHECK_THROWS_AS(parse_sweep(j), ConfigError);
  j["run"] = false;
  j["ranges"]["d1"] = {-1.0};
  CHECK_THROWS_AS(run_sweep(parse_sweep(j)), ConfigError);
}
