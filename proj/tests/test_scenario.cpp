#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <fstream>
#include <numbers>

#include "rds/errors.hpp"
#include "rds/scenario.hpp"
#include "test_support.hpp"

using namespace rds;
using nlohmann::json;

TEST_CASE("checkerboard alternates with the index parity") {
  const Grid g(1, 4, 1.0, Boundary::Neumann);
  const auto f = build_initial(initial::Checkerboard{0.0, 2.0}, g);
  CHECK(f == ScalarField{0, 2, 0, 2});
  const Grid g2(2, 3, 1.0, Boundary::Neumann);
  const auto f2 = build_initial(initial::Checkerboard{1.0, 5.0}, g2);
  CHECK(f2 == ScalarField{1, 5, 1, 5, 1, 5, 1, 5, 1});
}

TEST_CASE("cosine bump stays in range and mirrors at the walls") {
  for (int n : {8, 33, 64}) {
    const Grid g(1, n, 1.0, Boundary::Neumann);
    const auto f = build_initial(initial::CosineBump{1.0, 1.0, 1}, g);
    for (double x : f) {
      CHECK(x >= 0.0);
      CHECK(x <= 2.0);
    }
    // the reflected ghost centers carry the same value, so the discrete normal difference is 0
    const double h = g.spacing();
    CHECK(f.front() == doctest::Approx(1.0 + std::cos(-std::numbers::pi * h / 2)).epsilon(1e-14));
    CHECK(f.back() == doctest::Approx(1.0 + std::cos(std::numbers::pi * (1.0 + h / 2))).epsilon(1e-14));
    CHECK(f.front() + f.back() == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("constant and file data") {
  const auto dir = test::scratch_dir("scenario_file");
  std::ofstream(dir / "field.txt") << "# n=4 dim=1\n# t=0\n0.5\n1.5\n2.5, 3.5\n";
  const Grid g(1, 4, 1.0, Boundary::Neumann);
  CHECK(build_initial(initial::File{"field.txt"}, g, dir) == ScalarField{0.5, 1.5, 2.5, 3.5});
  CHECK(build_initial(initial::Constant{2.0}, g) == ScalarField(4, 2.0));

  CHECK_THROWS_AS(build_initial(initial::File{"field.txt"}, Grid(1, 5, 1.0, Boundary::Neumann), dir),
                  ConfigError);
  std::ofstream(dir / "negative.txt") << "1\n-1\n1\n1\n";
  CHECK_THROWS_AS(build_initial(initial::File{"negative.txt"}, g, dir), ConfigError);
  std::ofstream(dir / "junk.txt") << "1\n2x\n1\n1\n";
  CHECK_THROWS_AS(build_initial(initial::File{"junk.txt"}, g, dir), ConfigError);
  CHECK_THROWS_AS(build_initial(initial::File{"missing.txt"}, g, dir), ConfigError);
}

TEST_CASE("parse a full scenario") {
  const auto cfg = parse_scenario(test::base_scenario());
  CHECK(cfg.params.gamma == 3.0);
  CHECK(cfg.params.dim == 1);
  CHECK(cfg.grid.cells_per_axis == 32);
  CHECK(cfg.grid.length == 1.0);
  CHECK(cfg.grid.bc == Boundary::Neumann);
  CHECK(cfg.t_end == 0.5);
  CHECK(cfg.control.dt_max == 5e-3);
  CHECK(cfg.control.dt_min == 1e-12);
  CHECK_FALSE(cfg.control.blowup_threshold.has_value());
  CHECK(cfg.kinetics == KineticsModel::MassAction);
  CHECK(std::get<initial::CosineBump>(cfg.v).amplitude == -0.5);
  CHECK(is_smooth(cfg.u));
  CHECK_FALSE(is_smooth(initial::Checkerboard{}));
}

TEST_CASE("params dim follows the grid unless given") {
  auto j = test::base_scenario();
  j["grid"]["dimension"] = 2;
  CHECK(parse_scenario(j).params.dim == 2);
  j["params"]["dim"] = 3;
  CHECK(parse_scenario(j).params.dim == 3);
}

TEST_CASE("invalid configs are rejected") {
  const auto expect_error = [](const std::function<void(json&)>& edit) {
    auto j = test::base_scenario();
    edit(j);
    CHECK_THROWS_AS(parse_scenario(j), ConfigError);
  };
  expect_error([](json& j) { j["contrl"] = json::object(); });
  expect_error([](json& j) { j["params"]["delta"] = 1.0; });
  expect_error([](json& j) { j["params"].erase("d1"); });
  expect_error([](json& j) { j["params"]["d1"] = 0.0; });
  expect_error([](json& j) { j["params"]["alpha"] = 0.5; });
  expect_error([](json& j) { j["params"]["beta"] = "one"; });
  expect_error([](json& j) { j["grid"]["cells_per_axis"] = 2; });
  expect_error([](json& j) { j["grid"]["cells_per_axis"] = 16.5; });
  expect_error([](json& j) { j["grid"]["dimension"] = 3; });
  expect_error([](json& j) { j["grid"]["bc"] = "periodic"; });
  expect_error([](json& j) { j["initial"]["u"] = {{"cosine_bump", {{"base", 1.0}, {"amplitude", 2.0}, {"mode", 1}}}}; });
  expect_error([](json& j) { j["initial"]["w"] = {{"constant", {{"value", -1.0}}}}; });
  expect_error([](json& j) { j["initial"]["w"] = {{"gaussian", {{"value", 1.0}}}}; });
  expect_error([](json& j) { j["initial"].erase("v"); });
  expect_error([](json& j) { j["t_end"] = 0.0; });
  expect_error([](json& j) { j["control"]["dt_min"] = 1.0; });
  expect_error([](json& j) { j["control"]["safety"] = 1.5; });
  expect_error([](json& j) { j["outputs"] = {{"lp_orders", {0.5}}}; });
  expect_error([](json& j) { j["kinetics"] = "michaelis"; });
}

TEST_CASE("load_scenario reports unreadable files as config errors") {
  const auto dir = test::scratch_dir("scenario_load");
  CHECK_THROWS_AS(load_scenario(dir / "absent.json"), ConfigError);
  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK_THROWS_AS(load_scenario(dir / "broken.json"), ConfigError);
  const auto ok = test::write_json(dir / "ok.json", test::base_scenario());
  CHECK(load_scenario(ok).base_dir == dir);
}

TEST_CASE("normalized form round-trips") {
  const auto cfg = parse_scenario(test::base_scenario());
  const json once = to_json(cfg);
  CHECK(to_json(parse_scenario(once)) == once);
  CHECK(once["grid"]["bc"] == "neumann");
  CHECK(once["control"]["safety"] == 0.9);
  CHECK(once["kinetics"] == "mass_action");

  auto j = test::base_scenario();
  j["grid"]["bc"] = "dirichlet";
  j["control"]["blowup_threshold"] = 5e5;
  j["outputs"] = {{"series_path", "out/s.csv"}, {"snapshots_path", "snaps"}, {"lp_orders", {2.0, 4.0}}};
  j["initial"]["u"] = {{"checkerboard", {{"low", 0.0}, {"high", 1.0}}}};
  j["initial"]["w"] = {{"file", {{"path", "w.txt"}}}};
  j["kinetics"] = "surrogate_growth";
  const auto dir = test::scratch_dir("scenario_roundtrip");
  {
    std::ofstream f(dir / "w.txt");
    for (int i = 0; i < 32; ++i) f << "1\n";
  }
  const json twice = to_json(parse_scenario(j, dir));
  CHECK(to_json(parse_scenario(twice, dir)) == twice);
  CHECK(twice["control"]["blowup_threshold"] == 5e5);
  CHECK(twice["outputs"]["snapshots_path"] == "snaps");
}

TEST_CASE("step control defaults the blow-up threshold from the data") {
  auto j = test::base_scenario();
  j["initial"]["w"] = {{"constant", {{"value", 20.0}}}};
  const auto cfg = parse_scenario(j);
  const auto s0 = initial_state(cfg, cfg.grid.make());
  CHECK(step_control(cfg, s0).blowup_threshold == 2e7);
}
