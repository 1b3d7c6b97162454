#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "gch/app.hpp"
#include "json.hpp"

using namespace gch;
namespace fs = std::filesystem;

namespace {

std::string write_config(const std::string& name, const std::string& body) {
  const std::string path = name;
  std::ofstream out(path);
  out << body;
  return path;
}

const char* kQuickRun = R"({
  "grid": {"L": 40.0, "N": 128},
  "ic": {"kind": "gaussian", "params": {"a": 0.5, "s": 2.0}},
  "mollify": {"width": 1.0},
  "solver": {"epsilon": 0.05, "t_final": 0.2, "snapshot_count": 16},
  "checks": {"enabled": ["h1", "l1", "p_bounds"], "tolerance": 1e-6}
})";

}  // namespace

TEST_CASE("configuration loading") {
  const std::string path = write_config("cfg_ok.json", kQuickRun);
  const app::ExperimentConfig cfg = app::load_config(path);
  CHECK(cfg.grid.n == 128);
  CHECK(cfg.ic_kind == "gaussian");
  CHECK(cfg.ic_a == doctest::Approx(0.5));
  CHECK_FALSE(cfg.mollify_coupled);
  CHECK(cfg.mollify_width == doctest::Approx(1.0));
  CHECK(cfg.solver.epsilon == doctest::Approx(0.05));
  CHECK(cfg.snapshot_count == 16);
  CHECK(cfg.checks_enabled == std::vector<std::string>{"h1", "l1", "p_bounds"});
  fs::remove(path);

  CHECK_THROWS_AS(app::load_config("missing.json"), ConfigError);
  const std::string bad = write_config("cfg_bad.json", "{ not json");
  CHECK_THROWS_AS(app::load_config(bad), ConfigError);
  fs::remove(bad);
  const std::string neg = write_config(
      "cfg_neg.json", R"({"solver": {"epsilon": -0.1}})");
  CHECK_THROWS_AS(app::load_config(neg), ConfigError);
  fs::remove(neg);
  const std::string form = write_config(
      "cfg_form.json", R"({"solver": {"epsilon": 0.1, "formulation": "v"}})");
  CHECK_THROWS_AS(app::load_config(form), ConfigError);
  fs::remove(form);
}

TEST_CASE("defaults follow the standing experiment") {
  const std::string path = write_config("cfg_empty.json", "{}");
  const app::ExperimentConfig cfg = app::load_config(path);
  fs::remove(path);
  CHECK(cfg.grid.length == doctest::Approx(40.0));
  CHECK(cfg.grid.n == 2048);
  CHECK(cfg.ic_kind == "peakon");
  CHECK(cfg.mollify_coupled);
  CHECK(cfg.entropy_seed == 42);
  CHECK(cfg.sweep_epsilons ==
        std::vector<double>{0.04, 0.02, 0.01, 0.005});
  CHECK(cfg.kruzkov_k == std::vector<double>{-1.0, 0.0, 1.0});
}

TEST_CASE("initial data dispatch") {
  app::ExperimentConfig cfg;
  cfg.grid = Grid(40.0, 128);
  cfg.ic_kind = "peakon";
  cfg.ic_c = 0.5;
  CHECK(norm_linf(app::build_initial_data(cfg)) == doctest::Approx(0.5));
  cfg.ic_kind = "gaussian";
  cfg.ic_a = 0.3;
  cfg.ic_s = 2.0;
  CHECK(norm_linf(app::build_initial_data(cfg)) == doctest::Approx(0.3));
  cfg.ic_kind = "constant";
  cfg.ic_value = -1.5;
  CHECK(app::build_initial_data(cfg)[0] == doctest::Approx(-1.5));
  cfg.ic_kind = "zero";
  CHECK(norm_linf(app::build_initial_data(cfg)) == 0.0);
  cfg.ic_kind = "sawtooth";
  CHECK_THROWS_AS(app::build_initial_data(cfg), ConfigError);
}

TEST_CASE("mollification width policy") {
  app::ExperimentConfig cfg;
  cfg.grid = Grid(40.0, 128);  // h = 0.3125, floor = 1.25
  cfg.mollify_coupled = true;
  CHECK(app::mollification_width(cfg, 0.01) == doctest::Approx(1.25));
  CHECK(app::mollification_width(cfg, 3.0) == doctest::Approx(3.0));
  cfg.mollify_coupled = false;
  cfg.mollify_width = 0.0;
  CHECK(app::mollification_width(cfg, 0.01) == 0.0);
  cfg.mollify_width = 2.0;
  CHECK(app::mollification_width(cfg, 0.01) == doctest::Approx(2.0));
}

TEST_CASE("trajectory persistence round trip") {
  const Grid g(40.0, 128);
  SolverConfig c;
  c.epsilon = 0.05;
  c.t_final = 0.1;
  c.output_times = {0.05, 0.1};
  const Trajectory traj = run(ic_gaussian(0.4, 2.0, g), c);

  const std::string dir = "traj_roundtrip";
  app::save_trajectory(traj, dir);
  const Trajectory back = app::load_trajectory(dir);
  CHECK(back.grid == traj.grid);
  CHECK(back.epsilon == traj.epsilon);
  REQUIRE(back.times == traj.times);
  REQUIRE(back.dissipation == traj.dissipation);
  for (int k = 0; k < traj.count(); ++k)
    for (int i = 0; i < g.n; ++i)
      CHECK(back.snapshots[k][i] == traj.snapshots[k][i]);
  fs::remove_all(dir);

  CHECK_THROWS_AS(app::load_trajectory("no_such_dir"), ConfigError);
}

TEST_CASE("run command exit contract and artifacts") {
  app::Options opt;
  opt.config_path = write_config("cfg_run.json", kQuickRun);
  opt.out_dir = "out_run_test";
  CHECK(app::cmd_run(opt) == app::kExitOk);

  REQUIRE(fs::exists(opt.out_dir + "/manifest.json"));
  std::ifstream in(opt.out_dir + "/manifest.json");
  nlohmann::json manifest;
  in >> manifest;
  CHECK(manifest.at("passed").get<bool>());
  CHECK(manifest.at("outputs").size() >= 2);
  CHECK(fs::exists(opt.out_dir + "/bound_h1_energy.csv"));
  CHECK(fs::exists(opt.out_dir + "/bound_l1_of_slope.json"));
  CHECK(fs::exists(opt.out_dir + "/trajectory/trajectory.json"));
  fs::remove_all(opt.out_dir);

  app::Options missing;
  missing.config_path = "nope.json";
  CHECK(app::cmd_run(missing) == app::kExitConfigError);

  const char* kBlowup = R"({
    "grid": {"L": 40.0, "N": 128},
    "ic": {"kind": "gaussian", "params": {"a": 0.5, "s": 2.0}},
    "mollify": {"width": 1.0},
    "solver": {"epsilon": 0.05, "t_final": 0.2, "blowup_ceiling": 1e-4},
    "checks": {"enabled": ["h1"]}
  })";
  app::Options blow;
  blow.config_path = write_config("cfg_blow.json", kBlowup);
  blow.out_dir = "out_blow_test";
  CHECK(app::cmd_run(blow) == app::kExitBlowUp);
  fs::remove_all(blow.out_dir);
  fs::remove(blow.config_path);
  fs::remove(opt.config_path);
}

TEST_CASE("certify command consumes a stored trajectory") {
  const char* kCert = R"({
    "grid": {"L": 40.0, "N": 256},
    "checks": {"tolerance": 1e-3},
    "entropy": {"seed": 5, "bumps": 4, "kruzkov_k": [0.0], "delta": 1e-3}
  })";
  const Grid g(40.0, 256);
  SolverConfig c;
  c.epsilon = 0.05;
  c.t_final = 0.4;
  for (int k = 1; k <= 40; ++k) c.output_times.push_back(0.4 * k / 40);
  const Trajectory traj = run(ic_gaussian(0.8, 1.5, g), c);
  app::save_trajectory(traj, "traj_cert");

  app::Options opt;
  opt.config_path = write_config("cfg_cert.json", kCert);
  opt.out_dir = "out_cert_test";
  opt.trajectory_dir = "traj_cert";
  CHECK(app::cmd_certify(opt) == app::kExitOk);
  CHECK(fs::exists(opt.out_dir + "/certification.json"));
  fs::remove_all(opt.out_dir);
  fs::remove_all("traj_cert");
  fs::remove(opt.config_path);
}
