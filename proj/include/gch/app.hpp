#pragma once

#include <string>
#include <vector>

#include "gch/entropy.hpp"
#include "gch/estimates.hpp"
#include "gch/initialdata.hpp"
#include "gch/solver.hpp"
#include "gch/sweep.hpp"

namespace gch::app {

// Exit-code contract shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitBlowUp = 3;

struct Options {
  std::string config_path;
  std::string out_dir = "out";
  std::string trajectory_dir;  // certify input
  bool paper_literal = false;
  long seed_override = -1;     // -1: take the config value
};

/// Parsed flat-JSON experiment configuration.
struct ExperimentConfig {
  Grid grid{40.0, 2048};
  std::string ic_kind = "peakon";
  double ic_c = 1.0, ic_x0 = 0.0;       // peakon
  double ic_a = 1.0, ic_s = 1.0;        // gaussian
  double ic_value = 0.0;                // constant
  std::string ic_path;                  // csv
  // "coupled" keeps the smoothing width tied to the viscosity, clamped from
  // below so the kernel stays resolved on the grid.
  bool mollify_coupled = true;
  double mollify_width = 0.0;           // used when not coupled; 0 = none
  double mollify_floor_cells = 4.0;
  SolverConfig solver;
  int snapshot_count = 0;               // >0: uniform forced output times
  std::vector<std::string> checks_enabled{"h1", "l1", "bv",     "linf",
                                          "time_bv", "p_bounds", "entropy"};
  double check_tolerance = 1e-6;
  unsigned entropy_seed = 42;
  int entropy_bumps = 12;
  std::vector<double> kruzkov_k{-1.0, 0.0, 1.0};
  double kruzkov_delta = 1e-3;
  bool paper_literal = false;
  std::vector<double> sweep_epsilons{0.04, 0.02, 0.01, 0.005};
  CompactWindow sweep_window;
  int sweep_snapshot_count = 40;
};

ExperimentConfig load_config(const std::string& path);

GridFunction build_initial_data(const ExperimentConfig& cfg);

// Smoothing width actually used for a given viscosity (coupled + clamped).
double mollification_width(const ExperimentConfig& cfg, double epsilon);

void save_trajectory(const Trajectory& traj, const std::string& dir);
Trajectory load_trajectory(const std::string& dir);

int cmd_run(const Options& opt);
int cmd_sweep(const Options& opt);
int cmd_certify(const Options& opt);
int cmd_selftest();

}  // namespace gch::app
