#pragma once

#include <string>
#include <vector>

#include "gch/entropy.hpp"
#include "gch/estimates.hpp"
#include "gch/solver.hpp"

namespace gch {

struct CompactWindow {
  double x_lo = -10.0;
  double x_hi = 10.0;
  double t_lo = 0.1;
  double t_hi = 1.0;
};

struct SweepConfig {
  std::vector<double> epsilons{0.04, 0.02, 0.01, 0.005};
  SolverConfig base;              // t_final, cfl, ...; epsilon is overridden
  CompactWindow window;
  int snapshot_count = 40;        // shared output times across the ladder
  bool allow_duplicate_epsilons = false;  // test mode only
  double mollify_width_floor_cells = 4.0; // clamp width to this many cells
  int threads = 0;                // 0 = sequential

  void validate(const Grid& grid) const;
};

struct SweepReport {
  std::vector<double> epsilons;
  std::vector<Trajectory> trajectories;   // aligned with epsilons
  std::vector<double> d_u;   // ||u_k - u_{k+1}||_L2 over the window
  std::vector<double> d_q;   // same for the derivative
  bool cauchy_monotone = false;
  bool aborted = false;      // a member run blew up; report is partial
  std::string abort_reason;
};

// Run the solver across the epsilon ladder from the UNmollified data u0
// (mollification width follows each epsilon, clamped to stay resolved),
// then measure space-time L2 differences of u and d_x u over the window.
SweepReport run_sweep(const GridFunction& u0, const SweepConfig& cfg);

struct CauchyRow {
  double epsilon;
  double d_u;
  double d_q;
  double ratio_u;  // d_{k+1}/d_k, NaN for the last row
  double ratio_q;
};

std::vector<CauchyRow> cauchy_table(const SweepReport& report);

std::string cauchy_table_csv(const std::vector<CauchyRow>& rows);

// Space-time L2 norm of (a - b) over the compact window; the trajectories
// must share grid and snapshot times.
double window_l2_difference(const Trajectory& a, const Trajectory& b,
                            const CompactWindow& w, bool of_derivative);

}  // namespace gch
