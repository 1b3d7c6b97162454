#pragma once

#include <string>
#include <vector>

#include "gch/grid.hpp"
#include "gch/solver.hpp"

namespace gch {

/// Norms of the UNmollified initial data that enter the bound formulas.
struct InitialNorms {
  double h1 = 0.0;      // ||u0||_H1
  double h1_sq = 0.0;   // ||u0||_H1^2
  double l1_q = 0.0;    // ||u0'||_L1
  double bv_q = 0.0;    // ||u0'||_BV
};

InitialNorms initial_norms(const GridFunction& u0);

/// Time series of a measured norm against its analytic bound curve.
struct BoundReport {
  std::string bound_name;
  double tolerance = 1e-6;
  bool passed = false;
  std::vector<double> times;
  std::vector<double> measured;
  std::vector<double> bound;
  std::vector<double> margin;  // bound - measured
  // Energy-balance defect |E(t) - E(0) + 2 eps int D|, filled by check_h1.
  std::vector<double> defect;

  void finalize();  // fills margin and passed from measured/bound
};

// H1 energy E(t) = ||u||_H1^2 against E(0), with the dissipation-accounted
// defect recorded alongside.
BoundReport check_h1(Trajectory& traj, double tolerance = 1e-6);

// ||q(t)||_L1 <= ||u0'||_L1 + 8 ||u0||_H1^2 t.
BoundReport check_l1(Trajectory& traj, const InitialNorms& n0,
                     double tolerance = 1e-6);

// ||q_x(t)||_L1 <= ||u0'||_BV + 18 ||u0||_H1^2 t.
BoundReport check_bv(Trajectory& traj, const InitialNorms& n0,
                     double tolerance = 1e-6);

// ||q(t)||_Linf, same bound curve as check_bv.
BoundReport check_linf(Trajectory& traj, const InitialNorms& n0,
                       double tolerance = 1e-6);

// ||d_t q||_L1 <= C_t = (1/t)||u0'||_BV + 3(||u0'||_BV + 18||u0||_H1^2 t)^2
// + 4 ||u0||_H1^2, evaluated at t > 0 only; d_t q is the spatial derivative
// of the semi-discrete right-hand side.
BoundReport check_time_bv(Trajectory& traj, const InitialNorms& n0,
                          double tolerance = 1e-6);

// {||P1||_L2, ||d_x P1||_L2, ||P2||_L2, ||P1||_Linf} against
// {6, 6, 1, 6} ||u0||_H1^2.
std::vector<BoundReport> check_p_bounds(Trajectory& traj,
                                        const InitialNorms& n0,
                                        double tolerance = 1e-6);

// ||u_x||_Linf + ||u_xx||_Linf, the blow-up monitor.
double blowup_functional(const GridFunction& u);

std::string bound_report_json(const BoundReport& r);
std::string bound_report_csv(const BoundReport& r);

}  // namespace gch
