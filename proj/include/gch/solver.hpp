#pragma once

#include <optional>
#include <vector>

#include "gch/grid.hpp"
#include "gch/helmholtz.hpp"

namespace gch {

enum class Formulation { U_FORM, W_FORM };

struct SolverConfig {
  double epsilon = 0.01;   // viscosity; must be positive for run()
  double t_final = 1.0;
  double cfl = 0.4;
  double dt_max = 0.05;
  Formulation formulation = Formulation::U_FORM;
  int snapshot_stride = 10;
  double blowup_ceiling = 1e6;
  // When nonempty, snapshots are taken exactly at these times (the stepper
  // clips dt to land on them); otherwise every snapshot_stride steps.
  std::vector<double> output_times;

  void validate() const;
};

/// Thrown when the blow-up monitor trips or a step produces non-finite data.
/// For epsilon > 0 this signals a resolution failure, not physics.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, StepStats stats)
      : std::runtime_error(what), stats(stats) {}
  StepStats stats;
};

// P1 = G * [2 q^2 + 6 u^2], q = derivative(u).
GridFunction compute_p1(const GridFunction& u, const HelmholtzSolver& helm);

// P2 = G * [q^2].
GridFunction compute_p2(const GridFunction& u, const HelmholtzSolver& helm);

// u_t = 4 u u_x + d_x P1 + d_xx P2 + epsilon u_xx, with the advective term in
// the energy-neutral skew split and d_xx P2 via the identity G*f - f.
// epsilon = 0 is allowed here (diagnostics only).
GridFunction rhs(const GridFunction& u, double epsilon,
                 const HelmholtzSolver& helm);

// w_t = 2 w w_x + 3 d_x G*(w^2) + epsilon w_xx, the closed equation obeyed
// by w = (2 - d_x) u, with the advective term in its energy-neutral split.
GridFunction rhs_w(const GridFunction& w, double epsilon,
                   const HelmholtzSolver& helm);

// min(cfl*h/speed, cfl*h^2/(2 eps), dt_max); the advective speed is
// |4u - 2q| for the u-form and |2w| for the w-form.
double stable_dt(const GridFunction& u, const SolverConfig& config);

// One 3-stage SSP Runge-Kutta update of the configured formulation.
GridFunction step_ssprk3(const GridFunction& u, double dt, double epsilon,
                         const HelmholtzSolver& helm,
                         Formulation form = Formulation::U_FORM);

// Integrate to t_final with adaptive dt, recording snapshots and the
// cumulative dissipation integral.
Trajectory run(const GridFunction& u0, const SolverConfig& config);

}  // namespace gch
