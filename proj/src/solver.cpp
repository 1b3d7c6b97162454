#include "gch/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gch {

void SolverConfig::validate() const {
  if (!(epsilon > 0.0))
    throw ConfigError("SolverConfig: viscosity must be positive");
  if (!(t_final > 0.0))
    throw ConfigError("SolverConfig: t_final must be positive");
  if (!(cfl > 0.0 && cfl <= 1.0))
    throw ConfigError("SolverConfig: cfl must lie in (0, 1]");
  if (!(dt_max > 0.0))
    throw ConfigError("SolverConfig: dt_max must be positive");
  if (snapshot_stride < 1)
    throw ConfigError("SolverConfig: snapshot_stride must be >= 1");
  for (std::size_t k = 0; k < output_times.size(); ++k) {
    if (!(output_times[k] > 0.0 && output_times[k] <= t_final))
      throw ConfigError("SolverConfig: output times must lie in (0, t_final]");
    if (k > 0 && !(output_times[k] > output_times[k - 1]))
      throw ConfigError("SolverConfig: output times must be increasing");
  }
}

GridFunction compute_p1(const GridFunction& u, const HelmholtzSolver& helm) {
  const GridFunction q = derivative(u);
  std::vector<double> src(u.size());
  for (int i = 0; i < u.size(); ++i)
    src[i] = 2.0 * q[i] * q[i] + 6.0 * u[i] * u[i];
  return helm.green_convolve(GridFunction(u.grid(), std::move(src)));
}

GridFunction compute_p2(const GridFunction& u, const HelmholtzSolver& helm) {
  const GridFunction q = derivative(u);
  return helm.green_convolve(multiply(q, q));
}

GridFunction rhs(const GridFunction& u, double epsilon,
                 const HelmholtzSolver& helm) {
  if (epsilon < 0.0) throw ConfigError("rhs: viscosity must be >= 0");
  const int n = u.size();
  const GridFunction q = derivative(u);
  const GridFunction u2 = multiply(u, u);
  const GridFunction du2 = derivative(u2);
  const GridFunction q2 = multiply(q, q);

  std::vector<double> src(n);
  for (int i = 0; i < n; ++i) src[i] = 2.0 * q2[i] + 6.0 * u2[i];
  const GridFunction p1 = helm.green_convolve(GridFunction(u.grid(), std::move(src)));
  const GridFunction dxp1 = derivative(p1);
  const GridFunction p2 = helm.green_convolve(q2);
  const GridFunction visc = second_difference(u);

  // 4 u u_x in the skew-symmetric split (4/3)(u Du + D(u^2)); d_xx P2 as
  // G*q^2 - q^2, never by differencing the solve output.
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double adv = (4.0 / 3.0) * (u[i] * q[i] + du2[i]);
    out[i] = adv + dxp1[i] + (p2[i] - q2[i]) + epsilon * visc[i];
  }
  return GridFunction(u.grid(), std::move(out));
}

GridFunction rhs_w(const GridFunction& w, double epsilon,
                   const HelmholtzSolver& helm) {
  if (epsilon < 0.0) throw ConfigError("rhs_w: viscosity must be >= 0");
  const int n = w.size();
  const GridFunction dw = derivative(w);
  const GridFunction w2 = multiply(w, w);
  const GridFunction dw2 = derivative(w2);
  const GridFunction nonlocal = helm.green_dx(scale(3.0, w2));
  const GridFunction visc = second_difference(w);

  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    const double adv = (2.0 / 3.0) * (w[i] * dw[i] + dw2[i]);
    out[i] = adv + nonlocal[i] + epsilon * visc[i];
  }
  return GridFunction(w.grid(), std::move(out));
}

static double advective_speed(const GridFunction& u, Formulation form) {
  if (form == Formulation::W_FORM) return 2.0 * norm_linf(u);
  const GridFunction q = derivative(u);
  double m = 0.0;
  for (int i = 0; i < u.size(); ++i)
    m = std::max(m, std::abs(4.0 * u[i] - 2.0 * q[i]));
  return m;
}

double stable_dt(const GridFunction& u, const SolverConfig& config) {
  const double h = u.grid().spacing;
  const double speed =
      std::max(std::numeric_limits<double>::epsilon(),
               advective_speed(u, config.formulation));
  double dt = std::min(config.cfl * h / speed, config.dt_max);
  if (config.epsilon > 0.0)
    dt = std::min(dt, config.cfl * h * h / (2.0 * config.epsilon));
  return dt;
}

GridFunction step_ssprk3(const GridFunction& u, double dt, double epsilon,
                         const HelmholtzSolver& helm, Formulation form) {
  auto f = [&](const GridFunction& v) {
    return form == Formulation::U_FORM ? rhs(v, epsilon, helm)
                                       : rhs_w(v, epsilon, helm);
  };
  const GridFunction u1 = lin_comb(1.0, u, dt, f(u));
  const GridFunction u2 =
      lin_comb(0.75, u, 0.25, lin_comb(1.0, u1, dt, f(u1)));
  return lin_comb(1.0 / 3.0, u, 2.0 / 3.0, lin_comb(1.0, u2, dt, f(u2)));
}

static double dissipation_rate(const GridFunction& u) {
  const GridFunction du = derivative(u);
  const GridFunction dq = derivative(du);
  const double a = norm_l2(du);
  const double b = norm_l2(dq);
  return a * a + b * b;
}

Trajectory run(const GridFunction& u0, const SolverConfig& config) {
  config.validate();
  const Grid& grid = u0.grid();
  const HelmholtzSolver helm(grid);

  std::vector<double> targets = config.output_times;
  if (targets.empty() || targets.back() < config.t_final)
    targets.push_back(config.t_final);

  Trajectory traj;
  traj.grid = grid;
  traj.epsilon = config.epsilon;
  traj.times.push_back(0.0);
  traj.snapshots.push_back(u0);
  traj.dissipation.push_back(0.0);

  GridFunction u = u0;
  double t = 0.0;
  double dissip = 0.0;
  double d_rate = dissipation_rate(u);
  std::size_t next_target = 0;
  long step = 0;
  const double t_eps = 1e-12 * std::max(1.0, config.t_final);

  auto blowup = [&](const GridFunction& v) {
    const GridFunction dv = derivative(v);
    return norm_linf(dv) + norm_linf(derivative(dv));
  };

  while (t < config.t_final - t_eps) {
    double dt = stable_dt(u, config);
    bool at_target = false;
    if (t + dt >= targets[next_target] - t_eps) {
      dt = targets[next_target] - t;
      at_target = true;
    }

    StepStats stats;
    stats.t = t;
    stats.dt_used = dt;
    stats.advective_cfl =
        dt * advective_speed(u, config.formulation) / grid.spacing;
    stats.diffusive_cfl =
        2.0 * config.epsilon * dt / (grid.spacing * grid.spacing);

    GridFunction next = u;
    try {
      const GridFunction k1 = config.formulation == Formulation::U_FORM
                                  ? rhs(u, config.epsilon, helm)
                                  : rhs_w(u, config.epsilon, helm);
      stats.rhs_linf = norm_linf(k1);
      const GridFunction u1 = lin_comb(1.0, u, dt, k1);
      const GridFunction k2 = config.formulation == Formulation::U_FORM
                                  ? rhs(u1, config.epsilon, helm)
                                  : rhs_w(u1, config.epsilon, helm);
      const GridFunction u2 =
          lin_comb(0.75, u, 0.25, lin_comb(1.0, u1, dt, k2));
      const GridFunction k3 = config.formulation == Formulation::U_FORM
                                  ? rhs(u2, config.epsilon, helm)
                                  : rhs_w(u2, config.epsilon, helm);
      next = lin_comb(1.0 / 3.0, u, 2.0 / 3.0, lin_comb(1.0, u2, dt, k3));
    } catch (const std::runtime_error& e) {
      throw BlowUpError(std::string("run: non-finite state at t = ") +
                            std::to_string(t) + " (" + e.what() + ")",
                        stats);
    }

    if (blowup(next) > config.blowup_ceiling)
      throw BlowUpError("run: blow-up monitor tripped at t = " +
                            std::to_string(t + dt),
                        stats);

    const double d_new = dissipation_rate(next);
    dissip += 0.5 * (d_rate + d_new) * dt;
    d_rate = d_new;
    u = std::move(next);
    t += dt;
    ++step;
    traj.stats.push_back(stats);

    const bool stride_hit =
        config.output_times.empty() && step % config.snapshot_stride == 0;
    if (at_target || stride_hit) {
      traj.times.push_back(t);
      traj.snapshots.push_back(u);
      traj.dissipation.push_back(dissip);
      if (at_target) ++next_target;
    }
  }

  if (traj.times.back() < config.t_final - t_eps) {
    traj.times.push_back(t);
    traj.snapshots.push_back(u);
    traj.dissipation.push_back(dissip);
  }
  traj.validate();
  return traj;
}

}  // namespace gch
