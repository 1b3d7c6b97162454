#include "gch/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "gch/initialdata.hpp"

namespace gch {

void SweepConfig::validate(const Grid& grid) const {
  if (epsilons.empty()) throw ConfigError("SweepConfig: empty epsilon ladder");
  for (std::size_t k = 0; k < epsilons.size(); ++k) {
    if (!(epsilons[k] > 0.0))
      throw ConfigError("SweepConfig: viscosity must be positive");
    if (k > 0 && !(epsilons[k] < epsilons[k - 1]) && !allow_duplicate_epsilons)
      throw ConfigError("SweepConfig: epsilons must be strictly decreasing");
  }
  if (!(window.x_lo < window.x_hi) ||
      window.x_lo < -0.5 * grid.length || window.x_hi > 0.5 * grid.length)
    throw ConfigError("SweepConfig: window outside the domain");
  if (!(window.t_lo >= 0.0 && window.t_lo < window.t_hi &&
        window.t_hi <= base.t_final))
    throw ConfigError("SweepConfig: window outside [0, t_final]");
  if (snapshot_count < 2)
    throw ConfigError("SweepConfig: need at least 2 shared snapshots");
}

double window_l2_difference(const Trajectory& a, const Trajectory& b,
                            const CompactWindow& w, bool of_derivative) {
  if (a.grid != b.grid) throw ConfigError("window_l2_difference: grid mismatch");
  if (a.times != b.times)
    throw ConfigError("window_l2_difference: snapshot times differ");
  const Grid& grid = a.grid;
  const double h = grid.spacing;
  double acc = 0.0;
  const int count = static_cast<int>(a.times.size());
  for (int k = 0; k < count; ++k) {
    const double t = a.times[k];
    if (t < w.t_lo || t > w.t_hi) continue;
    double wt = 0.0;
    if (k > 0 && a.times[k - 1] >= w.t_lo - 1e-14)
      wt += 0.5 * (a.times[k] - a.times[k - 1]);
    if (k + 1 < count && a.times[k + 1] <= w.t_hi + 1e-14)
      wt += 0.5 * (a.times[k + 1] - a.times[k]);
    const GridFunction fa = of_derivative
                                ? derivative(a.snapshots[k])
                                : a.snapshots[k];
    const GridFunction fb = of_derivative
                                ? derivative(b.snapshots[k])
                                : b.snapshots[k];
    double row = 0.0;
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.x(i);
      if (x < w.x_lo || x > w.x_hi) continue;
      const double d = fa[i] - fb[i];
      row += d * d;
    }
    acc += wt * h * row;
  }
  return std::sqrt(acc);
}

SweepReport run_sweep(const GridFunction& u0, const SweepConfig& cfg) {
  const Grid& grid = u0.grid();
  cfg.validate(grid);

  SweepReport report;
  report.epsilons = cfg.epsilons;

  // Shared output times so differences need no interpolation.
  std::vector<double> times(cfg.snapshot_count);
  for (int k = 0; k < cfg.snapshot_count; ++k)
    times[k] = cfg.base.t_final * (k + 1) / cfg.snapshot_count;

  const double width_floor = cfg.mollify_width_floor_cells * grid.spacing;

  auto member = [&](double eps) {
    SolverConfig sc = cfg.base;
    sc.epsilon = eps;
    sc.output_times = times;
    const double width = std::max(eps, width_floor);
    const GridFunction u0_eps = mollify(u0, mollifier_kernel(width, grid));
    return run(u0_eps, sc);
  };

  const int n = static_cast<int>(cfg.epsilons.size());
  report.trajectories.reserve(n);
  try {
    if (cfg.threads > 1) {
      for (int base = 0; base < n; base += cfg.threads) {
        const int hi = std::min(n, base + cfg.threads);
        std::vector<std::future<Trajectory>> futs;
        for (int k = base; k < hi; ++k)
          futs.push_back(std::async(std::launch::async, member,
                                    cfg.epsilons[k]));
        for (auto& f : futs) report.trajectories.push_back(f.get());
      }
    } else {
      for (int k = 0; k < n; ++k)
        report.trajectories.push_back(member(cfg.epsilons[k]));
    }
  } catch (const BlowUpError& e) {
    report.aborted = true;
    report.abort_reason = e.what();
    return report;
  }

  for (int k = 0; k + 1 < n; ++k) {
    report.d_u.push_back(window_l2_difference(
        report.trajectories[k], report.trajectories[k + 1], cfg.window,
        false));
    report.d_q.push_back(window_l2_difference(
        report.trajectories[k], report.trajectories[k + 1], cfg.window,
        true));
  }

  report.cauchy_monotone = true;
  int slack_used = 0;
  for (std::size_t k = 0; k + 1 < report.d_u.size(); ++k) {
    const bool ok = report.d_u[k + 1] < report.d_u[k] &&
                    report.d_q[k + 1] < report.d_q[k];
    if (!ok) {
      // One non-monotone pair is tolerated when both values are noise-level.
      const double scale = std::max(report.d_u[k], report.d_u[k + 1]);
      if (slack_used == 0 && scale < 1e-6) {
        ++slack_used;
      } else {
        report.cauchy_monotone = false;
      }
    }
  }
  return report;
}

std::vector<CauchyRow> cauchy_table(const SweepReport& report) {
  std::vector<CauchyRow> rows;
  for (std::size_t k = 0; k < report.d_u.size(); ++k) {
    CauchyRow r;
    r.epsilon = report.epsilons[k];
    r.d_u = report.d_u[k];
    r.d_q = report.d_q[k];
    if (k + 1 < report.d_u.size()) {
      r.ratio_u = report.d_u[k] > 0.0 ? report.d_u[k + 1] / report.d_u[k]
                                      : std::nan("");
      r.ratio_q = report.d_q[k] > 0.0 ? report.d_q[k + 1] / report.d_q[k]
                                      : std::nan("");
    } else {
      r.ratio_u = std::nan("");
      r.ratio_q = std::nan("");
    }
    rows.push_back(r);
  }
  return rows;
}

std::string cauchy_table_csv(const std::vector<CauchyRow>& rows) {
  std::ostringstream out;
  out << "epsilon,d_u,d_q,ratio_u,ratio_q\n";
  char buf[256];
  for (const CauchyRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  r.epsilon, r.d_u, r.d_q, r.ratio_u, r.ratio_q);
    out << buf;
  }
  return out.str();
}

}  // namespace gch
