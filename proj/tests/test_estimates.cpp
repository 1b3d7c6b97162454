#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gch/estimates.hpp"
#include "gch/initialdata.hpp"
#include "gch/solver.hpp"

using namespace gch;

namespace {

Trajectory frozen_trajectory(const GridFunction& u0,
                             const std::vector<double>& times, double eps) {
  Trajectory t;
  t.grid = u0.grid();
  t.epsilon = eps;
  t.times = times;
  for (std::size_t k = 0; k < times.size(); ++k) t.snapshots.push_back(u0);
  t.dissipation.assign(times.size(), 0.0);
  return t;
}

}  // namespace

TEST_CASE("initial norms of the unit peaked profile") {
  // Closed forms on the line: ||u0||_H1^2 = 2, ||u0'||_L1 = 2, and the slope
  // has a jump of 2 at the crest plus unit rises on both flanks: BV = 4.
  const Grid g(40.0, 4096);
  const InitialNorms n = initial_norms(ic_peakon(1.0, 0.0, g));
  CHECK(n.h1_sq == doctest::Approx(2.0).epsilon(3e-2));
  CHECK(n.l1_q == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(n.bv_q == doctest::Approx(4.0).epsilon(3e-2));
  CHECK(n.h1 == doctest::Approx(std::sqrt(n.h1_sq)));
}

TEST_CASE("report finalization applies the relative tolerance") {
  BoundReport r;
  r.tolerance = 1e-6;
  r.times = {0.0, 1.0, 2.0};
  r.measured = {1.0, 2.0, 3.0};
  r.bound = {1.0, 2.0000001, 2.9999999};
  r.finalize();
  CHECK(r.passed);  // deficit 1e-7 within 1e-6 * bound
  CHECK(r.margin[1] == doctest::Approx(1e-7));

  r.bound[2] = 2.9;  // real violation
  r.finalize();
  CHECK_FALSE(r.passed);
}

TEST_CASE("bound curves carry the stated constants") {
  // The frozen trajectory isolates the bookkeeping: measured values are the
  // initial norms, and every bound must be the advertised affine/quadratic
  // expression in t with coefficients 8, 18, 3, 4 and {6, 6, 1, 6}.
  const Grid g(40.0, 1024);
  const GridFunction u0 = ic_gaussian(0.6, 1.5, g);
  const InitialNorms n0 = initial_norms(u0);
  Trajectory traj = frozen_trajectory(u0, {0.0, 0.5, 1.0, 2.0}, 0.01);

  BoundReport l1 = check_l1(traj, n0);
  BoundReport bv = check_bv(traj, n0);
  BoundReport li = check_linf(traj, n0);
  for (std::size_t k = 0; k < l1.times.size(); ++k) {
    const double t = l1.times[k];
    CHECK(l1.bound[k] ==
          doctest::Approx(n0.l1_q + 8.0 * n0.h1_sq * t).epsilon(1e-14));
    CHECK(bv.bound[k] ==
          doctest::Approx(n0.bv_q + 18.0 * n0.h1_sq * t).epsilon(1e-14));
    CHECK(li.bound[k] == doctest::Approx(bv.bound[k]).epsilon(1e-14));
  }
  CHECK(l1.measured[0] == doctest::Approx(n0.l1_q).epsilon(1e-14));
  CHECK(li.measured[0] ==
        doctest::Approx(norm_linf(derivative(u0))).epsilon(1e-14));
  CHECK(l1.passed);
  CHECK(bv.passed);
  CHECK(li.passed);

  BoundReport tb = check_time_bv(traj, n0);
  REQUIRE(tb.times.size() == 3);  // t = 0 is excluded
  for (std::size_t k = 0; k < tb.times.size(); ++k) {
    const double t = tb.times[k];
    const double affine = n0.bv_q + 18.0 * n0.h1_sq * t;
    CHECK(tb.bound[k] ==
          doctest::Approx(n0.bv_q / t + 3.0 * affine * affine +
                          4.0 * n0.h1_sq)
              .epsilon(1e-14));
  }

  const std::vector<BoundReport> pb = check_p_bounds(traj, n0);
  REQUIRE(pb.size() == 4);
  CHECK(pb[0].bound_name == "p1_l2");
  CHECK(pb[0].bound[0] == doctest::Approx(6.0 * n0.h1_sq));
  CHECK(pb[1].bound_name == "p1_dx_l2");
  CHECK(pb[1].bound[0] == doctest::Approx(6.0 * n0.h1_sq));
  CHECK(pb[2].bound_name == "p2_l2");
  CHECK(pb[2].bound[0] == doctest::Approx(1.0 * n0.h1_sq));
  CHECK(pb[3].bound_name == "p1_linf");
  CHECK(pb[3].bound[0] == doctest::Approx(6.0 * n0.h1_sq));
  for (const BoundReport& r : pb) CHECK(r.passed);
}

TEST_CASE("energy check records the dissipation defect") {
  const Grid g(40.0, 512);
  SolverConfig c;
  c.epsilon = 0.05;
  c.t_final = 0.4;
  c.snapshot_stride = 5;
  Trajectory traj = run(ic_gaussian(0.8, 1.5, g), c);
  BoundReport r = check_h1(traj);
  CHECK(r.passed);
  CHECK(r.bound_name == "h1_energy");
  REQUIRE(r.defect.size() == r.times.size());
  CHECK(r.defect[0] == doctest::Approx(0.0));
  // With the dissipation accounted, the defect is far below the raw decay.
  const double decay = r.bound.back() - r.measured.back();
  CHECK(decay > 0.0);
  CHECK(r.defect.back() < 0.05 * decay);
}

TEST_CASE("energy check fails on manufactured growth") {
  const Grid g(40.0, 256);
  const GridFunction u0 = ic_gaussian(0.5, 2.0, g);
  Trajectory traj = frozen_trajectory(u0, {0.0, 1.0}, 0.01);
  traj.snapshots[1] = scale(1.1, u0);  // energy up 21 percent
  BoundReport r = check_h1(traj);
  CHECK_FALSE(r.passed);
}

TEST_CASE("full suite passes on a genuine viscous run") {
  const Grid g(40.0, 1024);
  const GridFunction u0 = ic_peakon(0.5, 0.0, g);
  const MollifierKernel kern = mollifier_kernel(0.2, g);
  const InitialNorms n0 = initial_norms(u0);
  SolverConfig c;
  c.epsilon = 0.02;
  c.t_final = 0.5;
  c.snapshot_stride = 20;
  Trajectory traj = run(mollify(u0, kern), c);

  CHECK(check_h1(traj).passed);
  CHECK(check_l1(traj, n0).passed);
  CHECK(check_bv(traj, n0).passed);
  CHECK(check_linf(traj, n0).passed);
  CHECK(check_time_bv(traj, n0).passed);
  for (const BoundReport& r : check_p_bounds(traj, n0)) CHECK(r.passed);
}

TEST_CASE("blow-up functional") {
  const Grid g(40.0, 256);
  CHECK(blowup_functional(GridFunction(g, 3.0)) == 0.0);
  const GridFunction u = ic_gaussian(1.0, 2.0, g);
  CHECK(blowup_functional(u) ==
        doctest::Approx(norm_linf(derivative(u)) +
                        norm_linf(derivative(derivative(u)))));
}

TEST_CASE("report serialization carries the series") {
  BoundReport r;
  r.bound_name = "demo";
  r.tolerance = 1e-6;
  r.times = {0.0, 1.0};
  r.measured = {0.5, 0.6};
  r.bound = {1.0, 1.5};
  r.finalize();
  const std::string js = bound_report_json(r);
  CHECK(js.find("\"demo\"") != std::string::npos);
  CHECK(js.find("\"passed\": true") != std::string::npos);
  const std::string csv = bound_report_csv(r);
  CHECK(csv.rfind("t,measured,bound,margin\n", 0) == 0);
  CHECK(csv.find("0.5") != std::string::npos);
}
