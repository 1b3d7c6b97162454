#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gch/entropy.hpp"
#include "gch/initialdata.hpp"
#include "gch/solver.hpp"

using namespace gch;

namespace {

// Closed-form oracle for the smoothed Kruzkov flux. With r = u - k,
//   int_k^u s (s-k)/sqrt((s-k)^2 + d^2) ds
//     = [ r sqrt(r^2+d^2) - d^2 asinh(r/d) ] / 2 + k [ sqrt(r^2+d^2) - d ].
double kruzkov_flux_oracle(double u, double k, double d) {
  const double r = u - k;
  const double root = std::sqrt(r * r + d * d);
  return 0.5 * (r * root - d * d * std::asinh(r / d)) + k * (root - d);
}

Trajectory small_run(int n, double eps, double t_final, int snapshots) {
  const Grid g(40.0, n);
  SolverConfig c;
  c.epsilon = eps;
  c.t_final = t_final;
  for (int k = 1; k <= snapshots; ++k)
    c.output_times.push_back(t_final * k / snapshots);
  return run(ic_gaussian(0.8, 1.5, g), c);
}

}  // namespace

TEST_CASE("entropy pair point values") {
  const EntropyPair q = pair_quadratic();
  CHECK(q.eta(3.0) == doctest::Approx(4.5));
  CHECK(q.eta_prime(-2.0) == doctest::Approx(-2.0));
  CHECK(q.flux(1.0) == doctest::Approx(1.0 / 3.0));
  CHECK(q.flux(-2.0) == doctest::Approx(-8.0 / 3.0));

  const EntropyPair l = pair_linear();
  CHECK(l.eta(5.0) == doctest::Approx(5.0));
  CHECK(l.eta_prime(5.0) == doctest::Approx(1.0));
  CHECK(l.flux(3.0) == doctest::Approx(4.5));
}

TEST_CASE("smoothed Kruzkov flux matches the closed form") {
  for (double k : {-1.0, 0.0, 0.7}) {
    for (double d : {1e-2, 1e-3}) {
      const EntropyPair p = pair_kruzkov_smooth(k, d);
      CHECK(std::abs(p.flux(k)) < 1e-15);
      CHECK(p.eta(k) == doctest::Approx(0.0));
      for (double u : {-2.0, -0.51, k + 1e-4, 0.33, 1.75}) {
        CAPTURE(k);
        CAPTURE(d);
        CAPTURE(u);
        CHECK(p.flux(u) ==
              doctest::Approx(kruzkov_flux_oracle(u, k, d)).epsilon(1e-9));
      }
      // eta' is the exact derivative of eta.
      const double u = 0.4, step = 1e-6;
      CHECK(p.eta_prime(u) ==
            doctest::Approx((p.eta(u + step) - p.eta(u - step)) / (2 * step))
                .epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(pair_kruzkov_smooth(0.0, 0.0), ConfigError);
}

TEST_CASE("smoothed Kruzkov converges to the sharp flux as delta shrinks") {
  // Sharp Kruzkov flux for q'(u) = u sign(u - k):
  // sign(u - k) (u^2 - k^2) / 2.
  const double k = 0.3, u = -1.2;
  const double sharp = ((u > k) - (u < k)) * 0.5 * (u * u - k * k);
  double prev = 1e300;
  for (double d : {1e-2, 1e-3, 1e-4}) {
    const double err = std::abs(pair_kruzkov_smooth(k, d).flux(u) - sharp);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("test-function derivatives agree with finite differences") {
  TestFunction phi;
  phi.t_center = 0.5;
  phi.t_width = 0.3;
  phi.x_center = 2.0;
  phi.x_width = 4.0;
  const double L = 40.0;
  const double step = 1e-5;
  for (double t : {0.35, 0.5, 0.71}) {
    for (double x : {-1.0, 2.0, 5.3}) {
      const double fd_t =
          (phi.value(t + step, x, L) - phi.value(t - step, x, L)) / (2 * step);
      const double fd_x =
          (phi.value(t, x + step, L) - phi.value(t, x - step, L)) / (2 * step);
      const double fd_xx = (phi.dx(t, x + step, L) - phi.dx(t, x - step, L)) /
                           (2 * step);
      CHECK(phi.dt(t, x, L) == doctest::Approx(fd_t).epsilon(1e-5));
      CHECK(phi.dx(t, x, L) == doctest::Approx(fd_x).epsilon(1e-5));
      CHECK(phi.dxx(t, x, L) == doctest::Approx(fd_xx).epsilon(1e-5));
    }
  }
  // Support boundaries are honored exactly.
  CHECK(phi.value(0.81, 2.0, L) == 0.0);
  CHECK(phi.value(0.5, 6.1, L) == 0.0);
  // Periodic wrap in x.
  CHECK(phi.value(0.5, 2.0 - L, L) == doctest::Approx(phi.value(0.5, 2.0, L)));
}

TEST_CASE("linear entropy reproduces the weak form exactly") {
  Trajectory traj = small_run(256, 0.02, 0.4, 32);
  TestFunction phi;
  phi.t_center = 0.2;
  phi.t_width = 0.15;
  phi.x_center = 0.0;
  phi.x_width = 6.0;
  const ResidualResult w = weak_residual(traj, phi);
  const ResidualResult e = entropy_residual(traj, pair_linear(), phi);
  CHECK(std::abs(w.raw - e.raw) <= 1e-12 * std::max(1.0, w.scale));
  CHECK(std::abs(w.corrected - e.corrected) <=
        1e-12 * std::max(1.0, w.scale));
}

TEST_CASE("inadmissible test functions are rejected") {
  Trajectory traj = small_run(256, 0.02, 0.4, 32);
  TestFunction ok;
  ok.t_center = 0.2;
  ok.t_width = 0.1;
  ok.x_center = 0.0;
  ok.x_width = 5.0;
  CHECK_NOTHROW(weak_residual(traj, ok));

  TestFunction bad = ok;
  bad.t_width = -0.1;
  CHECK_THROWS_AS(weak_residual(traj, bad), ConfigError);
  bad = ok;
  bad.t_center = -0.05;
  CHECK_THROWS_AS(weak_residual(traj, bad), ConfigError);
  bad = ok;
  bad.t_center = 0.39;
  bad.t_width = 0.1;  // support past t_final
  CHECK_THROWS_AS(weak_residual(traj, bad), ConfigError);
  bad = ok;
  bad.x_width = 25.0;  // wider than half the torus
  CHECK_THROWS_AS(weak_residual(traj, bad), ConfigError);
  bad = ok;
  bad.t_width = 0.005;  // fewer than 8 snapshots inside
  CHECK_THROWS_AS(weak_residual(traj, bad), ConfigError);
}

TEST_CASE("initial-trace term switches with the literal flag") {
  Trajectory traj = small_run(256, 0.02, 0.4, 64);
  TestFunction phi;
  phi.t_center = 0.04;  // support reaches below t = 0, trace active
  phi.t_width = 0.12;
  phi.x_center = 0.0;
  phi.x_width = 6.0;

  const EntropyPair lin = pair_linear();
  const ResidualResult d = entropy_residual(traj, lin, phi, false);
  const ResidualResult p = entropy_residual(traj, lin, phi, true);

  // For the linear pair, eta(u0) - eta'(u0) = u0 - 1, so the two variants
  // differ by exactly the weighted initial sum of (u0 - 1).
  const Grid& g = traj.grid;
  double expect = 0.0;
  for (int i = 0; i < g.n; ++i)
    expect += (traj.snapshots[0][i] - 1.0) * phi.value(0.0, g.x(i), g.length);
  expect *= g.spacing;
  CHECK(d.raw - p.raw == doctest::Approx(expect).epsilon(1e-12));

  // Away from t = 0 the flag is inert.
  TestFunction interior = phi;
  interior.t_center = 0.2;
  CHECK(entropy_residual(traj, lin, interior, false).raw ==
        doctest::Approx(entropy_residual(traj, lin, interior, true).raw));
}

TEST_CASE("seeded bumps are deterministic and admissible") {
  const double T = 2.0, L = 40.0;
  const std::vector<TestFunction> a = make_random_bumps(T, L, 12, 42);
  const std::vector<TestFunction> b = make_random_bumps(T, L, 12, 42);
  const std::vector<TestFunction> c = make_random_bumps(T, L, 12, 43);
  REQUIRE(a.size() == 12);
  bool same = true, differs = false;
  for (int k = 0; k < 12; ++k) {
    same = same && a[k].t_center == b[k].t_center &&
           a[k].x_center == b[k].x_center;
    differs = differs || a[k].t_center != c[k].t_center;
    CHECK(a[k].t_center - a[k].t_width >= 0.0);
    CHECK(a[k].t_center + a[k].t_width <= T + 1e-12);
    CHECK(a[k].t_width >= 0.25 * T);
    CHECK(a[k].x_width >= L / 8.0);
    CHECK(a[k].x_width <= L / 4.0 + 1e-12);
  }
  CHECK(same);
  CHECK(differs);
}

TEST_CASE("viscous runs certify against convex entropies") {
  Trajectory traj = small_run(512, 0.05, 0.5, 100);
  const std::vector<EntropyPair> pairs{
      pair_quadratic(), pair_kruzkov_smooth(0.0, 1e-3),
      pair_kruzkov_smooth(0.5, 1e-3)};
  const std::vector<TestFunction> phis = make_random_bumps(0.5, 40.0, 6, 7);
  const CertificationReport rep = certify(traj, pairs, phis, 1e-4);
  CHECK(rep.passed);
  CHECK_FALSE(rep.vacuous);
  CHECK(rep.entries.size() == pairs.size() * phis.size());
  for (const CertificationEntry& e : rep.entries) {
    CHECK(e.entropy.scale > 0.0);
    CHECK(e.passed);
  }

  const std::string js = certification_report_json(rep);
  CHECK(js.find("\"passed\": true") != std::string::npos);
  CHECK(js.find("quadratic") != std::string::npos);
}

TEST_CASE("empty certification inputs are a vacuous pass") {
  Trajectory traj = small_run(256, 0.02, 0.4, 32);
  const CertificationReport rep = certify(traj, {}, {});
  CHECK(rep.passed);
  CHECK(rep.vacuous);
  CHECK(rep.entries.empty());
}

TEST_CASE("the certificate is robust in the smoothing parameter") {
  Trajectory traj = small_run(256, 0.05, 0.4, 40);
  TestFunction phi;
  phi.t_center = 0.2;
  phi.t_width = 0.12;
  phi.x_center = 0.0;
  phi.x_width = 5.0;
  const ResidualResult a =
      entropy_residual(traj, pair_kruzkov_smooth(0.2, 1e-3), phi);
  const ResidualResult b =
      entropy_residual(traj, pair_kruzkov_smooth(0.2, 1e-4), phi);
  CHECK(std::abs(a.corrected - b.corrected) <
        1e-2 * std::max(1.0, a.scale));
}
