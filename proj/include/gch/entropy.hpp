#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gch/grid.hpp"
#include "gch/solver.hpp"

namespace gch {

/// Convex C^2 entropy with flux q satisfying q'(u) = u eta'(u).
struct EntropyPair {
  std::function<double(double)> eta;
  std::function<double(double)> eta_prime;
  std::function<double(double)> flux;
  std::string label;
};

// eta(u) = u^2/2, flux u^3/3.
EntropyPair pair_quadratic();

// eta(u) = u, flux u^2/2; degenerates to the weak form (used as an identity
// check, eta'' = 0 is still admissible).
EntropyPair pair_linear();

// Smoothed Kruzkov entropy eta(u) = sqrt((u-k)^2 + delta^2) - delta; the flux
// is built by adaptive quadrature of s eta'(s) cached on a lattice.
EntropyPair pair_kruzkov_smooth(double k, double delta);

/// Separable space-time bump psi((t-tc)/tw) psi((x-xc)/xw) from the mollifier
/// profile, identically zero outside its box. Support may touch t = 0 (the
/// initial-trace term is then active) but never exceeds t_final.
struct TestFunction {
  double t_center = 0.0;
  double t_width = 0.0;
  double x_center = 0.0;
  double x_width = 0.0;

  double value(double t, double x, double period) const;
  double dt(double t, double x, double period) const;
  double dx(double t, double x, double period) const;
  double dxx(double t, double x, double period) const;
};

struct ResidualResult {
  double raw = 0.0;        // viscous terms left out (the eps = 0 identity)
  double corrected = 0.0;  // raw + eps * int int (field) phi_xx
  double scale = 0.0;      // integral of |integrand|, for relative tolerances
};

ResidualResult weak_residual(Trajectory& traj, const TestFunction& phi);

ResidualResult entropy_residual(Trajectory& traj, const EntropyPair& pair,
                                const TestFunction& phi,
                                bool paper_literal_initial = false);

struct CertificationEntry {
  std::string pair_label;
  TestFunction phi;
  ResidualResult weak;
  ResidualResult entropy;
  bool passed = false;
};

struct CertificationReport {
  double tolerance = 1e-6;
  bool passed = false;
  bool vacuous = false;
  std::vector<CertificationEntry> entries;
};

CertificationReport certify(Trajectory& traj,
                            const std::vector<EntropyPair>& pairs,
                            const std::vector<TestFunction>& phis,
                            double tolerance = 1e-6,
                            bool paper_literal_initial = false);

// Seeded admissible bumps for a trajectory window [0, t_final] x torus.
std::vector<TestFunction> make_random_bumps(double t_final, double period,
                                            int count, unsigned seed);

std::string certification_report_json(const CertificationReport& r);

}  // namespace gch
