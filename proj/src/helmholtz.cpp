#include "gch/helmholtz.hpp"

#include <cmath>

namespace gch {

HelmholtzSolver::HelmholtzSolver(const Grid& grid) : grid_(grid) {
  const double h = grid_.spacing;
  const double invh2 = 1.0 / (h * h);
  diag_ = 1.0 + 2.0 * invh2;
  off_ = -invh2;
  gamma_ = -diag_;

  const int n = grid_.n;
  inv_piv_.resize(n);
  c_.resize(n);

  // T equals the cyclic matrix with the corner entries folded into the first
  // and last diagonal; A = T + u v^T with u = (gamma,0,...,0,off) and
  // v = (1,0,...,0,off/gamma).
  auto t_diag = [&](int i) {
    if (i == 0) return diag_ - gamma_;
    if (i == n - 1) return diag_ - off_ * off_ / gamma_;
    return diag_;
  };

  double piv = t_diag(0);
  inv_piv_[0] = 1.0 / piv;
  c_[0] = off_ * inv_piv_[0];
  for (int i = 1; i < n; ++i) {
    piv = t_diag(i) - off_ * c_[i - 1];
    inv_piv_[i] = 1.0 / piv;
    c_[i] = off_ * inv_piv_[i];
  }

  // z = T^{-1} u.
  z_.assign(n, 0.0);
  z_[0] = gamma_ * inv_piv_[0];
  for (int i = 1; i < n; ++i) {
    const double rhs = (i == n - 1) ? off_ : 0.0;
    z_[i] = (rhs - off_ * z_[i - 1]) * inv_piv_[i];
  }
  for (int i = n - 2; i >= 0; --i) z_[i] -= c_[i] * z_[i + 1];

  denom_ = 1.0 + z_[0] + (off_ / gamma_) * z_[n - 1];
}

void HelmholtzSolver::solve_raw(const std::vector<double>& f,
                                std::vector<double>& v) const {
  const int n = grid_.n;
  v.resize(n);
  v[0] = f[0] * inv_piv_[0];
  for (int i = 1; i < n; ++i) v[i] = (f[i] - off_ * v[i - 1]) * inv_piv_[i];
  for (int i = n - 2; i >= 0; --i) v[i] -= c_[i] * v[i + 1];

  const double factor = (v[0] + (off_ / gamma_) * v[n - 1]) / denom_;
  for (int i = 0; i < n; ++i) v[i] -= factor * z_[i];
}

GridFunction HelmholtzSolver::green_convolve(const GridFunction& f) const {
  if (f.grid() != grid_)
    throw ConfigError("HelmholtzSolver: field is on a different grid");
  const int n = grid_.n;
  const std::vector<double>& rhs = f.values();

  std::vector<double> v;
  solve_raw(rhs, v);

  // One refinement pass against the cyclic operator.
  std::vector<double> r(n), d;
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1 == n) ? 0 : i + 1;
    const int im = (i == 0) ? n - 1 : i - 1;
    r[i] = rhs[i] - (diag_ * v[i] + off_ * (v[im] + v[ip]));
  }
  solve_raw(r, d);
  for (int i = 0; i < n; ++i) v[i] += d[i];

  return GridFunction(grid_, std::move(v));
}

GridFunction HelmholtzSolver::green_dx(const GridFunction& f) const {
  return derivative(green_convolve(f));
}

GridFunction HelmholtzSolver::green_dxx(const GridFunction& f) const {
  return lin_comb(1.0, green_convolve(f), -1.0, f);
}

}  // namespace gch
