#include "gch/grid.hpp"

#include <algorithm>
#include <cmath>

namespace gch {

GridFunction Trajectory::derivative_of(const GridFunction& f) {
  return derivative(f);
}

GridFunction derivative(const GridFunction& f) {
  const int n = f.size();
  const double inv2h = 1.0 / (2.0 * f.grid().spacing);
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1 == n) ? 0 : i + 1;
    const int im = (i == 0) ? n - 1 : i - 1;
    d[i] = (f[ip] - f[im]) * inv2h;
  }
  return GridFunction(f.grid(), std::move(d));
}

GridFunction second_difference(const GridFunction& f) {
  const int n = f.size();
  const double h = f.grid().spacing;
  const double invh2 = 1.0 / (h * h);
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1 == n) ? 0 : i + 1;
    const int im = (i == 0) ? n - 1 : i - 1;
    d[i] = ((f[im] - f[i]) + (f[ip] - f[i])) * invh2;
  }
  return GridFunction(f.grid(), std::move(d));
}

double norm_l1(const GridFunction& f) {
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) s += std::abs(f[i]);
  return f.grid().spacing * s;
}

double norm_l2(const GridFunction& f) {
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) s += f[i] * f[i];
  return std::sqrt(f.grid().spacing * s);
}

double norm_linf(const GridFunction& f) {
  double m = 0.0;
  for (int i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
  return m;
}

double norm_h1(const GridFunction& f) {
  const double a = norm_l2(f);
  const double b = norm_l2(derivative(f));
  return std::sqrt(a * a + b * b);
}

double seminorm_bv(const GridFunction& f) {
  const int n = f.size();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const int ip = (i + 1 == n) ? 0 : i + 1;
    s += std::abs(f[ip] - f[i]);
  }
  return s;
}

GridFunction lin_comb(double a, const GridFunction& f, double b,
                      const GridFunction& g) {
  if (f.grid() != g.grid()) throw ConfigError("lin_comb: grid mismatch");
  std::vector<double> v(f.size());
  for (int i = 0; i < f.size(); ++i) v[i] = a * f[i] + b * g[i];
  return GridFunction(f.grid(), std::move(v));
}

GridFunction multiply(const GridFunction& f, const GridFunction& g) {
  if (f.grid() != g.grid()) throw ConfigError("multiply: grid mismatch");
  std::vector<double> v(f.size());
  for (int i = 0; i < f.size(); ++i) v[i] = f[i] * g[i];
  return GridFunction(f.grid(), std::move(v));
}

GridFunction scale(double a, const GridFunction& f) {
  std::vector<double> v(f.size());
  for (int i = 0; i < f.size(); ++i) v[i] = a * f[i];
  return GridFunction(f.grid(), std::move(v));
}

}  // namespace gch
