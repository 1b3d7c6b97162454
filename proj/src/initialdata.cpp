#include "gch/initialdata.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gch {

double bump_profile(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(1.0 / (x * x - 1.0));
}

MollifierKernel mollifier_kernel(double epsilon, const Grid& grid) {
  const double h = grid.spacing;
  if (!(epsilon > 2.0 * h))
    throw ConfigError("mollifier_kernel: width " + std::to_string(epsilon) +
                      " is under-resolved (need epsilon > 2h = " +
                      std::to_string(2.0 * h) + ")");
  if (!(epsilon < 0.5 * grid.length))
    throw ConfigError("mollifier_kernel: width exceeds half the period");

  MollifierKernel k;
  k.epsilon = epsilon;
  k.half_width = static_cast<int>(std::ceil(epsilon / h));

  // Raw samples of (1/eps) phi(x/eps); the normalization constant is fixed
  // afterwards so that h * sum = 1 holds exactly on this grid.
  std::vector<double> raw(2 * k.half_width + 1);
  double mass = 0.0;
  for (int o = -k.half_width; o <= k.half_width; ++o) {
    raw[o + k.half_width] = bump_profile(o * h / epsilon) / epsilon;
    mass += raw[o + k.half_width];
  }
  mass *= h;
  if (!(mass > 0.0)) throw ConfigError("mollifier_kernel: empty support");

  k.weights.resize(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    k.weights[i] = h * raw[i] / mass;

  std::vector<double> samples(grid.n, 0.0);
  const int center = grid.n / 2;  // x(center) = 0
  for (int o = -k.half_width; o <= k.half_width; ++o) {
    const int i = ((center + o) % grid.n + grid.n) % grid.n;
    samples[i] = raw[o + k.half_width] / mass;
  }
  k.samples = GridFunction(grid, std::move(samples));
  return k;
}

GridFunction mollify(const GridFunction& u0, const MollifierKernel& kernel) {
  if (u0.grid() != kernel.samples.grid())
    throw ConfigError("mollify: grid mismatch");
  const int n = u0.size();
  std::vector<double> v(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int o = -kernel.half_width; o <= kernel.half_width; ++o) {
      const int j = ((i - o) % n + n) % n;
      s += kernel.weights[o + kernel.half_width] * u0[j];
    }
    v[i] = s;
  }
  return GridFunction(u0.grid(), std::move(v));
}

static double wrapped(double dx, double L) { return std::remainder(dx, L); }

GridFunction ic_peakon(double c, double x0, const Grid& grid) {
  if (c == 0.0) throw ConfigError("ic_peakon: amplitude must be nonzero");
  return GridFunction::sample(grid, [&](double x) {
    return c * std::exp(-std::abs(wrapped(x - x0, grid.length)));
  });
}

GridFunction ic_gaussian(double a, double s, const Grid& grid) {
  if (a != 0.0 && !(s > 2.0 * grid.spacing))
    throw ConfigError("ic_gaussian: width under-resolved");
  return GridFunction::sample(grid, [&](double x) {
    const double r = wrapped(x, grid.length);
    return a * std::exp(-r * r / (2.0 * s * s));
  });
}

GridFunction ic_from_csv(const std::string& path, const Grid& grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError("ic_from_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,value", 0) != 0)
    throw ConfigError("ic_from_csv: missing x,value header in " + path);
  std::vector<double> v;
  v.reserve(grid.n);
  int i = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string xs, vs;
    if (!std::getline(row, xs, ',') || !std::getline(row, vs))
      throw ConfigError("ic_from_csv: malformed row '" + line + "'");
    double x, val;
    try {
      x = std::stod(xs);
      val = std::stod(vs);
    } catch (const std::exception&) {
      throw ConfigError("ic_from_csv: malformed number in '" + line + "'");
    }
    if (i >= grid.n) throw ConfigError("ic_from_csv: too many rows for grid");
    if (std::abs(x - grid.x(i)) > 1e-12)
      throw ConfigError("ic_from_csv: node " + std::to_string(i) +
                        " does not match the grid");
    v.push_back(val);
    ++i;
  }
  if (i != grid.n) throw ConfigError("ic_from_csv: too few rows for grid");
  return GridFunction(grid, std::move(v));
}

void write_csv(const GridFunction& f, const std::string& path) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  std::fputs("x,value\n", out);
  for (int i = 0; i < f.size(); ++i)
    std::fprintf(out, "%.17g,%.17g\n", f.grid().x(i), f[i]);
  std::fclose(out);
}

}  // namespace gch
