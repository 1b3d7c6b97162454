#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gch {

/// Thrown on invalid configuration (bad grid sizes, mismatched fields, ...).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Uniform periodic mesh on [-L/2, L/2) with N cells, x_i = -L/2 + i*h.
struct Grid {
  double length = 0.0;
  int n = 0;
  double spacing = 0.0;

  Grid() = default;
  Grid(double L, int N) : length(L), n(N), spacing(L / N) {
    if (!(L > 0.0)) throw ConfigError("Grid: period length must be positive");
    if (N < 16 || N % 2 != 0)
      throw ConfigError("Grid: cell count must be even and >= 16");
  }

  double x(int i) const { return -0.5 * length + i * spacing; }

  bool operator==(const Grid& o) const {
    return n == o.n && length == o.length;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }
};

/// Real-valued field sampled at the grid nodes. Samples are checked finite at
/// construction; a NaN/Inf anywhere is a hard error.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(const Grid& grid, std::vector<double> values)
      : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.n)
      throw ConfigError("GridFunction: value count does not match grid");
    check_finite();
  }
  GridFunction(const Grid& grid, double fill)
      : grid_(grid), values_(grid.n, fill) {
    check_finite();
  }

  template <class F>
  static GridFunction sample(const Grid& grid, F&& f) {
    std::vector<double> v(grid.n);
    for (int i = 0; i < grid.n; ++i) v[i] = f(grid.x(i));
    return GridFunction(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  int size() const { return grid_.n; }
  double operator[](int i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  void check_finite() const {
    for (double v : values_)
      if (!std::isfinite(v))
        throw std::runtime_error("GridFunction: non-finite sample");
  }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Per-step integration diagnostics recorded by the time loop.
struct StepStats {
  double t = 0.0;
  double dt_used = 0.0;
  double advective_cfl = 0.0;
  double diffusive_cfl = 0.0;
  double rhs_linf = 0.0;
};

/// Time-ordered snapshots of one solver run, plus the cumulative viscous
/// dissipation integral used by the energy-balance check.
struct Trajectory {
  Grid grid;
  double epsilon = 0.0;
  std::vector<double> times;
  std::vector<GridFunction> snapshots;
  std::vector<GridFunction> q_snapshots;   // cached derivatives, may be empty
  std::vector<double> dissipation;         // cumulative int_0^t D dt per snapshot
  std::vector<StepStats> stats;

  int count() const { return static_cast<int>(times.size()); }

  const GridFunction& q(int k) {
    if (q_snapshots.empty()) q_snapshots.reserve(snapshots.size());
    while (static_cast<int>(q_snapshots.size()) <= k)
      q_snapshots.push_back(derivative_of(snapshots[q_snapshots.size()]));
    return q_snapshots[k];
  }

  void validate() const {
    if (times.size() != snapshots.size())
      throw ConfigError("Trajectory: times/snapshots length mismatch");
    if (!times.empty() && times.front() != 0.0)
      throw ConfigError("Trajectory: times must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k)
      if (!(times[k] > times[k - 1]))
        throw ConfigError("Trajectory: times must be strictly increasing");
  }

 private:
  static GridFunction derivative_of(const GridFunction& f);
};

// Second-order central difference with periodic wrap.
GridFunction derivative(const GridFunction& f);

// Standard second-difference stencil (f[i-1] - 2 f[i] + f[i+1]) / h^2.
GridFunction second_difference(const GridFunction& f);

double norm_l1(const GridFunction& f);
double norm_l2(const GridFunction& f);
double norm_linf(const GridFunction& f);
double norm_h1(const GridFunction& f);

// Discrete total variation of the sample sequence (periodic, no h factor).
double seminorm_bv(const GridFunction& f);

// a*f + b*g on a shared grid.
GridFunction lin_comb(double a, const GridFunction& f, double b,
                      const GridFunction& g);
// Pointwise product.
GridFunction multiply(const GridFunction& f, const GridFunction& g);
GridFunction scale(double a, const GridFunction& f);

}  // namespace gch
