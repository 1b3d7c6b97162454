#pragma once

#include <string>
#include <vector>

#include "gch/grid.hpp"

namespace gch {

/// Compactly supported bump profile e^{1/(x^2-1)} on |x| < 1, zero outside.
double bump_profile(double x);

/// Unit-mass smoothing kernel of width epsilon, sampled on the grid and
/// renormalized so that h * sum(samples) = 1.
struct MollifierKernel {
  double epsilon = 0.0;
  GridFunction samples;                 // centered at x = 0
  std::vector<double> weights;          // h * phi_eps(o*h) per support offset
  int half_width = 0;                   // offsets run over [-half_width, half_width]
};

MollifierKernel mollifier_kernel(double epsilon, const Grid& grid);

/// Periodic discrete convolution with the kernel.
GridFunction mollify(const GridFunction& u0, const MollifierKernel& kernel);

/// Peaked profile c * e^{-|x - x0|} with periodic distance.
GridFunction ic_peakon(double c, double x0, const Grid& grid);

/// Gaussian a * e^{-x^2 / (2 s^2)}.
GridFunction ic_gaussian(double a, double s, const Grid& grid);

/// Read a field from CSV `x,value`; node coordinates must match the grid to
/// within 1e-12.
GridFunction ic_from_csv(const std::string& path, const Grid& grid);

/// Write `x,value` rows at 17 significant digits.
void write_csv(const GridFunction& f, const std::string& path);

}  // namespace gch
