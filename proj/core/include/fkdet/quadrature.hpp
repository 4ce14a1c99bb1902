#pragma once

#include <functional>
#include <vector>

namespace fkdet {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule computed by Newton iteration on P_n.
GaussLegendre gauss_legendre(int n);

struct QuadratureOptions {
  int panels = 64;
  int points_per_panel = 16;
  double tolerance = 1e-8;
  int max_levels = 60;
};

/// Integral of f over [0, 1]. Uniform panels cover [0, 1 - h]; the last
/// panel is split geometrically toward t = 1, one more level at a time,
/// until two successive estimates differ by less than the tolerance.
/// Throws ConvergenceError when max_levels is reached first.
double integrate_unit_interval(const std::function<double(double)>& f,
                               const QuadratureOptions& options = {});

}  // namespace fkdet
