#include "fkdet/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fkdet/errors.hpp"

namespace fkdet {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs n >= 1");
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

namespace {

double panel(const std::function<double(double)>& f, const GaussLegendre& rule, double a,
             double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

}  // namespace

double integrate_unit_interval(const std::function<double(double)>& f,
                               const QuadratureOptions& options) {
  if (options.panels < 1) throw std::invalid_argument("need at least one panel");
  const GaussLegendre rule = gauss_legendre(options.points_per_panel);
  const double h = 1.0 / options.panels;

  double body = 0.0;
  for (int i = 0; i + 1 < options.panels; ++i) body += panel(f, rule, i * h, (i + 1) * h);

  // Graded panels [1-h, 1-h/2], [1-h/2, 1-h/4], ... and a final one up to 1.
  double graded = 0.0;
  double left = 1.0 - h;
  double width = h;
  double previous = body + panel(f, rule, left, 1.0);
  for (int level = 1; level <= options.max_levels; ++level) {
    width *= 0.5;
    graded += panel(f, rule, left, left + width);
    left += width;
    const double estimate = body + graded + panel(f, rule, left, 1.0);
    if (std::abs(estimate - previous) < options.tolerance) return estimate;
    previous = estimate;
  }
  throw ConvergenceError("quadrature did not converge after " +
                         std::to_string(options.max_levels) + " refinements near t = 1");
}

}  // namespace fkdet
