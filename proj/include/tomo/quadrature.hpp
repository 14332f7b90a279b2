#pragma once

#include <vector>

namespace tomo {

/// Nodes and weights of a 1-D quadrature rule on an interval.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule with `order` points on [a, b].
QuadratureRule gauss_legendre(int order, double a, double b);

/// Composite Gauss-Legendre: the breakpoints split [front, back] into panels,
/// each further divided so no panel is wider than `max_panel_width`.
QuadratureRule composite_gauss_legendre(const std::vector<double>& breakpoints, int order,
                                        double max_panel_width);

/// Uniform trapezoid rule with n >= 2 nodes on [a, b].
QuadratureRule trapezoid(int n, double a, double b);

}  // namespace tomo
