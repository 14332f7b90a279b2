#include "tomo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tomo/error.hpp"

namespace tomo {

namespace {

// Legendre P_n(x) and its derivative by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = n == 0 ? 1.0 : p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadratureRule gauss_legendre(int order, double a, double b) {
  require(order >= 1, "gauss_legendre: order must be positive");
  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  if (order == 1) {
    rule.nodes[0] = mid;
    rule.weights[0] = b - a;
    return rule;
  }
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double p = 0.0, dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      legendre(order, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(order, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[order - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[order - 1 - i] = half * w;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(const std::vector<double>& breakpoints, int order,
                                        double max_panel_width) {
  require(breakpoints.size() >= 2, "composite_gauss_legendre: need at least two breakpoints");
  require(max_panel_width > 0.0, "composite_gauss_legendre: panel width must be positive");
  std::vector<double> cuts(breakpoints);
  std::sort(cuts.begin(), cuts.end());
  QuadratureRule rule;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p], b = cuts[p + 1];
    if (!(b > a)) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel_width)));
    const double w = (b - a) / pieces;
    for (int k = 0; k < pieces; ++k) {
      const auto panel = gauss_legendre(order, a + k * w, a + (k + 1) * w);
      rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
      rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
    }
  }
  return rule;
}

QuadratureRule trapezoid(int n, double a, double b) {
  require(n >= 2, "trapezoid: need at least two nodes");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.assign(n, (b - a) / (n - 1));
  for (int i = 0; i < n; ++i) rule.nodes[i] = a + (b - a) * i / (n - 1);
  rule.weights.front() *= 0.5;
  rule.weights.back() *= 0.5;
  return rule;
}

}  // namespace tomo
