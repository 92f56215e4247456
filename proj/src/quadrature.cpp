#include "igaplate/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace igaplate {

QuadratureRule1D gauss_legendre(int n) {
  if (n < 1 || n > 64)
    throw std::invalid_argument("gauss_legendre: point count must be in [1, 64]");

  QuadratureRule1D rule;
  rule.points.resize(n);
  rule.weights.resize(n);

  // Newton iteration on the Legendre polynomial P_n over [-1, 1]; nodes are
  // symmetric, so only the lower half is computed.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // three-term recurrence for P_n(x) and P_n'(x)
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = -p1 / dp;
      x += dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map from [-1, 1] to [0, 1]
    rule.points[i] = 0.5 * (1.0 + x);
    rule.points[n - 1 - i] = 0.5 * (1.0 - x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

QuadratureRule rule_for(int degree_xi, int degree_eta) {
  if (degree_xi < 0 || degree_eta < 0)
    throw std::invalid_argument("rule_for: degrees must be nonnegative");
  const QuadratureRule1D gx = gauss_legendre(degree_xi + 1);
  const QuadratureRule1D ge = gauss_legendre(degree_eta + 1);
  QuadratureRule rule;
  const int n = gx.size() * ge.size();
  rule.xi.reserve(n);
  rule.eta.reserve(n);
  rule.weights.reserve(n);
  for (int j = 0; j < ge.size(); ++j) {
    for (int i = 0; i < gx.size(); ++i) {
      rule.xi.push_back(gx.points[i]);
      rule.eta.push_back(ge.points[j]);
      rule.weights.push_back(gx.weights[i] * ge.weights[j]);
    }
  }
  return rule;
}

}  // namespace igaplate
