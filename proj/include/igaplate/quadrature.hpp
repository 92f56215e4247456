#pragma once

#include <cstddef>
#include <vector>

namespace igaplate {

// One-dimensional Gauss-Legendre rule on [0, 1].
struct QuadratureRule1D {
  std::vector<double> points;
  std::vector<double> weights;
  int size() const { return static_cast<int>(points.size()); }
};

// Tensor-product Gauss-Legendre rule on [0, 1]^2, points stored flat.
struct QuadratureRule {
  std::vector<double> xi;
  std::vector<double> eta;
  std::vector<double> weights;
  int size() const { return static_cast<int>(weights.size()); }
};

// n-point Gauss-Legendre rule, exact for polynomials of degree 2n - 1.
QuadratureRule1D gauss_legendre(int n);

// Full rule for a (p, q) tensor-product basis: (p+1) x (q+1) points.
QuadratureRule rule_for(int degree_xi, int degree_eta);

}  // namespace igaplate
