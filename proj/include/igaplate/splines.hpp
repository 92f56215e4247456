#pragma once

#include <Eigen/Dense>
#include <vector>

namespace igaplate {

// Open (clamped) knot vector with basis evaluation routines following
// "The NURBS Book", Piegl & Tiller, 2nd ed. (algorithms A2.1 - A2.3).
class KnotVector {
 public:
  KnotVector(int degree, std::vector<double> knots);

  int degree() const { return degree_; }
  int num_basis() const { return static_cast<int>(knots_.size()) - degree_ - 1; }
  int num_spans() const;  // nonempty spans only
  const std::vector<double>& knots() const { return knots_; }
  double front() const { return knots_.front(); }
  double back() const { return knots_.back(); }

  // knot span index i with knots[i] <= xi < knots[i+1]; the right end of the
  // parameter range maps to the last nonempty span.
  int find_span(double xi) const;

  // values of the degree+1 functions that do not vanish on the span (A2.2)
  void basis_funs(int span, double xi, double* out) const;

  // values plus the first `nders` derivative rows, (nders+1) x (degree+1) (A2.3)
  void basis_ders(int span, double xi, int nders, Eigen::MatrixXd& out) const;

  // Greville abscissa of basis function i
  double greville(int i) const;

  // indices of the nonempty spans, left to right
  std::vector<int> nonempty_spans() const;

  // Bezier extraction operator C for every nonempty span: the basis functions
  // restricted to the span equal C times the Bernstein basis on [0, 1].
  std::vector<Eigen::MatrixXd> extraction_operators() const;

 private:
  int degree_;
  std::vector<double> knots_;
};

// Tensor-product net of 2-D control points with rational weights; the first
// parametric index runs fastest in the flat ordering.
class ControlNet {
 public:
  ControlNet(int n1, int n2);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int size() const { return n1_ * n2_; }
  int index(int i, int j) const { return j * n1_ + i; }

  Eigen::Vector2d& point(int i, int j) { return points_[index(i, j)]; }
  const Eigen::Vector2d& point(int i, int j) const { return points_[index(i, j)]; }
  Eigen::Vector2d& point(int a) { return points_[a]; }
  const Eigen::Vector2d& point(int a) const { return points_[a]; }
  double& weight(int i, int j) { return weights_[index(i, j)]; }
  double weight(int i, int j) const { return weights_[index(i, j)]; }
  double& weight(int a) { return weights_[a]; }
  double weight(int a) const { return weights_[a]; }

 private:
  int n1_, n2_;
  std::vector<Eigen::Vector2d> points_;
  std::vector<double> weights_;
};

// Basis values at one parametric point.  Row layout by derivative request k:
//   k = 0: [N]
//   k = 1: [N, N_xi, N_eta]
//   k = 2: [N, N_xi, N_eta, N_xixi, N_xieta, N_etaeta]
// Columns are the (p+1)(q+1) functions supported on the containing cell, in
// the order of `indices` (flattened control-net indices).
struct BasisEval {
  std::vector<int> indices;
  Eigen::MatrixXd d;
};

// Geometry map value and derivatives at one parametric point.
struct SurfacePoint {
  Eigen::Vector2d x = Eigen::Vector2d::Zero();
  Eigen::Matrix2d jac = Eigen::Matrix2d::Zero();  // jac(i, a) = dx_i / dxi_a
  // second derivatives x_{,11}, x_{,12}, x_{,22}; filled for k = 2 only
  Eigen::Vector2d d2[3] = {Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero(),
                           Eigen::Vector2d::Zero()};
};

class ElementCell;

// A rational (NURBS) tensor-product surface patch over [front,back]^2 of its
// two knot vectors.
class PatchSurface {
 public:
  PatchSurface(KnotVector kv1, KnotVector kv2, ControlNet net);

  const KnotVector& kv(int dir) const { return dir == 0 ? kv1_ : kv2_; }
  const ControlNet& net() const { return net_; }
  int degree(int dir) const { return kv(dir).degree(); }
  int num_cells() const { return kv1_.num_spans() * kv2_.num_spans(); }

  // rational basis with derivatives up to order k (k <= 2)
  BasisEval basis_at(double xi, double eta, int k) const;

  // geometry map; k = 0 computes the position only
  Eigen::Vector2d eval(double xi, double eta) const;
  SurfacePoint eval_derivs(double xi, double eta, int k) const;

  // refinement: geometry is preserved exactly in both operations
  PatchSurface with_inserted_knots(int dir, const std::vector<double>& values) const;
  PatchSurface elevated(int dir, int times) const;
  PatchSurface uniformly_refined(int times) const;  // bisect every span, both dirs

  std::vector<ElementCell> element_cells() const;

  double diameter() const;  // control-net bounding-box diagonal

 private:
  KnotVector kv1_, kv2_;
  ControlNet net_;
};

// One nonempty knot-span rectangle of a patch.  Evaluation is local: it uses
// only the cell's Bezier extraction operators, support weights and support
// control points, and agrees pointwise with the patch-level routines.
class ElementCell {
 public:
  ElementCell(const PatchSurface& patch, int span1, int span2,
              const Eigen::MatrixXd& C1, const Eigen::MatrixXd& C2);

  double xi0() const { return xi0_; }
  double xi1() const { return xi1_; }
  double eta0() const { return eta0_; }
  double eta1() const { return eta1_; }
  double parametric_area() const { return (xi1_ - xi0_) * (eta1_ - eta0_); }
  const std::vector<int>& support() const { return support_; }

  BasisEval basis_at(double xi, double eta, int k) const;
  SurfacePoint geometry_at(double xi, double eta, int k) const;

 private:
  int p_, q_;
  double xi0_, xi1_, eta0_, eta1_;
  std::vector<int> support_;
  Eigen::MatrixXd C1_, C2_;
  Eigen::VectorXd w_;
  std::vector<Eigen::Vector2d> pts_;
};

}  // namespace igaplate
