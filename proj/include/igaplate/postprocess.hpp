#pragma once

#include <Eigen/Core>
#include <vector>

#include "igaplate/analytic.hpp"
#include "igaplate/assembly.hpp"
#include "igaplate/geometry.hpp"

namespace igaplate {

// Values and physical-space first derivatives of the solved fields at one
// parametric point of one patch.
struct FieldSample {
  Eigen::Vector2d x = Eigen::Vector2d::Zero();
  double u = 0.0, psi1 = 0.0, psi2 = 0.0;
  Eigen::Vector2d du = Eigen::Vector2d::Zero();
  Eigen::Vector2d dpsi1 = Eigen::Vector2d::Zero();
  Eigen::Vector2d dpsi2 = Eigen::Vector2d::Zero();
  double u_check = 0.0;  // deflection with the divergence correction applied
  Eigen::Vector2d phi = Eigen::Vector2d::Zero();  // du + psi, fiber shear angle
};

// A solved coefficient vector bound to its model and dof numbering.  The
// model must outlive the field; the dof map and coefficients are copied in.
// Optionally carries control-point coefficients of the projected deflection
// gradient for smoothed shear-angle evaluation.
class SolutionField {
 public:
  SolutionField(const MultipatchModel& model, DofMap dofs, Eigen::VectorXd coeffs);

  const MultipatchModel& model() const { return *model_; }
  const DofMap& dofs() const { return dofs_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  bool has_recovered_gradient() const { return gx_.size() > 0; }

  FieldSample at(int patch, double xi, double eta) const;

  // smoothed shear angle from the projected gradient coefficients;
  // requires recover_gradient(*this) first
  Eigen::Vector2d recovered_phi(int patch, double xi, double eta) const;

 private:
  const MultipatchModel* model_;
  DofMap dofs_;
  Eigen::VectorXd coeffs_;
  Eigen::VectorXd gx_, gy_;  // projected deflection gradient, merged numbering

  friend void recover_gradient(SolutionField& field);
};

// Global L2 projection of the deflection gradient onto the solution space:
// one mass-matrix solve per component, no boundary conditions.
void recover_gradient(SolutionField& field);

// Normalized squared-error ratio  integral (u_c - u_a)^2 / integral u_a^2
// over the whole model, by full quadrature on the solution mesh.  Reported
// as the ratio itself (no square root).  `corrected` compares the corrected
// deflection instead of the raw one.
double l2_error(const SolutionField& field, const AnalyticSolution& oracle,
                bool corrected = false);

struct LineSample {
  double s = 0.0;  // arc coordinate: radius on disks, axial position on strips
  double u = 0.0, u_check = 0.0;
  double psi = 0.0;      // rotation component along the line
  double phi = 0.0;      // direct shear angle along the line
  double phi_rec = 0.0;  // smoothed shear angle (falls back to phi when absent)
};

// n samples along the +x radial ray of the five-patch disk, r in [0, R].
std::vector<LineSample> sample_radial(const SolutionField& field, int n);

// n samples along the centerline y = 0 of a single-patch rectangle.
std::vector<LineSample> sample_centerline(const SolutionField& field, int n);

// Pointwise residual of the strong-form equations at interior sample points
// (m x m per element), for uniformly loaded models with degree >= 2.
struct ResidualStats {
  double max_u = 0.0, mean_u = 0.0;
  double max_rot = 0.0, mean_rot = 0.0;
  int samples = 0;
};
ResidualStats strong_residual(const SolutionField& field, int m = 3);

// One refinement level of a convergence study.
struct ConvergenceRow {
  int dofs = 0;
  double h = 0.0;                // representative element size
  double probe = 0.0;            // probe-point deflection
  double probe_rel_error = 0.0;  // against the analytic value
  double l2 = 0.0;               // squared-error ratio of u
  double l2_check = 0.0;         // squared-error ratio of the corrected deflection
};

// Least-squares slope of log(l2) vs log(h) over the last three rows above
// the round-off floor.  Needs at least three rows and two usable points.
double fit_slope(const std::vector<ConvergenceRow>& rows);

}  // namespace igaplate
