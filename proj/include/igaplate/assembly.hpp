#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <iosfwd>
#include <vector>

#include "igaplate/geometry.hpp"
#include "igaplate/splines.hpp"

namespace igaplate {

// Global numbering of the three fields (deflection u, rotations psi1, psi2)
// over interface-merged control points.  Field blocks are contiguous: dof =
// field * num_points + point.
struct DofMap {
  int num_points = 0;
  std::vector<int> patch_offset;          // flat point = offset[patch] + net index
  std::vector<int> merged;                // flat point -> merged point id
  std::vector<Eigen::Vector2d> position;  // merged point -> control position
  std::vector<bool> fixed;                // full dof -> constrained to zero
  std::vector<int> free_index;            // full dof -> free index or -1
  int num_free = 0;

  int num_dofs() const { return 3 * num_points; }
  int point_id(int patch, int net_index) const {
    return merged[patch_offset[patch] + net_index];
  }
  int dof(int field, int point) const { return field * num_points + point; }
};

DofMap build_dofmap(const MultipatchModel& model);

// Dense element contribution: blocks K[row_field][col_field] and load vectors
// F[field] over the cell's support points (merged ids in `points`).
struct ElementMatrices {
  std::vector<int> points;
  Eigen::MatrixXd K[3][3];
  Eigen::VectorXd F[3];
};

ElementMatrices element_stiffness(const ElementCell& cell, const MultipatchModel& model,
                                  const DofMap& dofs, int patch);
ElementMatrices element_load(const ElementCell& cell, const MultipatchModel& model,
                             const DofMap& dofs, int patch);

// Symmetric system over the free dofs, with homogeneous Dirichlet dofs
// eliminated.  The matrix is stored fully (both triangles).
struct AssembledSystem {
  DofMap dofs;
  Eigen::SparseMatrix<double> matrix;  // num_free x num_free
  Eigen::VectorXd rhs;

  // scatter a free-dof vector back to the full numbering, zeros on fixed dofs
  Eigen::VectorXd expand(const Eigen::VectorXd& free_values) const;
};

AssembledSystem assemble(const MultipatchModel& model);

// coefficient vector of the rigid family u = c0 - a1 x - a2 y, psi = (a1, a2);
// exact for any patch by the linear-precision property of the rational basis
Eigen::VectorXd rigid_mode(const DofMap& dofs, double c0, double a1, double a2);

// quadrature of twice the plate energy density of the discrete field given by
// full-numbering coefficients; equals v^T K v on an unconstrained model
double energy_product(const MultipatchModel& model, const DofMap& dofs,
                      const Eigen::VectorXd& coeffs);

// coordinate text dump (row, col, value per line) of the free-dof matrix
void dump_matrix(const AssembledSystem& system, std::ostream& os);

}  // namespace igaplate
