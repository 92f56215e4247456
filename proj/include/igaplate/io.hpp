#pragma once

#include <Eigen/Core>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "igaplate/postprocess.hpp"

namespace igaplate {

// Sampled visualization data: physical points, quad connectivity, and named
// per-point scalar arrays.
struct FieldSnapshot {
  std::vector<Eigen::Vector2d> points;
  std::vector<std::array<int, 4>> quads;
  std::vector<std::pair<std::string, std::vector<double>>> scalars;

  void validate() const;  // throws std::invalid_argument on inconsistency
};

// Samples the solved fields on an n x n grid per patch (n >= 2): arrays
// u, psi1, psi2, phi1, phi2 and the corrected deflection u_check.  Uses the
// projected shear angle when the field carries recovered gradients.
FieldSnapshot make_snapshot(const SolutionField& field, int n);

// per-direction visualization parameters: every nonempty knot span subdivided
// into `per_span` equal pieces (grid points are shared at the span ends)
std::vector<double> subgrid_params(const KnotVector& kv, int per_span);

// like make_snapshot, but sampling each element on a per_span x per_span
// subgrid instead of a fixed per-patch grid
FieldSnapshot make_element_snapshot(const SolutionField& field, int per_span);

// Legacy ASCII VTK (unstructured grid of quads, point data scalars).
void write_vtk(const FieldSnapshot& snapshot, const std::string& path);

// Minimal reader for the writer's own output; used by tests and tooling.
FieldSnapshot read_vtk(const std::string& path);

// Header line plus rows of 17-significant-digit floats.
// `comment` (when nonempty) is written first as a '#'-prefixed line that
// documents columns and units; the reader skips such lines.
void write_csv(const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows,
               const std::string& path, const std::string& comment = "");

std::pair<std::vector<std::string>, std::vector<std::vector<double>>> read_csv(
    const std::string& path);

}  // namespace igaplate
