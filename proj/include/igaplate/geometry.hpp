#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "igaplate/splines.hpp"

namespace igaplate {

enum class EdgeSide { xi_min, xi_max, eta_min, eta_max };

// clamped pins the deflection and both rotations on the edge; soft simple
// support pins the deflection only; a free edge pins nothing.
enum class BcKind { free_edge, soft_simple, clamped };

struct EdgeTag {
  int patch;
  EdgeSide side;
  BcKind kind;
};

// Conforming glue between two patch edges.  `reversed` means the edge of
// patch_b runs against the parametric direction of the edge of patch_a.
struct PatchInterface {
  int patch_a;
  EdgeSide side_a;
  int patch_b;
  EdgeSide side_b;
  bool reversed;
};

// A plate model in thickness-rescaled coordinates: patches, conforming
// interfaces, one boundary condition per exterior edge, Poisson ratio and the
// normalized transverse load.
struct MultipatchModel {
  std::vector<PatchSurface> patches;
  std::vector<PatchInterface> interfaces;
  std::vector<EdgeTag> tags;
  double nu = 0.3;
  double fbar = 1.0;  // uniform normalized load used by the shipped cases
  std::function<double(const Eigen::Vector2d&)> load;  // per-point density

  double sigma() const;  // nu / (1 - nu)
};

// control-net indices along an edge, ordered by increasing edge parameter
std::vector<int> edge_indices(const PatchSurface& patch, EdgeSide side);

// matched control-point index pairs (net index in patch_a, net index in
// patch_b) for a conforming interface
std::vector<std::pair<int, int>> interface_pairs(const MultipatchModel& model,
                                                 const PatchInterface& iface);

// Single patch covering (0, length) x (-width/2, width/2) with uniform knot
// spans; all edges initially free.  Degrees below 2 are rejected: the smooth
// postprocessing requires C^1 fields inside the patch.
MultipatchModel make_rectangle(double length, double width, int p, int q,
                               int nel1, int nel2, double nu, double fbar);

// Five-patch disk of the given radius: one central square patch of half-width
// radius/2 plus four ring patches whose outer edges are exact rational arcs.
// `refine` = 0 keeps one span per direction; level k >= 1 uses 3 * 2^(k-1)
// uniform spans per direction in every patch.  All edges initially free.
MultipatchModel make_disk(double radius, int p, int refine, double nu,
                          double fbar);

// replace the condition on one exterior edge
void tag_edge(MultipatchModel& model, int patch, EdgeSide side, BcKind kind);

// Plate data in physical units; the load is a transverse pressure.
struct PhysicalCase {
  double thickness = 0.0;
  double span = 0.0;  // radius of the disk or edge length of the rectangle
  double shear_modulus = 0.0;
  double nu = 0.0;
  double pressure = 0.0;
};

// Conversion factors between the rescaled model and physical units.  Running
// the normalized model with fbar as given makes the computed deflection equal
// the physical one; with a unit load, multiply deflections by
// deflection_scale, rotations by rotation_scale and coordinates by
// coordinate_scale instead.
struct RescaledInputs {
  double span = 0.0;  // span / thickness
  double fbar = 0.0;  // thickness * pressure / shear modulus
  double deflection_scale = 0.0;
  double rotation_scale = 0.0;  // characteristic strain: pressure / shear modulus
  double coordinate_scale = 0.0;
};

RescaledInputs to_rescaled(const PhysicalCase& phys);

const char* side_name(EdgeSide side);
const char* bc_name(BcKind kind);

// human-readable model summary (patch sizes, cells, tags) for debugging
std::string describe(const MultipatchModel& model);

}  // namespace igaplate
