#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

#include "igaplate/analytic.hpp"
#include "igaplate/assembly.hpp"
#include "igaplate/geometry.hpp"
#include "igaplate/postprocess.hpp"
#include "igaplate/solver.hpp"

namespace igaplate {

// The shipped verification cases plus a free-form geometry with explicit
// edge conditions.
enum class CaseKind {
  disk_clamped,
  disk_ss,
  rect_cantilever,
  rect_ss,
  rect_clamped_all,
  custom,
};

const char* case_name(CaseKind kind);
CaseKind parse_case(const std::string& text);

// One study, fully described.  Geometry extents are in thickness-rescaled
// units unless the physical block is used; then the span in meters fixes the
// rescaled extent (disk radius, or the edge length of a square strip/plate)
// and computed deflections come out directly in meters.
struct CaseConfig {
  CaseKind kind = CaseKind::disk_clamped;
  std::string name;  // output basename; empty = case kind name

  double radius = 10.0;           // disks
  double length = 10.0;           // rectangles: axial extent
  double width = 1.0;             // rectangles: lateral extent
  double nu = 0.3;

  double fbar = 1.0;              // uniform rescaled load
  bool has_load = false;          // an explicit load was configured
  bool has_physical = false;
  PhysicalCase physical;          // validated/converted by validate()
  double youngs = 0.0;            // alternative to physical.shear_modulus
  double density = 0.0;           // self-weight alternative to pressure
  RescaledInputs scales;          // filled by validate() when physical

  int degree_p = 3;
  int degree_q = 3;
  int refine = 2;                 // disk refinement level / rectangle base level
  int nel1 = 0;                   // rectangles: explicit element counts
  int nel2 = 0;                   // (0 = derived from refine and aspect ratio)

  SolverKind solver = SolverKind::direct;
  bool has_probe = false;
  Eigen::Vector2d probe = Eigen::Vector2d::Zero();  // physical coordinates
  std::string out_dir = ".";
  int line_samples = 201;
  int viz_per_span = 4;           // visualization subgrid per element

  // custom kind: base shape ("disk" or "rectangle") and explicit conditions
  std::string custom_shape = "disk";
  BcKind edge_rim = BcKind::clamped;
  BcKind edge_left = BcKind::free_edge;
  BcKind edge_right = BcKind::free_edge;
  BcKind edge_bottom = BcKind::free_edge;
  BcKind edge_top = BcKind::free_edge;

  // Checks invariants, resolves the physical block (shear modulus from E,
  // pressure from self-weight density), applies its span to the geometry and
  // its converted load to fbar.  Throws ConfigError.
  void validate();

  std::string basename() const;   // name or case kind name
  Eigen::Vector2d default_probe() const;
  Eigen::Vector2d probe_point() const;  // configured probe or the default
};

// Flat key = value file, '#' comments.  Unknown keys and malformed values
// are configuration errors; the result is validated.
CaseConfig parse_config_file(const std::string& path);
CaseConfig parse_config_text(const std::string& text);  // same, from memory

// Meshed and tagged model for the configured case.
MultipatchModel build_case_model(const CaseConfig& config);

// element counts used for rectangle cases (explicit or derived)
std::pair<int, int> rect_elements(const CaseConfig& config);

// Closed-form reference for the case, when one exists.  The fully clamped
// rectangle and custom cases have none: ConfigError.
bool case_has_oracle(CaseKind kind);
AnalyticSolution case_oracle(const CaseConfig& config);
AnalyticSolution case_kirchhoff(const CaseConfig& config);  // thin-plate limit

// Parametric preimage of a physical point, found per patch by Newton
// iteration; throws std::invalid_argument when the point lies outside
// every patch.
struct ProbeLocation {
  int patch = 0;
  double xi = 0.0, eta = 0.0;
};
ProbeLocation locate_point(const MultipatchModel& model, const Eigen::Vector2d& x);

// A solved case: owns the model (fields reference it), numbering, and
// coefficients.  Keep the result alive while using fields created from it.
struct CaseResult {
  CaseConfig config;
  MultipatchModel model;
  DofMap dofs;
  Eigen::VectorXd coeffs;
  SolveReport report;

  Eigen::Vector2d probe_x = Eigen::Vector2d::Zero();
  double probe_u = 0.0;
  double probe_u_check = 0.0;

  SolutionField field() const;  // view bound to this->model
};

CaseResult solve_case(const CaseConfig& config);

// the three drivers; human-readable progress goes to `log`
void run_case(const CaseConfig& config, std::ostream& log);
std::vector<ConvergenceRow> convergence_rows(const CaseConfig& config, int levels);
void run_convergence(const CaseConfig& config, int levels, std::ostream& log);
void run_compare(const CaseConfig& config, std::ostream& log);

}  // namespace igaplate
