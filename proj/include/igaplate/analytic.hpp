#pragma once

#include <functional>

namespace igaplate {

// Material ratio sigma = nu / (1 - nu) used throughout the rescaled model.
double sigma_ratio(double nu);

// Closed-form reference profiles for the verification cases, in the rescaled
// variables the solver works with: in-plane coordinates measured in units of
// the plate thickness, rotations premultiplied by the thickness, uniform load
// premultiplied by thickness over shear modulus.
//
// Each profile depends on a single coordinate: the radius for the circular
// cases, the axial coordinate for the beam-like rectangular cases.  All
// callables are defined on [0, domain_end].
struct AnalyticSolution {
  enum class Kind { radial, axial };

  Kind kind = Kind::radial;
  double domain_end = 0.0;  // disk radius or beam length
  double nu = 0.0;
  double load = 0.0;

  std::function<double(double)> deflection;       // transverse deflection u
  std::function<double(double)> true_deflection;  // u minus the divergence correction
  std::function<double(double)> rotation;         // fiber rotation component
  std::function<double(double)> shear_angle;      // u' + rotation
};

// Uniformly loaded circular plate, clamped edge.
AnalyticSolution disk_clamped_solution(double R, double nu, double load);

// Uniformly loaded circular plate, (soft) simply supported edge.
AnalyticSolution disk_simply_supported_solution(double R, double nu, double load);

// Classical thin-plate (Kirchhoff) limits of the two disk cases; the shear
// angle is identically zero and no deflection correction applies.
AnalyticSolution disk_kirchhoff_solution(double R, double nu, double load,
                                         bool simply_supported);

// Beam-like (cylindrical bending) solution of the plate strip: clamped at
// x = 0, free at x = L, uniform load.
AnalyticSolution cantilever_solution(double L, double nu, double load);

// Beam-like solution of the plate strip simply supported at x = 0 and x = L.
AnalyticSolution beam_simply_supported_solution(double L, double nu, double load);

// Kirchhoff limits of the two beam-like cases.
AnalyticSolution beam_kirchhoff_solution(double L, double nu, double load,
                                         bool simply_supported);

}  // namespace igaplate
