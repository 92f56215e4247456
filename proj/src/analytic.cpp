#include "igaplate/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace igaplate {

namespace {

void check_inputs(double extent, double nu) {
  if (!(extent > 0.0))
    throw std::invalid_argument("analytic solution: domain extent must be positive");
  if (!(nu >= 0.0 && nu < 0.5))
    throw std::invalid_argument("analytic solution: Poisson ratio must lie in [0, 0.5)");
}

// Beam-like effective moduli of the rescaled model.
double bending_modulus(double nu) { return 1.0 / (6.0 * (1.0 - nu)); }
constexpr double kShearModulus = 5.0 / 6.0;

}  // namespace

double sigma_ratio(double nu) {
  if (!(nu >= 0.0 && nu < 0.5))
    throw std::invalid_argument("sigma_ratio: Poisson ratio must lie in [0, 0.5)");
  return nu / (1.0 - nu);
}

AnalyticSolution disk_clamped_solution(double R, double nu, double load) {
  check_inputs(R, nu);
  const double sigma = sigma_ratio(nu);
  const double c = 3.0 * (1.0 - nu) / 8.0;  // rotation amplitude factor
  const double f = load;

  AnalyticSolution sol;
  sol.kind = AnalyticSolution::Kind::radial;
  sol.domain_end = R;
  sol.nu = nu;
  sol.load = load;
  sol.deflection = [=](double r) {
    const double q = R * R - r * r;
    return 0.3 * f * q + c / 4.0 * f * q * q;
  };
  // div(rotation field) = 2*c*f*(R^2 - 2 r^2) for the radial profile below
  sol.true_deflection = [=, defl = sol.deflection](double r) {
    return defl(r) - sigma / 60.0 * 2.0 * c * f * (R * R - 2.0 * r * r);
  };
  sol.rotation = [=](double r) { return c * f * (R * R * r - r * r * r); };
  sol.shear_angle = [=](double r) { return -0.6 * f * r; };
  return sol;
}

AnalyticSolution disk_simply_supported_solution(double R, double nu, double load) {
  check_inputs(R, nu);
  const double sigma = sigma_ratio(nu);
  const double f = load;
  const double c = 3.0 * (1.0 - nu) / 8.0;
  // rotation = A r - c f r^3; A fixed by the moment-free edge condition
  const double A =
      f * (3.0 * (1.0 - nu) * (3.0 + nu) / (8.0 * (1.0 + nu)) * R * R -
           3.0 * nu / (5.0 * (1.0 + nu)));

  AnalyticSolution sol;
  sol.kind = AnalyticSolution::Kind::radial;
  sol.domain_end = R;
  sol.nu = nu;
  sol.load = load;
  sol.deflection = [=](double r) {
    const double q = R * R - r * r;
    return 3.0 / (10.0 * (1.0 + nu)) * f * q +
           c / 4.0 * f * q * ((5.0 + nu) / (1.0 + nu) * R * R - r * r);
  };
  sol.true_deflection = [=, defl = sol.deflection](double r) {
    const double div = 2.0 * A - 4.0 * c * f * r * r;
    return defl(r) - sigma / 60.0 * div;
  };
  sol.rotation = [=](double r) { return A * r - c * f * r * r * r; };
  sol.shear_angle = [=](double r) { return -0.6 * f * r; };
  return sol;
}

AnalyticSolution disk_kirchhoff_solution(double R, double nu, double load,
                                         bool simply_supported) {
  check_inputs(R, nu);
  const double f = load;
  const double c = 3.0 * (1.0 - nu) / 8.0;

  AnalyticSolution sol;
  sol.kind = AnalyticSolution::Kind::radial;
  sol.domain_end = R;
  sol.nu = nu;
  sol.load = load;
  if (simply_supported) {
    sol.deflection = [=](double r) {
      const double q = R * R - r * r;
      return c / 4.0 * f * q * ((5.0 + nu) / (1.0 + nu) * R * R - r * r);
    };
    sol.rotation = [=](double r) {
      // minus the radial derivative of the deflection
      return c / 4.0 * f *
             (2.0 * r * ((5.0 + nu) / (1.0 + nu) * R * R - r * r) +
              (R * R - r * r) * 2.0 * r);
    };
  } else {
    sol.deflection = [=](double r) {
      const double q = R * R - r * r;
      return c / 4.0 * f * q * q;
    };
    sol.rotation = [=](double r) { return c * f * r * (R * R - r * r); };
  }
  sol.true_deflection = sol.deflection;
  sol.shear_angle = [](double) { return 0.0; };
  return sol;
}

AnalyticSolution cantilever_solution(double L, double nu, double load) {
  check_inputs(L, nu);
  const double sigma = sigma_ratio(nu);
  const double Eb = bending_modulus(nu);
  const double Es = kShearModulus;
  const double f = load;

  AnalyticSolution sol;
  sol.kind = AnalyticSolution::Kind::axial;
  sol.domain_end = L;
  sol.nu = nu;
  sol.load = load;
  sol.rotation = [=](double x) {
    return f / Eb *
           (-x * x * x / 6.0 + L * x * x / 2.0 - (L * L / 2.0 + sigma / 10.0) * x);
  };
  sol.deflection = [=](double x) {
    return f / Eb *
               (x * x * x * x / 24.0 - L * x * x * x / 6.0 +
                (L * L / 4.0 + sigma / 20.0) * x * x) +
           f / Es * (-x * x / 2.0 + L * x);
  };
  sol.true_deflection = [=, defl = sol.deflection](double x) {
    const double dpsi =
        f / Eb * (-x * x / 2.0 + L * x - L * L / 2.0 - sigma / 10.0);
    return defl(x) - sigma / 60.0 * dpsi;
  };
  sol.shear_angle = [=](double x) { return f / Es * (L - x); };
  return sol;
}

AnalyticSolution beam_simply_supported_solution(double L, double nu, double load) {
  check_inputs(L, nu);
  const double sigma = sigma_ratio(nu);
  const double Eb = bending_modulus(nu);
  const double Es = kShearModulus;
  const double f = load;

  AnalyticSolution sol;
  sol.kind = AnalyticSolution::Kind::axial;
  sol.domain_end = L;
  sol.nu = nu;
  sol.load = load;
  sol.rotation = [=](double x) {
    return f / Eb *
           (-x * x * x / 6.0 + L * x * x / 4.0 - sigma / 10.0 * x -
            L * L * L / 24.0 + sigma / 20.0 * L);
  };
  sol.deflection = [=](double x) {
    return f / Eb *
               (x * x * x * x / 24.0 - L * x * x * x / 12.0 +
                sigma / 20.0 * x * x +
                (L * L * L / 24.0 - sigma / 20.0 * L) * x) +
           f / Es * (-x * x / 2.0 + L * x / 2.0);
  };
  sol.true_deflection = [=, defl = sol.deflection](double x) {
    const double dpsi = f / Eb * (-x * x / 2.0 + L * x / 2.0 - sigma / 10.0);
    return defl(x) - sigma / 60.0 * dpsi;
  };
  sol.shear_angle = [=](double x) { return f / Es * (L / 2.0 - x); };
  return sol;
}

AnalyticSolution beam_kirchhoff_solution(double L, double nu, double load,
                                         bool simply_supported) {
  check_inputs(L, nu);
  const double Eb = bending_modulus(nu);
  const double f = load;

  AnalyticSolution sol;
  sol.kind = AnalyticSolution::Kind::axial;
  sol.domain_end = L;
  sol.nu = nu;
  sol.load = load;
  if (simply_supported) {
    sol.deflection = [=](double x) {
      return f / Eb / 24.0 * (x * x * x * x - 2.0 * L * x * x * x + L * L * L * x);
    };
    sol.rotation = [=](double x) {
      return -f / Eb / 24.0 * (4.0 * x * x * x - 6.0 * L * x * x + L * L * L);
    };
  } else {
    sol.deflection = [=](double x) {
      return f / Eb *
             (x * x * x * x / 24.0 - L * x * x * x / 6.0 + L * L * x * x / 4.0);
    };
    sol.rotation = [=](double x) {
      return -f / Eb * (x * x * x / 6.0 - L * x * x / 2.0 + L * L * x / 2.0);
    };
  }
  sol.true_deflection = sol.deflection;
  sol.shear_angle = [](double) { return 0.0; };
  return sol;
}

}  // namespace igaplate
