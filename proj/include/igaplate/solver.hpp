#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>

#include "igaplate/assembly.hpp"

namespace igaplate {

enum class SolverKind { direct, conjugate_gradient };

struct SolveReport {
  double relative_residual = 0.0;
  int iterations = 0;  // 0 for the direct factorization path
  double seconds = 0.0;
  int num_free = 0;
  long long nonzeros = 0;
};

// Solves the reduced SPD system and scatters the result back to the full
// dof numbering, constrained entries set to zero.  Throws NumericError when
// the relative residual on the reduced system exceeds 1e-6 (a guard against
// near-singular systems; well-posed cases sit many orders below it).
std::pair<Eigen::VectorXd, SolveReport> solve(const AssembledSystem& system,
                                              SolverKind kind = SolverKind::direct);

const char* solver_name(SolverKind kind);
SolverKind parse_solver(const std::string& name);

}  // namespace igaplate
