#include "igaplate/solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "igaplate/errors.hpp"

namespace igaplate {

namespace {

// Guard against garbage solutions (near-singular systems that factor without
// an explicit breakdown).  The bound leaves room for the round-off floor of
// badly scaled systems: with solution magnitudes of 1e10 and unit loads the
// achievable relative residual is only around 1e-9.
constexpr double kResidualBound = 1e-6;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Eigen::VectorXd direct_solve(const Eigen::SparseMatrix<double>& K,
                             const Eigen::VectorXd& F, SolveReport& report) {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  ldlt.compute(K);
  if (ldlt.info() != Eigen::Success) {
    // locate the offending pivot for the error message
    const auto& D = ldlt.vectorD();
    int worst = 0;
    for (int i = 0; i < D.size(); ++i)
      if (!(D[i] > 0.0) && (D[worst] > 0.0 || std::abs(D[i]) < std::abs(D[worst])))
        worst = i;
    throw NumericError("factorization breakdown at pivot " + std::to_string(worst) +
                       " (value " + sci(D.size() ? D[worst] : 0.0) + ")");
  }
  Eigen::VectorXd x = ldlt.solve(F);
  // iterative refinement keeps the residual near round-off even on badly
  // scaled systems (large radius-to-thickness ratios)
  const double fnorm = F.norm();
  for (int pass = 0; pass < 4; ++pass) {
    const Eigen::VectorXd r = F - K * x;
    if (r.norm() <= 0.5 * kResidualBound * fnorm) break;
    x += ldlt.solve(r);
  }
  report.iterations = 0;
  return x;
}

Eigen::VectorXd cg_solve(const Eigen::SparseMatrix<double>& K,
                         const Eigen::VectorXd& F, SolveReport& report) {
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                           Eigen::DiagonalPreconditioner<double>>
      cg;
  cg.setTolerance(1e-12);
  cg.setMaxIterations(20 * K.rows() + 1000);
  cg.compute(K);
  Eigen::VectorXd x = cg.solve(F);
  report.iterations = static_cast<int>(cg.iterations());
  if (cg.info() != Eigen::Success)
    throw NumericError("conjugate gradient stalled after " +
                       std::to_string(cg.iterations()) +
                       " iterations, residual " + sci(cg.error()));
  return x;
}

}  // namespace

std::pair<Eigen::VectorXd, SolveReport> solve(const AssembledSystem& system,
                                              SolverKind kind) {
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport report;
  report.num_free = system.dofs.num_free;
  report.nonzeros = static_cast<long long>(system.matrix.nonZeros());

  const double fnorm = system.rhs.norm();
  Eigen::VectorXd reduced;
  if (fnorm == 0.0) {
    reduced = Eigen::VectorXd::Zero(system.dofs.num_free);
  } else {
    reduced = kind == SolverKind::direct ? direct_solve(system.matrix, system.rhs, report)
                                         : cg_solve(system.matrix, system.rhs, report);
    report.relative_residual = (system.matrix * reduced - system.rhs).norm() / fnorm;
    if (!(report.relative_residual <= kResidualBound))
      throw NumericError("linear solve residual " +
                         sci(report.relative_residual) +
                         " exceeds bound " + sci(kResidualBound));
  }

  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {system.expand(reduced), report};
}

const char* solver_name(SolverKind kind) {
  return kind == SolverKind::direct ? "direct" : "cg";
}

SolverKind parse_solver(const std::string& name) {
  if (name == "direct") return SolverKind::direct;
  if (name == "cg" || name == "conjugate_gradient") return SolverKind::conjugate_gradient;
  throw ConfigError("unknown solver '" + name + "' (expected 'direct' or 'cg')");
}

}  // namespace igaplate
