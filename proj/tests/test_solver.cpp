#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "igaplate/assembly.hpp"
#include "igaplate/errors.hpp"
#include "igaplate/geometry.hpp"
#include "igaplate/solver.hpp"

using namespace igaplate;

namespace {

MultipatchModel clamped_disk(double radius, int degree, int refine, double nu,
                             double fbar) {
  MultipatchModel disk = make_disk(radius, degree, refine, nu, fbar);
  for (int ring = 1; ring <= 4; ++ring)
    tag_edge(disk, ring, EdgeSide::xi_max, BcKind::clamped);
  return disk;
}

// single free dof carrying k x = f, two constrained companions
AssembledSystem scalar_system(double k, double f) {
  AssembledSystem sys;
  sys.dofs.num_points = 1;
  sys.dofs.patch_offset = {0, 1};
  sys.dofs.merged = {0};
  sys.dofs.position = {{0, 0}};
  sys.dofs.fixed = {false, true, true};
  sys.dofs.free_index = {0, -1, -1};
  sys.dofs.num_free = 1;
  sys.matrix.resize(1, 1);
  sys.matrix.insert(0, 0) = k;
  sys.matrix.makeCompressed();
  sys.rhs.resize(1);
  sys.rhs[0] = f;
  return sys;
}

double center_deflection(const MultipatchModel& model, const DofMap& dofs,
                         const Eigen::VectorXd& coeffs) {
  // the central patch maps (0.5, 0.5) to the origin by construction
  const auto sample = model.patches[0].basis_at(0.5, 0.5, 0);
  double u = 0.0;
  for (std::size_t a = 0; a < sample.indices.size(); ++a)
    u += sample.d(0, a) * coeffs[dofs.dof(0, dofs.point_id(0, sample.indices[a]))];
  return u;
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("zero load returns the zero field exactly") {
  MultipatchModel disk = clamped_disk(10, 2, 1, 0.3, 0.0);
  disk.load = [](const Eigen::Vector2d&) { return 0.0; };
  const AssembledSystem sys = assemble(disk);
  const auto [x, report] = solve(sys);
  CHECK(x.norm() == 0.0);
  CHECK(x.size() == sys.dofs.num_dofs());
  CHECK(report.relative_residual == 0.0);
  CHECK(report.iterations == 0);
}

TEST_CASE("scalar system inverts directly") {
  const auto [x, report] = solve(scalar_system(2.0, 6.0));
  REQUIRE(x.size() == 3);
  CHECK(x[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(x[1] == 0.0);
  CHECK(x[2] == 0.0);
  CHECK(report.num_free == 1);
  CHECK(report.relative_residual <= 1e-10);
}

TEST_CASE("clamped disk reproduces the analytic center deflection") {
  const MultipatchModel disk = clamped_disk(10, 3, 3, 0.3, 1.0);
  const AssembledSystem sys = assemble(disk);
  const auto [x, report] = solve(sys);
  CHECK(report.relative_residual <= 1e-10);
  CHECK(report.nonzeros > 0);
  CHECK(report.seconds >= 0.0);
  const double u0 = center_deflection(disk, sys.dofs, x);
  CHECK(u0 == doctest::Approx(686.25).epsilon(1e-4));
}

TEST_CASE("solutions scale linearly with the load") {
  const AssembledSystem base = assemble(clamped_disk(10, 2, 2, 0.3, 1.0));
  const AssembledSystem scaled = assemble(clamped_disk(10, 2, 2, 0.3, 2.5));
  const auto [x1, r1] = solve(base);
  const auto [x2, r2] = solve(scaled);
  CHECK((x2 - 2.5 * x1).norm() <= 1e-12 * x2.norm());
}

TEST_CASE("repeated solves are bit-identical") {
  const AssembledSystem sys = assemble(clamped_disk(10, 2, 2, 0.3, 1.0));
  const auto [xa, ra] = solve(sys);
  const auto [xb, rb] = solve(sys);
  REQUIRE(xa.size() == xb.size());
  for (Eigen::Index i = 0; i < xa.size(); ++i) REQUIRE(xa[i] == xb[i]);
  CHECK(ra.relative_residual == rb.relative_residual);
}

TEST_CASE("conjugate gradient agrees with the factorization") {
  const AssembledSystem sys = assemble(clamped_disk(10, 2, 1, 0.3, 1.0));
  const auto [xd, rd] = solve(sys, SolverKind::direct);
  const auto [xc, rc] = solve(sys, SolverKind::conjugate_gradient);
  CHECK(rc.iterations > 0);
  CHECK(rc.relative_residual <= 1e-10);
  CHECK((xc - xd).norm() <= 1e-8 * xd.norm());
}

TEST_CASE("singular systems raise numeric errors in both modes") {
  AssembledSystem sys = scalar_system(0.0, 1.0);
  CHECK_THROWS_AS(solve(sys, SolverKind::direct), NumericError);
  CHECK_THROWS_AS(solve(sys, SolverKind::conjugate_gradient), NumericError);
}

TEST_CASE("solver names round-trip and reject junk") {
  CHECK(parse_solver("direct") == SolverKind::direct);
  CHECK(parse_solver("cg") == SolverKind::conjugate_gradient);
  CHECK(parse_solver(solver_name(SolverKind::direct)) == SolverKind::direct);
  CHECK(parse_solver(solver_name(SolverKind::conjugate_gradient)) ==
        SolverKind::conjugate_gradient);
  CHECK_THROWS_AS(parse_solver("umfpack"), ConfigError);
}

}  // TEST_SUITE
