#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "igaplate/errors.hpp"
#include "igaplate/geometry.hpp"
#include "igaplate/quadrature.hpp"

using namespace igaplate;

namespace {

double model_area(const MultipatchModel& model) {
  double area = 0.0;
  for (const auto& patch : model.patches) {
    const QuadratureRule rule = rule_for(patch.degree(0), patch.degree(1));
    for (const auto& cell : patch.element_cells()) {
      const double dxi = cell.xi1() - cell.xi0();
      const double deta = cell.eta1() - cell.eta0();
      for (int k = 0; k < rule.size(); ++k) {
        const double xi = cell.xi0() + rule.xi[k] * dxi;
        const double eta = cell.eta0() + rule.eta[k] * deta;
        area += rule.weights[k] * dxi * deta *
                cell.geometry_at(xi, eta, 1).jac.determinant();
      }
    }
  }
  return area;
}

double min_jacobian(const MultipatchModel& model) {
  double lo = 1e300;
  for (const auto& patch : model.patches) {
    const QuadratureRule rule = rule_for(patch.degree(0), patch.degree(1));
    for (const auto& cell : patch.element_cells()) {
      for (int k = 0; k < rule.size(); ++k) {
        const double xi = cell.xi0() + rule.xi[k] * (cell.xi1() - cell.xi0());
        const double eta = cell.eta0() + rule.eta[k] * (cell.eta1() - cell.eta0());
        lo = std::min(lo, cell.geometry_at(xi, eta, 1).jac.determinant());
      }
    }
  }
  return lo;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("rectangle: control counts, affine map, exact area") {
  const MultipatchModel model = make_rectangle(3.0, 1.0, 3, 3, 1, 1, 0.3, 1.0);
  REQUIRE(model.patches.size() == 1);
  const PatchSurface& patch = model.patches[0];
  CHECK(patch.net().n1() == 4);
  CHECK(patch.net().n2() == 4);

  for (double xi : {0.0, 0.3, 1.0}) {
    for (double eta : {0.0, 0.45, 1.0}) {
      const SurfacePoint sp = patch.eval_derivs(xi, eta, 1);
      CHECK(sp.x.x() == doctest::Approx(3.0 * xi).epsilon(1e-14));
      CHECK(sp.x.y() == doctest::Approx(eta - 0.5).epsilon(1e-14));
      CHECK(sp.jac(0, 0) == doctest::Approx(3.0).epsilon(1e-13));
      CHECK(sp.jac(1, 1) == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(std::abs(sp.jac(0, 1)) + std::abs(sp.jac(1, 0)) <= 1e-13);
    }
  }
  CHECK(model_area(make_rectangle(10.0, 100.0, 2, 2, 4, 8, 0.3, 1.0)) ==
        doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(model.interfaces.empty());
  CHECK(model.tags.size() == 4);
  for (const auto& tag : model.tags) CHECK(tag.kind == BcKind::free_edge);
}

TEST_CASE("rectangle: bad input is a configuration error") {
  CHECK_THROWS_AS(make_rectangle(3, 1, 1, 2, 1, 1, 0.3, 1), ConfigError);
  CHECK_THROWS_AS(make_rectangle(3, 1, 2, 1, 1, 1, 0.3, 1), ConfigError);
  CHECK_THROWS_AS(make_rectangle(-3, 1, 2, 2, 1, 1, 0.3, 1), ConfigError);
  CHECK_THROWS_AS(make_rectangle(3, 1, 2, 2, 0, 1, 0.3, 1), ConfigError);
  CHECK_THROWS_AS(make_rectangle(3, 1, 2, 2, 1, 1, 0.6, 1), ConfigError);
  CHECK_THROWS_AS(make_disk(10, 2, -1, 0.3, 1), ConfigError);
  CHECK_THROWS_AS(make_disk(10, 1, 1, 0.3, 1), ConfigError);
  CHECK_THROWS_AS(make_disk(0, 2, 1, 0.3, 1), ConfigError);
}

TEST_CASE("disk: boundary lies on the exact circle") {
  for (int p : {2, 3}) {
    const MultipatchModel model = make_disk(10.0, p, 1, 0.3, 1.0);
    REQUIRE(model.patches.size() == 5);
    for (int ring = 1; ring <= 4; ++ring) {
      for (int k = 0; k < 25; ++k) {
        const double t = k / 24.0;
        const double r = model.patches[ring].eval(1.0, t).norm();
        CHECK(std::abs(r - 10.0) <= 1e-10 * 10.0);
      }
    }
  }
}

TEST_CASE("disk: area matches the circle and the map is orientation-true") {
  const MultipatchModel coarse = make_disk(10.0, 3, 2, 0.3, 1.0);
  CHECK(model_area(coarse) == doctest::Approx(M_PI * 100.0).epsilon(1e-8));
  CHECK(min_jacobian(coarse) > 0.0);

  const MultipatchModel fine = make_disk(10.0, 2, 3, 0.3, 1.0);
  CHECK(model_area(fine) == doctest::Approx(M_PI * 100.0).epsilon(1e-8));
  CHECK(min_jacobian(fine) > 0.0);
}

TEST_CASE("disk: central patch spans half the radius") {
  const MultipatchModel model = make_disk(8.0, 2, 0, 0.3, 1.0);
  const PatchSurface& center = model.patches[0];
  CHECK((center.eval(0, 0) - Eigen::Vector2d(-4, -4)).norm() <= 1e-13);
  CHECK((center.eval(1, 1) - Eigen::Vector2d(4, 4)).norm() <= 1e-13);
}

TEST_CASE("disk: interfaces are conforming with equal weights") {
  for (int p : {2, 3}) {
    const MultipatchModel model = make_disk(10.0, p, 2, 0.3, 1.0);
    REQUIRE(model.interfaces.size() == 8);
    double diam = 0.0;
    for (const auto& patch : model.patches) diam = std::max(diam, patch.diameter());
    for (const auto& iface : model.interfaces) {
      const auto& pa = model.patches[iface.patch_a];
      const auto& pb = model.patches[iface.patch_b];
      for (auto [a, b] : interface_pairs(model, iface)) {
        CHECK((pa.net().point(a) - pb.net().point(b)).norm() <= 1e-12 * diam);
        CHECK(std::abs(pa.net().weight(a) - pb.net().weight(b)) <= 1e-12);
      }
    }
    // four exterior arcs, initially free
    CHECK(model.tags.size() == 4);
    for (const auto& tag : model.tags) {
      CHECK(tag.side == EdgeSide::xi_max);
      CHECK(tag.kind == BcKind::free_edge);
    }
  }
}

TEST_CASE("disk refinement ladder produces the expected span counts") {
  CHECK(make_disk(10, 2, 0, 0.3, 1).patches[0].kv(0).num_spans() == 1);
  CHECK(make_disk(10, 2, 1, 0.3, 1).patches[0].kv(0).num_spans() == 3);
  CHECK(make_disk(10, 2, 2, 0.3, 1).patches[3].kv(1).num_spans() == 6);
  CHECK(make_disk(10, 3, 3, 0.3, 1).patches[2].kv(0).num_spans() == 12);
}

TEST_CASE("edge tagging") {
  MultipatchModel model = make_disk(10.0, 2, 1, 0.3, 1.0);
  tag_edge(model, 1, EdgeSide::xi_max, BcKind::clamped);
  int clamped = 0;
  for (const auto& tag : model.tags)
    if (tag.kind == BcKind::clamped) ++clamped;
  CHECK(clamped == 1);
  tag_edge(model, 1, EdgeSide::xi_max, BcKind::soft_simple);  // re-tag allowed
  CHECK_THROWS_AS(tag_edge(model, 0, EdgeSide::xi_min, BcKind::clamped),
                  std::invalid_argument);  // interior interface edge
  CHECK_THROWS_AS(tag_edge(model, 9, EdgeSide::xi_min, BcKind::clamped),
                  std::invalid_argument);
}

TEST_CASE("material ratio") {
  CHECK(make_disk(5, 2, 0, 0.0, 1).sigma() == 0.0);
  CHECK(make_disk(5, 2, 0, 0.3, 1).sigma() ==
        doctest::Approx(3.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("physical-to-rescaled conversion") {
  PhysicalCase phys;
  phys.thickness = 0.05;
  phys.span = 0.5;
  phys.nu = 0.3;
  phys.shear_modulus = 22.95e9 / 2.6;     // from E = 22.95 GPa
  phys.pressure = 2400.0 * 9.81 * 0.05;   // self-weight of a 5 cm slab
  const RescaledInputs in = to_rescaled(phys);
  CHECK(in.span == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(in.fbar == doctest::Approx(0.05 * 1177.2 / 8.826923076923077e9).epsilon(1e-15));
  CHECK(in.fbar == doctest::Approx(6.667e-9).epsilon(3e-4));
  CHECK(in.deflection_scale == in.fbar);
  CHECK(in.rotation_scale == doctest::Approx(phys.pressure / phys.shear_modulus));
  CHECK(in.coordinate_scale == 0.05);

  PhysicalCase bad = phys;
  bad.thickness = 0.0;
  CHECK_THROWS_AS(to_rescaled(bad), ConfigError);
  bad = phys;
  bad.shear_modulus = -1.0;
  CHECK_THROWS_AS(to_rescaled(bad), ConfigError);
}

TEST_CASE("equal normalized inputs from different physical scales") {
  PhysicalCase a, b;
  a.thickness = 1.0;  a.span = 2.0;  a.nu = 0.25;
  a.shear_modulus = 1.0e9;  a.pressure = 1.0e6;
  b.thickness = 2.0;  b.span = 4.0;  b.nu = 0.25;
  b.shear_modulus = 4.0e9;  b.pressure = 2.0e6;
  const RescaledInputs ra = to_rescaled(a), rb = to_rescaled(b);
  CHECK(ra.span == rb.span);
  CHECK(ra.fbar == rb.fbar);
}

TEST_CASE("model summary and load callable") {
  const MultipatchModel model = make_disk(10.0, 2, 1, 0.3, 0.5);
  const std::string text = describe(model);
  CHECK(text.find("patches: 5") != std::string::npos);
  CHECK(text.find("interfaces: 8") != std::string::npos);
  CHECK(text.find("free") != std::string::npos);
  CHECK(model.load(Eigen::Vector2d(1.0, 2.0)) == 0.5);
}

}  // TEST_SUITE
