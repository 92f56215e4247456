#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "igaplate/cases.hpp"
#include "igaplate/errors.hpp"
#include "igaplate/io.hpp"

using namespace igaplate;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string fresh_dir(const std::string& tag) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("igaplate_cases_" + tag);
  fs::remove_all(dir);
  return dir.string();
}

CaseConfig small_disk(int degree, int refine) {
  CaseConfig config;
  config.kind = CaseKind::disk_clamped;
  config.radius = 10.0;
  config.degree_p = config.degree_q = degree;
  config.refine = refine;
  return config;
}

}  // namespace

TEST_SUITE("cases") {

TEST_CASE("case kind names round-trip") {
  for (CaseKind kind :
       {CaseKind::disk_clamped, CaseKind::disk_ss, CaseKind::rect_cantilever,
        CaseKind::rect_ss, CaseKind::rect_clamped_all, CaseKind::custom})
    CHECK(parse_case(case_name(kind)) == kind);
  CHECK_THROWS_AS(parse_case("sphere"), ConfigError);
}

TEST_CASE("config text parsing covers every key") {
  const CaseConfig c = parse_config_text(
      "# a free-form strip\n"
      "case = custom\n"
      "shape = rectangle\n"
      "name = test_strip\n"
      "length = 4\n"
      "width = 2\n"
      "nu = 0.25\n"
      "load = 2.5   # uniform\n"
      "degree = 3, 2\n"
      "refine = 1\n"
      "nel1 = 6\n"
      "nel2 = 3\n"
      "solver = cg\n"
      "probe = 1.5, 0.25\n"
      "out = /tmp/igaplate_nowhere\n"
      "line_samples = 11\n"
      "viz_per_span = 2\n"
      "edge_left = clamped\n"
      "edge_right = free\n"
      "edge_bottom = soft\n"
      "edge_top = simply_supported\n");
  CHECK(c.kind == CaseKind::custom);
  CHECK(c.custom_shape == "rectangle");
  CHECK(c.name == "test_strip");
  CHECK(c.basename() == "test_strip");
  CHECK(c.length == 4.0);
  CHECK(c.width == 2.0);
  CHECK(c.nu == 0.25);
  CHECK(c.fbar == 2.5);
  CHECK(c.has_load);
  CHECK(c.degree_p == 3);
  CHECK(c.degree_q == 2);
  CHECK(c.refine == 1);
  CHECK(c.nel1 == 6);
  CHECK(c.nel2 == 3);
  CHECK(c.solver == SolverKind::conjugate_gradient);
  CHECK(c.has_probe);
  CHECK(c.probe.x() == 1.5);
  CHECK(c.probe.y() == 0.25);
  CHECK(c.out_dir == "/tmp/igaplate_nowhere");
  CHECK(c.line_samples == 11);
  CHECK(c.viz_per_span == 2);
  CHECK(c.edge_left == BcKind::clamped);
  CHECK(c.edge_right == BcKind::free_edge);
  CHECK(c.edge_bottom == BcKind::soft_simple);
  CHECK(c.edge_top == BcKind::soft_simple);

  const CaseConfig d = parse_config_text("case = disk_ss\nradius = 7\n");
  CHECK(d.kind == CaseKind::disk_ss);
  CHECK(d.radius == 7.0);
  CHECK(d.basename() == "disk_ss");
  CHECK(!d.has_probe);
  CHECK(d.probe_point() == Eigen::Vector2d::Zero());

  CHECK_THROWS_AS(parse_config_text("banana = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("radius = 5\nradius = 6\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("radius five\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("radius = \n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("degree = x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("probe = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("case = square\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("edge_rim = stuck\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("solver = umfpack\n"), ConfigError);
}

TEST_CASE("config invariants are enforced") {
  CHECK_THROWS_AS(parse_config_text("load = 1\nthickness = 0.1\nspan = 1\n"
                                    "shear_modulus = 1e9\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("degree = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("degree = 2,1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("nu = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("nu = -0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("case = disk_clamped\ndegree = 3,2\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("refine = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("line_samples = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("viz_per_span = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("radius = -2\n"), ConfigError);
  CHECK_THROWS_AS(
      parse_config_text("case = custom\nshape = triangle\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("thickness = 0.1\nspan = 1\n"
                                    "shear_modulus = 1e9\nyoungs = 2e9\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("thickness = 0.1\nspan = 1\nyoungs = 2e9\n"
                                    "pressure = 10\ndensity = 2000\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("thickness = 0.1\nspan = 1\n"),
                  ConfigError);  // no stiffness given
}

TEST_CASE("physical block converts to the rescaled setup") {
  const std::string text =
      "case = rect_clamped_all\n"
      "nu = 0.3\n"
      "thickness = 0.05\n"
      "span = 1.0\n"
      "youngs = 22.95e9\n"
      "density = 2400\n";
  CaseConfig c = parse_config_text(text);
  CHECK(c.has_physical);
  CHECK(c.physical.pressure == doctest::Approx(1177.2).epsilon(1e-12));
  CHECK(c.physical.shear_modulus ==
        doctest::Approx(22.95e9 / 2.6).epsilon(1e-12));
  CHECK(c.fbar == doctest::Approx(6.6682352941e-9).epsilon(1e-9));
  CHECK(c.length == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(c.width == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(c.scales.deflection_scale == c.fbar);
  CHECK(c.scales.coordinate_scale == 0.05);

  const double fbar_once = c.fbar;
  c.validate();  // idempotent after resolution
  CHECK(c.fbar == fbar_once);
  CHECK(c.physical.pressure == doctest::Approx(1177.2).epsilon(1e-12));

  // a direct pressure equal to the self-weight gives the same load
  const CaseConfig d = parse_config_text(
      "case = rect_clamped_all\nnu = 0.3\nthickness = 0.05\nspan = 1.0\n"
      "youngs = 22.95e9\npressure = 1177.2\n");
  CHECK(d.fbar == doctest::Approx(c.fbar).epsilon(1e-14));
}

TEST_CASE("models carry the boundary conditions of their kind") {
  auto count = [](const MultipatchModel& m, BcKind kind) {
    int n = 0;
    for (const EdgeTag& tag : m.tags)
      if (tag.kind == kind) ++n;
    return n;
  };

  CaseConfig disk = small_disk(2, 1);
  CHECK(count(build_case_model(disk), BcKind::clamped) == 4);

  disk.kind = CaseKind::disk_ss;
  CHECK(count(build_case_model(disk), BcKind::soft_simple) == 4);

  CaseConfig rect;
  rect.kind = CaseKind::rect_cantilever;
  rect.degree_p = rect.degree_q = 2;
  const MultipatchModel cant = build_case_model(rect);
  CHECK(count(cant, BcKind::clamped) == 1);
  CHECK(count(cant, BcKind::free_edge) == 3);

  rect.kind = CaseKind::rect_ss;
  CHECK(count(build_case_model(rect), BcKind::soft_simple) == 2);

  rect.kind = CaseKind::rect_clamped_all;
  CHECK(count(build_case_model(rect), BcKind::clamped) == 4);

  rect.kind = CaseKind::custom;
  rect.custom_shape = "rectangle";
  rect.edge_left = BcKind::clamped;
  rect.edge_top = BcKind::soft_simple;
  const MultipatchModel free_strip = build_case_model(rect);
  CHECK(count(free_strip, BcKind::clamped) == 1);
  CHECK(count(free_strip, BcKind::soft_simple) == 1);
  CHECK(count(free_strip, BcKind::free_edge) == 2);
}

TEST_CASE("rectangle element counts follow refinement and aspect ratio") {
  CaseConfig c;
  c.kind = CaseKind::rect_cantilever;
  c.length = 10.0;
  c.width = 1.0;
  c.refine = 2;
  CHECK(rect_elements(c) == std::pair<int, int>{10, 2});
  c.refine = 3;
  CHECK(rect_elements(c) == std::pair<int, int>{20, 2});
  c.refine = 0;
  CHECK(rect_elements(c) == std::pair<int, int>{4, 2});
  c.refine = 2;
  c.width = 100.0;
  CHECK(rect_elements(c) == std::pair<int, int>{10, 32});
  c.width = 40.0;
  CHECK(rect_elements(c) == std::pair<int, int>{10, 32});
  c.width = 20.0;
  CHECK(rect_elements(c) == std::pair<int, int>{10, 20});
  c.nel1 = 7;
  c.nel2 = 5;
  CHECK(rect_elements(c) == std::pair<int, int>{7, 5});
}

TEST_CASE("probe points are located in parametric space") {
  const MultipatchModel disk = build_case_model(small_disk(2, 1));
  const ProbeLocation center = locate_point(disk, {0.0, 0.0});
  CHECK(center.patch == 0);
  CHECK(center.xi == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(center.eta == doctest::Approx(0.5).epsilon(1e-9));

  for (const Eigen::Vector2d& x :
       {Eigen::Vector2d(5.0, 0.0), Eigen::Vector2d(0.0, -7.0),
        Eigen::Vector2d(-3.2, 4.1), Eigen::Vector2d(6.9, -6.9)}) {
    const ProbeLocation loc = locate_point(disk, x);
    const Eigen::Vector2d back =
        disk.patches[loc.patch].eval(loc.xi, loc.eta);
    CHECK((back - x).norm() <= 1e-9);
  }
  CHECK_THROWS_AS(locate_point(disk, {11.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(locate_point(disk, {9.0, 9.0}), std::invalid_argument);

  CaseConfig rc;
  rc.kind = CaseKind::rect_ss;
  rc.length = 4.0;
  rc.width = 2.0;
  const MultipatchModel rect = build_case_model(rc);
  const ProbeLocation loc = locate_point(rect, {2.5, 0.25});
  const Eigen::Vector2d back = rect.patches[0].eval(loc.xi, loc.eta);
  CHECK((back - Eigen::Vector2d(2.5, 0.25)).norm() <= 1e-10);
  CHECK_THROWS_AS(locate_point(rect, {4.5, 0.0}), std::invalid_argument);
}

TEST_CASE("solved cases expose probe values that scale with the load") {
  const CaseConfig config = small_disk(3, 2);
  const CaseResult result = solve_case(config);
  CHECK(result.coeffs.size() == result.dofs.num_dofs());
  CHECK(result.report.num_free < result.dofs.num_dofs());
  CHECK(result.probe_x == Eigen::Vector2d::Zero());
  CHECK(result.probe_u == doctest::Approx(686.25).epsilon(5e-4));
  CHECK(result.probe_u_check == doctest::Approx(685.875).epsilon(5e-4));

  CaseConfig doubled = config;
  doubled.fbar = 2.0;
  doubled.has_load = true;
  const CaseResult twice = solve_case(doubled);
  CHECK(twice.probe_u == doctest::Approx(2.0 * result.probe_u).epsilon(1e-12));

  CaseConfig quiet = config;
  quiet.fbar = 0.0;
  quiet.has_load = true;
  CHECK(solve_case(quiet).coeffs.norm() == 0.0);

  CaseConfig iterative = config;
  iterative.degree_p = iterative.degree_q = 2;
  iterative.refine = 1;
  iterative.solver = SolverKind::conjugate_gradient;
  const CaseResult cg = solve_case(iterative);
  CHECK(cg.report.iterations > 0);
  CaseConfig direct = iterative;
  direct.solver = SolverKind::direct;
  CHECK(cg.probe_u ==
        doctest::Approx(solve_case(direct).probe_u).epsilon(1e-8));
}

TEST_CASE("run writes the vtk, line, and summary artifacts") {
  CaseConfig config = small_disk(2, 1);
  config.out_dir = fresh_dir("run");
  config.line_samples = 9;
  config.viz_per_span = 2;
  std::ostringstream log;
  run_case(config, log);
  CHECK(log.str().find("wrote") != std::string::npos);

  const FieldSnapshot snap =
      read_vtk(config.out_dir + "/disk_clamped.vtk");
  CHECK(snap.points.size() == 5 * 7 * 7);  // three spans, two pieces each
  CHECK(snap.quads.size() == 5 * 6 * 6);
  REQUIRE(snap.scalars.size() == 6);

  const auto [header, rows] =
      read_csv(config.out_dir + "/disk_clamped_line.csv");
  REQUIRE(header.size() == 6);
  CHECK(header[0] == "s");
  CHECK(header[5] == "phi_rec");
  REQUIRE(rows.size() == 9);
  CHECK(rows.front()[0] == 0.0);
  CHECK(rows.back()[0] == doctest::Approx(10.0).epsilon(1e-12));
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i][0] > rows[i - 1][0]);
  CHECK(rows.front()[1] == doctest::Approx(686.25).epsilon(5e-2));
  CHECK(std::abs(rows.back()[1]) < 1e-8 * 686.25);  // clamped rim

  const std::string summary =
      slurp(config.out_dir + "/disk_clamped_summary.txt");
  CHECK(summary.find("case: disk_clamped") != std::string::npos);
  CHECK(summary.find("probe deflection:") != std::string::npos);
  CHECK(summary.find("reference deflection: 686.25") != std::string::npos);
  std::filesystem::remove_all(config.out_dir);
}

TEST_CASE("zero load produces all-zero output fields") {
  CaseConfig config = small_disk(2, 1);
  config.fbar = 0.0;
  config.has_load = true;
  config.out_dir = fresh_dir("zero");
  config.viz_per_span = 1;
  std::ostringstream log;
  run_case(config, log);
  const FieldSnapshot snap =
      read_vtk(config.out_dir + "/disk_clamped.vtk");
  for (const auto& [name, values] : snap.scalars)
    for (double v : values) CHECK(v == 0.0);
  std::filesystem::remove_all(config.out_dir);
}

TEST_CASE("convergence studies tabulate decreasing errors") {
  CaseConfig config = small_disk(2, 1);
  config.out_dir = fresh_dir("conv");

  const std::vector<ConvergenceRow> rows = convergence_rows(config, 3);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].dofs > rows[i - 1].dofs);
    CHECK(rows[i].h < rows[i - 1].h);
    CHECK(rows[i].l2 < rows[i - 1].l2);
    CHECK(rows[i].probe_rel_error < rows[i - 1].probe_rel_error);
  }
  CHECK(rows.back().l2 < 1e-7);
  CHECK(fit_slope(rows) > 4.0);  // squared-error measure: about 2(p+1)

  std::ostringstream log;
  run_convergence(config, 3, log);
  CHECK(log.str().find("fitted slope") != std::string::npos);
  const std::string csv_path = config.out_dir + "/disk_clamped_convergence.csv";
  const auto [header, table] = read_csv(csv_path);
  REQUIRE(header.size() == 4);
  CHECK(header[0] == "ndofs");
  CHECK(header[3] == "l2_err");
  REQUIRE(table.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(table[i][0] == rows[i].dofs);
    CHECK(table[i][1] == rows[i].probe);
    CHECK(table[i][3] == rows[i].l2);
  }
  CHECK(slurp(csv_path).find("slope") != std::string::npos);

  CHECK_THROWS_AS(convergence_rows(config, 2), std::invalid_argument);
  CaseConfig custom = config;
  custom.kind = CaseKind::custom;
  CHECK_THROWS_AS(convergence_rows(custom, 3), ConfigError);
  std::filesystem::remove_all(config.out_dir);
}

TEST_CASE("convergence output is deterministic") {
  CaseConfig config = small_disk(2, 1);
  config.out_dir = fresh_dir("det_a");
  std::ostringstream log;
  run_convergence(config, 3, log);
  const std::string first =
      slurp(config.out_dir + "/disk_clamped_convergence.csv");
  std::filesystem::remove_all(config.out_dir);

  config.out_dir = fresh_dir("det_b");
  run_convergence(config, 3, log);
  CHECK(first == slurp(config.out_dir + "/disk_clamped_convergence.csv"));
  std::filesystem::remove_all(config.out_dir);
}

TEST_CASE("compare tables hold numeric, closed-form, and thin-plate columns") {
  CaseConfig config;
  config.kind = CaseKind::rect_ss;
  config.length = 3.0;
  config.width = 100.0;
  config.refine = 2;
  config.line_samples = 21;
  config.out_dir = fresh_dir("cmp");
  std::ostringstream log;
  run_compare(config, log);

  const auto [header, rows] = read_csv(config.out_dir + "/rect_ss_line.csv");
  REQUIRE(header.size() == 11);
  CHECK(header[5] == "u_ref");
  CHECK(header[10] == "psi_thin");
  REQUIRE(rows.size() == 21);

  double max_psi_ref = 0.0;
  for (const auto& row : rows) max_psi_ref = std::max(max_psi_ref, std::abs(row[7]));
  CHECK(max_psi_ref > 0.0);
  const auto& mid = rows[10];  // s = L/2 by symmetric sampling
  CHECK(mid[0] == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::abs(mid[3]) <= 1e-8 * max_psi_ref);  // symmetry kills the rotation
  CHECK(mid[1] == doctest::Approx(mid[5]).epsilon(1e-2));   // u vs closed form
  CHECK(mid[2] == doctest::Approx(mid[6]).epsilon(1e-2));   // corrected u
  CHECK(mid[9] < mid[5]);  // thin-plate limit deflects less (no shear term)

  CaseConfig custom = config;
  custom.kind = CaseKind::custom;
  CHECK_THROWS_AS(run_compare(custom, log), ConfigError);
  std::filesystem::remove_all(config.out_dir);
}

TEST_CASE("wide cantilevers track the beam profile away from the root") {
  CaseConfig config;
  config.kind = CaseKind::rect_cantilever;
  config.length = 10.0;
  config.width = 100.0;
  config.refine = 2;
  config.line_samples = 41;
  config.out_dir = fresh_dir("cant");
  std::ostringstream log;
  run_compare(config, log);

  const auto [header, rows] =
      read_csv(config.out_dir + "/rect_cantilever_line.csv");
  const double tip_ref = rows.back()[6];  // corrected closed form at the tip
  REQUIRE(tip_ref > 0.0);
  for (const auto& row : rows) {
    if (row[0] < 1.0) continue;  // boundary-layer region near the root
    CHECK(std::abs(row[2] - row[6]) <= 0.01 * tip_ref);
  }
  std::filesystem::remove_all(config.out_dir);
}

TEST_CASE("config files parse like in-memory text") {
  namespace fs = std::filesystem;
  const std::string path =
      (fs::temp_directory_path() / "igaplate_case.cfg").string();
  const std::string text = "case = disk_ss\nradius = 12\ndegree = 2\nrefine = 1\n";
  {
    std::ofstream os(path);
    os << text;
  }
  const CaseConfig from_file = parse_config_file(path);
  const CaseConfig from_text = parse_config_text(text);
  CHECK(from_file.kind == from_text.kind);
  CHECK(from_file.radius == from_text.radius);
  CHECK(from_file.degree_p == from_text.degree_p);
  CHECK(from_file.refine == from_text.refine);
  std::remove(path.c_str());
  CHECK_THROWS_AS(parse_config_file("/no/such/igaplate.cfg"), ConfigError);
}

TEST_CASE("the concrete plate lands near its thin-plate estimate") {
  const CaseConfig config = parse_config_text(
      "case = rect_clamped_all\n"
      "nu = 0.3\n"
      "thickness = 0.05\n"
      "span = 1.0\n"
      "youngs = 22.95e9\n"
      "density = 2400\n"
      "degree = 3\n"
      "refine = 2\n");
  const CaseResult result = solve_case(config);

  // classical series coefficient for a uniformly loaded clamped square
  const double q = 2400.0 * 9.81 * 0.05;
  const double rigidity = 22.95e9 * std::pow(0.05, 3) / (12.0 * (1.0 - 0.09));
  const double thin_center = 0.00126 * q * std::pow(1.0, 4) / rigidity;
  CHECK(thin_center == doctest::Approx(5.65e-6).epsilon(1e-2));

  // shear flexibility adds a few percent at span/thickness = 20
  CHECK(result.probe_u > thin_center);
  CHECK(result.probe_u < 1.10 * thin_center);
}

}  // TEST_SUITE
