#include "igaplate/cases.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "igaplate/errors.hpp"
#include "igaplate/io.hpp"

namespace igaplate {

namespace {

constexpr double kGravity = 9.81;  // m/s^2, for self-weight loads

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': cannot parse number '" + value + "'");
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("key '" + key + "': cannot parse integer '" + value + "'");
}

BcKind parse_bc(const std::string& key, const std::string& value) {
  if (value == "clamped") return BcKind::clamped;
  if (value == "soft" || value == "simply_supported") return BcKind::soft_simple;
  if (value == "free") return BcKind::free_edge;
  throw ConfigError("key '" + key + "': unknown edge condition '" + value + "'");
}

bool is_disk(const CaseConfig& c) {
  if (c.kind == CaseKind::custom) return c.custom_shape == "disk";
  return c.kind == CaseKind::disk_clamped || c.kind == CaseKind::disk_ss;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

const char* case_name(CaseKind kind) {
  switch (kind) {
    case CaseKind::disk_clamped: return "disk_clamped";
    case CaseKind::disk_ss: return "disk_ss";
    case CaseKind::rect_cantilever: return "rect_cantilever";
    case CaseKind::rect_ss: return "rect_ss";
    case CaseKind::rect_clamped_all: return "rect_clamped_all";
    case CaseKind::custom: return "custom";
  }
  return "?";
}

CaseKind parse_case(const std::string& text) {
  for (CaseKind k : {CaseKind::disk_clamped, CaseKind::disk_ss,
                     CaseKind::rect_cantilever, CaseKind::rect_ss,
                     CaseKind::rect_clamped_all, CaseKind::custom})
    if (text == case_name(k)) return k;
  throw ConfigError("unknown case kind '" + text + "'");
}

void CaseConfig::validate() {
  if (degree_p < 2 || degree_q < 2)
    throw ConfigError("degrees must be at least 2 (smooth postprocessing)");
  if (is_disk(*this) && degree_q != degree_p)
    throw ConfigError("disk cases use one degree for both directions");
  if (refine < 0) throw ConfigError("refinement level must be nonnegative");
  if (nel1 < 0 || nel2 < 0) throw ConfigError("element counts must be positive");
  if (line_samples < 2) throw ConfigError("need at least two line samples");
  if (viz_per_span < 1) throw ConfigError("visualization subgrid must be >= 1");
  if (!(nu >= 0.0 && nu < 0.5))
    throw ConfigError("Poisson ratio must lie in [0, 0.5)");
  if (kind == CaseKind::custom && custom_shape != "disk" &&
      custom_shape != "rectangle")
    throw ConfigError("custom shape must be 'disk' or 'rectangle'");

  if (has_load && has_physical)
    throw ConfigError("give either the rescaled load or the physical block, not both");
  if (has_physical) {
    if (youngs > 0.0 && physical.shear_modulus > 0.0)
      throw ConfigError("give either youngs or shear_modulus, not both");
    if (youngs > 0.0) {
      physical.shear_modulus = youngs / (2.0 * (1.0 + nu));
      youngs = 0.0;
    }
    if (density > 0.0 && physical.pressure != 0.0)
      throw ConfigError("give either pressure or density, not both");
    if (density > 0.0) {
      physical.pressure = density * kGravity * physical.thickness;
      density = 0.0;
    }
    physical.nu = nu;
    scales = to_rescaled(physical);
    fbar = scales.fbar;
    if (is_disk(*this)) {
      radius = scales.span;
    } else {
      length = scales.span;  // physical rectangles are square plates/strips
      width = scales.span;
    }
  }

  if (!(radius > 0.0)) throw ConfigError("radius must be positive");
  if (!(length > 0.0) || !(width > 0.0))
    throw ConfigError("length and width must be positive");
  if (!std::isfinite(fbar)) throw ConfigError("load must be finite");
}

std::string CaseConfig::basename() const {
  return name.empty() ? case_name(kind) : name;
}

Eigen::Vector2d CaseConfig::default_probe() const {
  if (is_disk(*this)) return Eigen::Vector2d::Zero();
  if (kind == CaseKind::rect_cantilever) return {length, 0.0};
  return {0.5 * length, 0.0};  // midspan / plate center
}

Eigen::Vector2d CaseConfig::probe_point() const {
  return has_probe ? probe : default_probe();
}

CaseConfig parse_config_text(const std::string& text) {
  CaseConfig config;
  std::set<std::string> seen;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    if (!seen.insert(key).second)
      throw ConfigError("duplicate key '" + key + "'");

    if (key == "case") {
      config.kind = parse_case(value);
    } else if (key == "name") {
      config.name = value;
    } else if (key == "radius") {
      config.radius = parse_double(key, value);
    } else if (key == "length") {
      config.length = parse_double(key, value);
    } else if (key == "width") {
      config.width = parse_double(key, value);
    } else if (key == "nu") {
      config.nu = parse_double(key, value);
    } else if (key == "load") {
      config.fbar = parse_double(key, value);
      config.has_load = true;
    } else if (key == "thickness") {
      config.physical.thickness = parse_double(key, value);
      config.has_physical = true;
    } else if (key == "span") {
      config.physical.span = parse_double(key, value);
      config.has_physical = true;
    } else if (key == "shear_modulus") {
      config.physical.shear_modulus = parse_double(key, value);
      config.has_physical = true;
    } else if (key == "youngs") {
      config.youngs = parse_double(key, value);
      config.has_physical = true;
    } else if (key == "pressure") {
      config.physical.pressure = parse_double(key, value);
      config.has_physical = true;
    } else if (key == "density") {
      config.density = parse_double(key, value);
      config.has_physical = true;
    } else if (key == "degree") {
      const auto comma = value.find(',');
      if (comma == std::string::npos) {
        config.degree_p = config.degree_q = parse_int(key, value);
      } else {
        config.degree_p = parse_int(key, trim(value.substr(0, comma)));
        config.degree_q = parse_int(key, trim(value.substr(comma + 1)));
      }
    } else if (key == "refine") {
      config.refine = parse_int(key, value);
    } else if (key == "nel1") {
      config.nel1 = parse_int(key, value);
    } else if (key == "nel2") {
      config.nel2 = parse_int(key, value);
    } else if (key == "solver") {
      config.solver = parse_solver(value);
    } else if (key == "probe") {
      const auto comma = value.find(',');
      if (comma == std::string::npos)
        throw ConfigError("probe needs two coordinates 'x,y'");
      config.probe.x() = parse_double(key, trim(value.substr(0, comma)));
      config.probe.y() = parse_double(key, trim(value.substr(comma + 1)));
      config.has_probe = true;
    } else if (key == "out") {
      config.out_dir = value;
    } else if (key == "line_samples") {
      config.line_samples = parse_int(key, value);
    } else if (key == "viz_per_span") {
      config.viz_per_span = parse_int(key, value);
    } else if (key == "shape") {
      config.custom_shape = value;
    } else if (key == "edge_rim") {
      config.edge_rim = parse_bc(key, value);
    } else if (key == "edge_left") {
      config.edge_left = parse_bc(key, value);
    } else if (key == "edge_right") {
      config.edge_right = parse_bc(key, value);
    } else if (key == "edge_bottom") {
      config.edge_bottom = parse_bc(key, value);
    } else if (key == "edge_top") {
      config.edge_top = parse_bc(key, value);
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

CaseConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buffer;
  buffer << is.rdbuf();
  return parse_config_text(buffer.str());
}

std::pair<int, int> rect_elements(const CaseConfig& config) {
  int n1 = config.nel1;
  if (n1 <= 0)
    n1 = std::max(4L, std::lround(5.0 * std::pow(2.0, config.refine - 1)));
  int n2 = config.nel2;
  if (n2 <= 0)
    n2 = static_cast<int>(
        std::clamp(std::lround(n1 * config.width / config.length), 2L, 32L));
  return {n1, n2};
}

MultipatchModel build_case_model(const CaseConfig& config) {
  if (is_disk(config)) {
    MultipatchModel model =
        make_disk(config.radius, config.degree_p, config.refine, config.nu,
                  config.fbar);
    const BcKind rim =
        config.kind == CaseKind::disk_clamped
            ? BcKind::clamped
            : (config.kind == CaseKind::disk_ss ? BcKind::soft_simple
                                                : config.edge_rim);
    for (int ring = 1; ring <= 4; ++ring)
      tag_edge(model, ring, EdgeSide::xi_max, rim);
    return model;
  }

  const auto [n1, n2] = rect_elements(config);
  MultipatchModel model =
      make_rectangle(config.length, config.width, config.degree_p,
                     config.degree_q, n1, n2, config.nu, config.fbar);
  switch (config.kind) {
    case CaseKind::rect_cantilever:
      tag_edge(model, 0, EdgeSide::xi_min, BcKind::clamped);
      break;
    case CaseKind::rect_ss:
      tag_edge(model, 0, EdgeSide::xi_min, BcKind::soft_simple);
      tag_edge(model, 0, EdgeSide::xi_max, BcKind::soft_simple);
      break;
    case CaseKind::rect_clamped_all:
      for (EdgeSide side : {EdgeSide::xi_min, EdgeSide::xi_max,
                            EdgeSide::eta_min, EdgeSide::eta_max})
        tag_edge(model, 0, side, BcKind::clamped);
      break;
    default:  // custom rectangle
      tag_edge(model, 0, EdgeSide::xi_min, config.edge_left);
      tag_edge(model, 0, EdgeSide::xi_max, config.edge_right);
      tag_edge(model, 0, EdgeSide::eta_min, config.edge_bottom);
      tag_edge(model, 0, EdgeSide::eta_max, config.edge_top);
      break;
  }
  return model;
}

bool case_has_oracle(CaseKind kind) {
  switch (kind) {
    case CaseKind::disk_clamped:
    case CaseKind::disk_ss:
    case CaseKind::rect_cantilever:
    case CaseKind::rect_ss:
      return true;
    default:
      return false;
  }
}

AnalyticSolution case_oracle(const CaseConfig& config) {
  switch (config.kind) {
    case CaseKind::disk_clamped:
      return disk_clamped_solution(config.radius, config.nu, config.fbar);
    case CaseKind::disk_ss:
      return disk_simply_supported_solution(config.radius, config.nu,
                                            config.fbar);
    case CaseKind::rect_cantilever:
      return cantilever_solution(config.length, config.nu, config.fbar);
    case CaseKind::rect_ss:
      return beam_simply_supported_solution(config.length, config.nu,
                                            config.fbar);
    default:
      throw ConfigError(std::string("case '") + case_name(config.kind) +
                        "' has no closed-form reference");
  }
}

AnalyticSolution case_kirchhoff(const CaseConfig& config) {
  switch (config.kind) {
    case CaseKind::disk_clamped:
    case CaseKind::disk_ss:
      return disk_kirchhoff_solution(config.radius, config.nu, config.fbar,
                                     config.kind == CaseKind::disk_ss);
    case CaseKind::rect_cantilever:
    case CaseKind::rect_ss:
      return beam_kirchhoff_solution(config.length, config.nu, config.fbar,
                                     config.kind == CaseKind::rect_ss);
    default:
      throw ConfigError(std::string("case '") + case_name(config.kind) +
                        "' has no closed-form reference");
  }
}

ProbeLocation locate_point(const MultipatchModel& model,
                           const Eigen::Vector2d& x) {
  constexpr double starts[5][2] = {
      {0.5, 0.5}, {0.25, 0.25}, {0.75, 0.25}, {0.25, 0.75}, {0.75, 0.75}};
  for (std::size_t p = 0; p < model.patches.size(); ++p) {
    const PatchSurface& patch = model.patches[p];
    const double scale = std::max(patch.diameter(), 1e-12);
    for (const auto& s : starts) {
      Eigen::Vector2d q(s[0], s[1]);
      for (int it = 0; it < 60; ++it) {
        const SurfacePoint sp = patch.eval_derivs(q.x(), q.y(), 1);
        const Eigen::Vector2d r = x - sp.x;
        if (r.norm() <= 1e-12 * scale)
          return {static_cast<int>(p), q.x(), q.y()};
        if (std::abs(sp.jac.determinant()) < 1e-14 * scale * scale) break;
        q += sp.jac.inverse() * r;
        q.x() = std::clamp(q.x(), 0.0, 1.0);
        q.y() = std::clamp(q.y(), 0.0, 1.0);
      }
    }
  }
  throw std::invalid_argument("probe point lies outside the meshed domain");
}

SolutionField CaseResult::field() const {
  return SolutionField(model, dofs, coeffs);
}

CaseResult solve_case(const CaseConfig& config_in) {
  CaseResult out;
  out.config = config_in;
  out.config.validate();
  out.model = build_case_model(out.config);
  AssembledSystem system = assemble(out.model);
  auto [coeffs, report] = solve(system, out.config.solver);
  out.dofs = std::move(system.dofs);
  out.coeffs = std::move(coeffs);
  out.report = report;
  out.probe_x = out.config.probe_point();
  const ProbeLocation loc = locate_point(out.model, out.probe_x);
  const SolutionField field = out.field();
  const FieldSample fs = field.at(loc.patch, loc.xi, loc.eta);
  out.probe_u = fs.u;
  out.probe_u_check = fs.u_check;
  return out;
}

namespace {

std::vector<LineSample> case_line(const SolutionField& field,
                                  const CaseConfig& config) {
  return is_disk(config) ? sample_radial(field, config.line_samples)
                         : sample_centerline(field, config.line_samples);
}

std::string out_path(const CaseConfig& config, const std::string& suffix) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  return (fs::path(config.out_dir) / (config.basename() + suffix)).string();
}

// oracle profiles depend on one coordinate: radius or axial position
double oracle_coordinate(const AnalyticSolution& oracle,
                         const Eigen::Vector2d& x) {
  return oracle.kind == AnalyticSolution::Kind::radial ? x.norm() : x.x();
}

std::string line_comment(const CaseConfig& config) {
  std::string s = is_disk(config) ? "s: radius from the center"
                                  : "s: axial position along the centerline";
  s += "; u: deflection; u_check: corrected deflection; psi: rotation along "
       "the line; phi: shear angle (direct); phi_rec: shear angle "
       "(projected); rescaled units";
  if (config.has_physical)
    s += "; deflections are in meters, multiply coordinates by " +
         fmt(config.scales.coordinate_scale) +
         " m and rotations by 1/" + fmt(config.scales.coordinate_scale) +
         " to recover physical values";
  return s;
}

void write_summary(const CaseResult& result, const std::string& path) {
  const CaseConfig& config = result.config;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << std::setprecision(12);
  os << "case: " << case_name(config.kind) << "\n";
  os << "output name: " << config.basename() << "\n";
  os << "degrees: " << config.degree_p << " " << config.degree_q << "\n";
  if (is_disk(config)) {
    os << "radius: " << config.radius << "\n";
    os << "refinement: " << config.refine << "\n";
  } else {
    const auto [n1, n2] = rect_elements(config);
    os << "length: " << config.length << "\n";
    os << "width: " << config.width << "\n";
    os << "elements: " << n1 << " x " << n2 << "\n";
  }
  os << "poisson ratio: " << config.nu << "\n";
  os << "load: " << config.fbar << "\n";
  os << "patches: " << result.model.patches.size() << "\n";
  os << "control points: " << result.dofs.num_points << "\n";
  os << "dofs: " << result.dofs.num_dofs() << " (free " << result.report.num_free
     << ")\n";
  os << "solver: " << solver_name(config.solver) << "\n";
  os << "iterations: " << result.report.iterations << "\n";
  os << "relative residual: " << result.report.relative_residual << "\n";
  os << "matrix nonzeros: " << result.report.nonzeros << "\n";
  os << "probe point: " << result.probe_x.x() << " " << result.probe_x.y()
     << "\n";
  os << "probe deflection: " << result.probe_u << "\n";
  os << "probe corrected deflection: " << result.probe_u_check << "\n";
  if (case_has_oracle(config.kind)) {
    const AnalyticSolution oracle = case_oracle(config);
    const double exact =
        oracle.deflection(oracle_coordinate(oracle, result.probe_x));
    os << "reference deflection: " << exact << "\n";
    if (exact != 0.0)
      os << "relative probe error: "
         << std::abs((result.probe_u - exact) / exact) << "\n";
  }
  if (config.has_physical) {
    os << "physical deflection: " << result.probe_u << " m ("
       << 1e3 * result.probe_u << " mm)\n";
    os << "physical thickness: " << config.physical.thickness << " m\n";
    os << "physical span: " << config.physical.span << " m\n";
    os << "physical pressure: " << config.physical.pressure << " Pa\n";
    os << "physical shear modulus: " << config.physical.shear_modulus
       << " Pa\n";
  }
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace

void run_case(const CaseConfig& config_in, std::ostream& log) {
  CaseResult result = solve_case(config_in);
  const CaseConfig& config = result.config;

  SolutionField field = result.field();
  recover_gradient(field);

  const std::string vtk_path = out_path(config, ".vtk");
  write_vtk(make_element_snapshot(field, config.viz_per_span), vtk_path);

  const std::string line_path = out_path(config, "_line.csv");
  std::vector<std::vector<double>> rows;
  for (const LineSample& ls : case_line(field, config))
    rows.push_back({ls.s, ls.u, ls.u_check, ls.psi, ls.phi, ls.phi_rec});
  write_csv({"s", "u", "u_check", "psi", "phi", "phi_rec"}, rows, line_path,
            line_comment(config));

  const std::string summary_path = out_path(config, "_summary.txt");
  write_summary(result, summary_path);

  log << "case " << config.basename() << ": " << result.dofs.num_dofs()
      << " dofs (" << result.report.num_free << " free), solved in "
      << result.report.seconds << " s, relative residual "
      << result.report.relative_residual << "\n";
  log << "probe at (" << result.probe_x.x() << ", " << result.probe_x.y()
      << "): u = " << std::setprecision(12) << result.probe_u
      << ", corrected u = " << result.probe_u_check << "\n";
  if (config.has_physical)
    log << "physical deflection: " << result.probe_u << " m ("
        << 1e3 * result.probe_u << " mm)\n";
  log << "wrote " << vtk_path << ", " << line_path << ", " << summary_path
      << "\n";
}

namespace {

double disk_span_size(const CaseConfig& config) {
  return config.refine == 0
             ? config.radius
             : config.radius / (3.0 * std::pow(2.0, config.refine - 1));
}

}  // namespace

std::vector<ConvergenceRow> convergence_rows(const CaseConfig& config_in,
                                             int levels) {
  if (levels < 3)
    throw std::invalid_argument("a convergence study needs at least 3 levels");
  CaseConfig base = config_in;
  base.validate();
  const AnalyticSolution oracle = case_oracle(base);
  const auto [n1, n2] = rect_elements(base);

  std::vector<ConvergenceRow> rows;
  for (int level = 0; level < levels; ++level) {
    CaseConfig cfg = base;
    if (is_disk(cfg)) {
      cfg.refine = base.refine + level;
    } else {
      cfg.nel1 = n1 << level;
      cfg.nel2 = n2 << level;
    }
    const CaseResult result = solve_case(cfg);
    const SolutionField field = result.field();

    ConvergenceRow row;
    row.dofs = result.dofs.num_dofs();
    row.h = is_disk(cfg) ? disk_span_size(cfg) : cfg.length / cfg.nel1;
    row.probe = result.probe_u;
    const double exact =
        oracle.deflection(oracle_coordinate(oracle, result.probe_x));
    row.probe_rel_error =
        exact != 0.0 ? std::abs((row.probe - exact) / exact) : std::abs(row.probe);
    row.l2 = l2_error(field, oracle);
    row.l2_check = l2_error(field, oracle, true);
    rows.push_back(row);
  }
  return rows;
}

void run_convergence(const CaseConfig& config_in, int levels,
                     std::ostream& log) {
  CaseConfig config = config_in;
  config.validate();
  const std::vector<ConvergenceRow> rows = convergence_rows(config, levels);

  for (const ConvergenceRow& row : rows)
    log << "level with " << row.dofs << " dofs: probe " << std::setprecision(12)
        << row.probe << ", relative error " << std::setprecision(4)
        << row.probe_rel_error << ", squared-L2 error ratio " << row.l2 << "\n";

  std::string slope_note;
  try {
    const double slope = fit_slope(rows);
    slope_note = "fitted slope of log(error) vs log(h): " + fmt(slope);
    log << slope_note << "\n";
  } catch (const NumericError&) {
    slope_note = "fitted slope unavailable: errors at the round-off floor";
    log << slope_note << "\n";
  }

  std::vector<std::vector<double>> table;
  for (const ConvergenceRow& row : rows)
    table.push_back({static_cast<double>(row.dofs), row.probe,
                     row.probe_rel_error, row.l2});
  const std::string csv_path = out_path(config, "_convergence.csv");
  write_csv({"ndofs", "u", "u_rel_err", "l2_err"}, table, csv_path,
            "total dofs; probe deflection; |relative probe error| vs the "
            "closed form; squared-L2 error ratio of u; " +
                slope_note);
  log << "wrote " << csv_path << "\n";
}

void run_compare(const CaseConfig& config_in, std::ostream& log) {
  CaseConfig config = config_in;
  config.validate();
  const AnalyticSolution oracle = case_oracle(config);
  const AnalyticSolution thin = case_kirchhoff(config);

  CaseResult result = solve_case(config);
  SolutionField field = result.field();
  recover_gradient(field);

  std::vector<std::vector<double>> rows;
  for (const LineSample& ls : case_line(field, config)) {
    rows.push_back({ls.s, ls.u, ls.u_check, ls.psi, ls.phi_rec,
                    oracle.deflection(ls.s), oracle.true_deflection(ls.s),
                    oracle.rotation(ls.s), oracle.shear_angle(ls.s),
                    thin.deflection(ls.s), thin.rotation(ls.s)});
  }

  const double span = is_disk(config) ? config.radius : config.length;
  std::string comment =
      "numeric vs closed-form profiles along the sampling line; columns 2-5: "
      "numeric u, corrected u, rotation, projected shear angle; columns 6-9: "
      "closed-form references; columns 10-11: thin-plate limit; dimensionless "
      "plots divide u by load*span^4 = " +
      fmt(config.fbar * std::pow(span, 4)) +
      ", rotations by load*span^3 = " + fmt(config.fbar * std::pow(span, 3)) +
      ", shear angles by load*span = " + fmt(config.fbar * span);
  const std::string csv_path = out_path(config, "_line.csv");
  write_csv({"s", "u", "u_check", "psi", "phi", "u_ref", "u_check_ref",
             "psi_ref", "phi_ref", "u_thin", "psi_thin"},
            rows, csv_path, comment);

  log << "case " << config.basename() << ": " << result.dofs.num_dofs()
      << " dofs, probe u = " << std::setprecision(12) << result.probe_u
      << "\n";
  log << "wrote " << csv_path << "\n";
}

}  // namespace igaplate
