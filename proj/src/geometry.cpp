#include "igaplate/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "igaplate/analytic.hpp"
#include "igaplate/errors.hpp"

namespace igaplate {

namespace {

KnotVector uniform_open_kv(int p, int nel) {
  std::vector<double> knots(p + 1, 0.0);
  for (int j = 1; j < nel; ++j) knots.push_back(static_cast<double>(j) / nel);
  knots.insert(knots.end(), p + 1, 1.0);
  return KnotVector(p, knots);
}

std::vector<double> uniform_cuts(int nel) {
  std::vector<double> cuts;
  for (int j = 1; j < nel; ++j) cuts.push_back(static_cast<double>(j) / nel);
  return cuts;
}

void check_nu(double nu) {
  if (!(nu >= 0.0) || !(nu < 0.5))
    throw ConfigError("poisson ratio must lie in [0, 0.5)");
}

struct EdgeGeom {
  std::vector<Eigen::Vector2d> pts;
  std::vector<double> ws;
};

EdgeGeom edge_geom(const PatchSurface& patch, EdgeSide side) {
  EdgeGeom g;
  for (int a : edge_indices(patch, side)) {
    g.pts.push_back(patch.net().point(a));
    g.ws.push_back(patch.net().weight(a));
  }
  return g;
}

bool edges_match(const EdgeGeom& a, const EdgeGeom& b, bool reversed, double tol) {
  const size_t n = a.pts.size();
  if (b.pts.size() != n) return false;
  for (size_t i = 0; i < n; ++i) {
    const size_t j = reversed ? n - 1 - i : i;
    if ((a.pts[i] - b.pts[j]).norm() > tol) return false;
    if (std::abs(a.ws[i] - b.ws[j]) > 1e-12) return false;
  }
  return true;
}

constexpr EdgeSide kSides[4] = {EdgeSide::xi_min, EdgeSide::xi_max,
                                EdgeSide::eta_min, EdgeSide::eta_max};

// discover conforming interfaces by control-point coincidence, then tag every
// remaining exterior edge as free
void finish_model(MultipatchModel& model) {
  double diam = 0.0;
  for (const auto& p : model.patches) diam = std::max(diam, p.diameter());
  const double tol = 1e-12 * diam;

  const int np = static_cast<int>(model.patches.size());
  std::vector<std::vector<bool>> interior(np, std::vector<bool>(4, false));
  for (int pa = 0; pa < np; ++pa) {
    for (int pb = pa + 1; pb < np; ++pb) {
      for (int sa = 0; sa < 4; ++sa) {
        const EdgeGeom ga = edge_geom(model.patches[pa], kSides[sa]);
        for (int sb = 0; sb < 4; ++sb) {
          const EdgeGeom gb = edge_geom(model.patches[pb], kSides[sb]);
          bool rev = false;
          if (edges_match(ga, gb, false, tol))
            rev = false;
          else if (edges_match(ga, gb, true, tol))
            rev = true;
          else
            continue;
          model.interfaces.push_back({pa, kSides[sa], pb, kSides[sb], rev});
          interior[pa][sa] = interior[pb][sb] = true;
        }
      }
    }
  }
  model.tags.clear();
  for (int p = 0; p < np; ++p)
    for (int s = 0; s < 4; ++s)
      if (!interior[p][s]) model.tags.push_back({p, kSides[s], BcKind::free_edge});
}

PatchSurface greville_rectangle(double x0, double x1, double y0, double y1,
                                int p, int q, int nel1, int nel2) {
  KnotVector kv1 = uniform_open_kv(p, nel1);
  KnotVector kv2 = uniform_open_kv(q, nel2);
  ControlNet net(kv1.num_basis(), kv2.num_basis());
  for (int j = 0; j < net.n2(); ++j)
    for (int i = 0; i < net.n1(); ++i)
      net.point(i, j) = {x0 + (x1 - x0) * kv1.greville(i),
                         y0 + (y1 - y0) * kv2.greville(j)};
  return PatchSurface(kv1, kv2, net);
}

// ring sector spanning a 90-degree arc: parametric direction 0 runs from the
// straight inner chord to the exact circular outer arc, direction 1 sweeps
// the angle.  Built as a ruled surface and degree-elevated radially.
PatchSurface ring_sector(const Eigen::Vector2d inner[3], const Eigen::Vector2d outer[3]) {
  KnotVector kvr(1, {0, 0, 1, 1});
  KnotVector kva(2, {0, 0, 0, 1, 1, 1});
  ControlNet net(2, 3);
  const double arc_w[3] = {1.0, std::sqrt(0.5), 1.0};
  for (int j = 0; j < 3; ++j) {
    net.point(0, j) = inner[j];
    net.weight(0, j) = 1.0;
    net.point(1, j) = outer[j];
    net.weight(1, j) = arc_w[j];
  }
  return PatchSurface(kvr, kva, net).elevated(0, 1);
}

}  // namespace

double MultipatchModel::sigma() const { return sigma_ratio(nu); }

std::vector<int> edge_indices(const PatchSurface& patch, EdgeSide side) {
  const ControlNet& net = patch.net();
  std::vector<int> out;
  switch (side) {
    case EdgeSide::xi_min:
      for (int j = 0; j < net.n2(); ++j) out.push_back(net.index(0, j));
      break;
    case EdgeSide::xi_max:
      for (int j = 0; j < net.n2(); ++j) out.push_back(net.index(net.n1() - 1, j));
      break;
    case EdgeSide::eta_min:
      for (int i = 0; i < net.n1(); ++i) out.push_back(net.index(i, 0));
      break;
    case EdgeSide::eta_max:
      for (int i = 0; i < net.n1(); ++i) out.push_back(net.index(i, net.n2() - 1));
      break;
  }
  return out;
}

std::vector<std::pair<int, int>> interface_pairs(const MultipatchModel& model,
                                                 const PatchInterface& iface) {
  const auto ia = edge_indices(model.patches[iface.patch_a], iface.side_a);
  auto ib = edge_indices(model.patches[iface.patch_b], iface.side_b);
  if (iface.reversed) std::reverse(ib.begin(), ib.end());
  if (ia.size() != ib.size())
    throw NumericError("interface_pairs: edge control counts differ");
  std::vector<std::pair<int, int>> pairs(ia.size());
  for (size_t k = 0; k < ia.size(); ++k) pairs[k] = {ia[k], ib[k]};
  return pairs;
}

MultipatchModel make_rectangle(double length, double width, int p, int q,
                               int nel1, int nel2, double nu, double fbar) {
  if (!(length > 0.0) || !(width > 0.0) || !std::isfinite(length) || !std::isfinite(width))
    throw ConfigError("rectangle: side lengths must be positive");
  if (p < 2 || q < 2)
    throw ConfigError("rectangle: degrees below 2 break the smooth postprocessing");
  if (nel1 < 1 || nel2 < 1) throw ConfigError("rectangle: need at least one span");
  check_nu(nu);
  if (!std::isfinite(fbar)) throw ConfigError("rectangle: load must be finite");

  MultipatchModel model;
  model.patches.push_back(
      greville_rectangle(0.0, length, -0.5 * width, 0.5 * width, p, q, nel1, nel2));
  model.nu = nu;
  model.fbar = fbar;
  model.load = [fbar](const Eigen::Vector2d&) { return fbar; };
  finish_model(model);
  return model;
}

MultipatchModel make_disk(double radius, int p, int refine, double nu, double fbar) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ConfigError("disk: radius must be positive");
  if (p < 2) throw ConfigError("disk: degrees below 2 break the smooth postprocessing");
  if (refine < 0 || refine > 12) throw ConfigError("disk: refinement level out of range");
  check_nu(nu);
  if (!std::isfinite(fbar)) throw ConfigError("disk: load must be finite");

  const double s = 0.5 * radius, c = radius * std::sqrt(0.5);
  const double m = radius * std::sqrt(2.0);

  MultipatchModel model;
  model.patches.push_back(greville_rectangle(-s, s, -s, s, 2, 2, 1, 1));

  using V = Eigen::Vector2d;
  const V east_in[3] = {V(s, -s), V(s, 0), V(s, s)};
  const V east_out[3] = {V(c, -c), V(m, 0), V(c, c)};
  const V north_in[3] = {V(s, s), V(0, s), V(-s, s)};
  const V north_out[3] = {V(c, c), V(0, m), V(-c, c)};
  const V west_in[3] = {V(-s, s), V(-s, 0), V(-s, -s)};
  const V west_out[3] = {V(-c, c), V(-m, 0), V(-c, -c)};
  const V south_in[3] = {V(-s, -s), V(0, -s), V(s, -s)};
  const V south_out[3] = {V(-c, -c), V(0, -m), V(c, -c)};
  model.patches.push_back(ring_sector(east_in, east_out));
  model.patches.push_back(ring_sector(north_in, north_out));
  model.patches.push_back(ring_sector(west_in, west_out));
  model.patches.push_back(ring_sector(south_in, south_out));

  if (p > 2)
    for (auto& patch : model.patches)
      patch = patch.elevated(0, p - 2).elevated(1, p - 2);

  const int nel = (refine == 0) ? 1 : 3 * (1 << (refine - 1));
  const std::vector<double> cuts = uniform_cuts(nel);
  if (!cuts.empty())
    for (auto& patch : model.patches)
      patch = patch.with_inserted_knots(0, cuts).with_inserted_knots(1, cuts);

  model.nu = nu;
  model.fbar = fbar;
  model.load = [fbar](const Eigen::Vector2d&) { return fbar; };
  finish_model(model);

  if (model.interfaces.size() != 8)
    throw NumericError("disk: expected 8 conforming interfaces, found " +
                       std::to_string(model.interfaces.size()));
  return model;
}

void tag_edge(MultipatchModel& model, int patch, EdgeSide side, BcKind kind) {
  if (patch < 0 || patch >= static_cast<int>(model.patches.size()))
    throw std::invalid_argument("tag_edge: patch index out of range");
  for (auto& tag : model.tags) {
    if (tag.patch == patch && tag.side == side) {
      tag.kind = kind;
      return;
    }
  }
  throw std::invalid_argument("tag_edge: edge is not an exterior edge of the model");
}

RescaledInputs to_rescaled(const PhysicalCase& phys) {
  if (!(phys.thickness > 0.0) || !(phys.shear_modulus > 0.0))
    throw ConfigError("physical case: thickness and shear modulus must be positive");
  if (!(phys.span > 0.0)) throw ConfigError("physical case: span must be positive");
  check_nu(phys.nu);
  if (!std::isfinite(phys.pressure)) throw ConfigError("physical case: load must be finite");

  RescaledInputs out;
  out.span = phys.span / phys.thickness;
  out.rotation_scale = phys.pressure / phys.shear_modulus;
  out.fbar = phys.thickness * out.rotation_scale;
  out.deflection_scale = out.fbar;
  out.coordinate_scale = phys.thickness;
  return out;
}

const char* side_name(EdgeSide side) {
  switch (side) {
    case EdgeSide::xi_min: return "xi_min";
    case EdgeSide::xi_max: return "xi_max";
    case EdgeSide::eta_min: return "eta_min";
    case EdgeSide::eta_max: return "eta_max";
  }
  return "?";
}

const char* bc_name(BcKind kind) {
  switch (kind) {
    case BcKind::free_edge: return "free";
    case BcKind::soft_simple: return "simply_supported";
    case BcKind::clamped: return "clamped";
  }
  return "?";
}

std::string describe(const MultipatchModel& model) {
  std::ostringstream os;
  os << "patches: " << model.patches.size() << "\n";
  for (size_t i = 0; i < model.patches.size(); ++i) {
    const auto& p = model.patches[i];
    os << "  patch " << i << ": degrees (" << p.degree(0) << ", " << p.degree(1)
       << "), spans (" << p.kv(0).num_spans() << " x " << p.kv(1).num_spans()
       << "), net (" << p.net().n1() << " x " << p.net().n2() << ")\n";
  }
  os << "interfaces: " << model.interfaces.size() << "\n";
  os << "poisson: " << model.nu << ", load: " << model.fbar << "\n";
  for (const auto& tag : model.tags)
    os << "  patch " << tag.patch << " " << side_name(tag.side) << ": "
       << bc_name(tag.kind) << "\n";
  return os.str();
}

}  // namespace igaplate
