#include "igaplate/io.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace igaplate {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
  return is;
}

}  // namespace

void FieldSnapshot::validate() const {
  const int np = static_cast<int>(points.size());
  for (const auto& q : quads)
    for (int idx : q)
      if (idx < 0 || idx >= np)
        throw std::invalid_argument("snapshot connectivity index out of range");
  for (const auto& [name, values] : scalars) {
    if (name.empty()) throw std::invalid_argument("snapshot array needs a name");
    if (static_cast<int>(values.size()) != np)
      throw std::invalid_argument("snapshot array '" + name +
                                  "' does not match the point count");
  }
}

namespace {

// shared sampling core: arbitrary parameter grids per patch
FieldSnapshot sample_grids(
    const SolutionField& field,
    const std::function<std::pair<std::vector<double>, std::vector<double>>(
        const PatchSurface&)>& grids) {
  const MultipatchModel& model = field.model();
  FieldSnapshot snap;
  std::vector<double> u, p1, p2, f1, f2, uc;
  for (std::size_t patch = 0; patch < model.patches.size(); ++patch) {
    const auto [xs, ys] = grids(model.patches[patch]);
    const int nx = static_cast<int>(xs.size());
    const int ny = static_cast<int>(ys.size());
    const int base = static_cast<int>(snap.points.size());
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const FieldSample fs = field.at(static_cast<int>(patch), xs[i], ys[j]);
        const Eigen::Vector2d phi =
            field.has_recovered_gradient()
                ? field.recovered_phi(static_cast<int>(patch), xs[i], ys[j])
                : fs.phi;
        snap.points.push_back(fs.x);
        u.push_back(fs.u);
        p1.push_back(fs.psi1);
        p2.push_back(fs.psi2);
        f1.push_back(phi.x());
        f2.push_back(phi.y());
        uc.push_back(fs.u_check);
      }
    }
    for (int j = 0; j + 1 < ny; ++j)
      for (int i = 0; i + 1 < nx; ++i)
        snap.quads.push_back({base + j * nx + i, base + j * nx + i + 1,
                              base + (j + 1) * nx + i + 1,
                              base + (j + 1) * nx + i});
  }
  snap.scalars = {{"u", std::move(u)},         {"psi1", std::move(p1)},
                  {"psi2", std::move(p2)},     {"phi1", std::move(f1)},
                  {"phi2", std::move(f2)},     {"u_check", std::move(uc)}};
  snap.validate();
  return snap;
}

}  // namespace

FieldSnapshot make_snapshot(const SolutionField& field, int n) {
  if (n < 2) throw std::invalid_argument("snapshot needs at least a 2 x 2 grid");
  return sample_grids(field, [n](const PatchSurface&) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i) / (n - 1);
    return std::make_pair(g, g);
  });
}

std::vector<double> subgrid_params(const KnotVector& kv, int per_span) {
  if (per_span < 1)
    throw std::invalid_argument("need at least one subdivision per span");
  std::vector<double> out;
  for (int span : kv.nonempty_spans()) {
    const double a = kv.knots()[span];
    const double b = kv.knots()[span + 1];
    for (int i = 0; i < per_span; ++i)
      out.push_back(a + (b - a) * i / per_span);
  }
  out.push_back(kv.back());
  return out;
}

FieldSnapshot make_element_snapshot(const SolutionField& field, int per_span) {
  return sample_grids(field, [per_span](const PatchSurface& patch) {
    return std::make_pair(subgrid_params(patch.kv(0), per_span),
                          subgrid_params(patch.kv(1), per_span));
  });
}

void write_vtk(const FieldSnapshot& snapshot, const std::string& path) {
  snapshot.validate();
  std::ofstream os = open_out(path);
  os << "# vtk DataFile Version 3.0\n";
  os << "plate fields\n";
  os << "ASCII\n";
  os << "DATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << snapshot.points.size() << " double\n";
  for (const auto& p : snapshot.points)
    os << fmt(p.x()) << ' ' << fmt(p.y()) << " 0\n";
  os << "CELLS " << snapshot.quads.size() << ' ' << 5 * snapshot.quads.size() << '\n';
  for (const auto& q : snapshot.quads)
    os << "4 " << q[0] << ' ' << q[1] << ' ' << q[2] << ' ' << q[3] << '\n';
  os << "CELL_TYPES " << snapshot.quads.size() << '\n';
  for (std::size_t i = 0; i < snapshot.quads.size(); ++i) os << "9\n";
  os << "POINT_DATA " << snapshot.points.size() << '\n';
  for (const auto& [name, values] : snapshot.scalars) {
    os << "SCALARS " << name << " double 1\n";
    os << "LOOKUP_TABLE default\n";
    for (double v : values) os << fmt(v) << '\n';
  }
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

FieldSnapshot read_vtk(const std::string& path) {
  std::ifstream is = open_in(path);
  FieldSnapshot snap;
  std::string tok;
  while (is >> tok) {
    if (tok == "POINTS") {
      std::size_t n = 0;
      is >> n >> tok;  // count, type
      snap.points.resize(n);
      for (auto& p : snap.points) {
        double z;
        is >> p.x() >> p.y() >> z;
      }
    } else if (tok == "CELLS") {
      std::size_t n = 0, total = 0;
      is >> n >> total;
      snap.quads.resize(n);
      for (auto& q : snap.quads) {
        int k;
        is >> k;
        if (k != 4) throw std::runtime_error("reader handles quads only");
        is >> q[0] >> q[1] >> q[2] >> q[3];
      }
    } else if (tok == "SCALARS") {
      std::string name, type;
      int comps = 0;
      is >> name >> type >> comps;
      is >> tok >> tok;  // LOOKUP_TABLE default
      std::vector<double> values(snap.points.size());
      for (double& v : values) is >> v;
      snap.scalars.emplace_back(name, std::move(values));
    }
  }
  if (is.bad()) throw std::runtime_error("read failed for '" + path + "'");
  snap.validate();
  return snap;
}

void write_csv(const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows,
               const std::string& path, const std::string& comment) {
  std::ofstream os = open_out(path);
  if (!comment.empty()) os << "# " << comment << '\n';
  for (std::size_t i = 0; i < header.size(); ++i)
    os << header[i] << (i + 1 < header.size() ? ',' : '\n');
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("csv row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i)
      os << fmt(row[i]) << (i + 1 < row.size() ? ',' : '\n');
  }
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

std::pair<std::vector<std::string>, std::vector<std::vector<double>>> read_csv(
    const std::string& path) {
  std::ifstream is = open_in(path);
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) header.push_back(cell);
    break;
  }
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return {header, rows};
}

}  // namespace igaplate
