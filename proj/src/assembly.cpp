#include "igaplate/assembly.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "igaplate/errors.hpp"
#include "igaplate/quadrature.hpp"

namespace igaplate {

namespace {

constexpr double kShear = 5.0 / 6.0;

int uf_find(std::vector<int>& parent, int a) {
  while (parent[a] != a) {
    parent[a] = parent[parent[a]];
    a = parent[a];
  }
  return a;
}

std::string cell_label(const ElementCell& cell, int patch) {
  return "patch " + std::to_string(patch) + ", cell [" + std::to_string(cell.xi0()) +
         ", " + std::to_string(cell.xi1()) + "] x [" + std::to_string(cell.eta0()) +
         ", " + std::to_string(cell.eta1()) + "]";
}

// one quadrature sweep filling the requested parts
ElementMatrices element_terms(const ElementCell& cell, const MultipatchModel& model,
                              const DofMap& dofs, int patch, bool want_stiffness,
                              bool want_load) {
  const PatchSurface& surf = model.patches[patch];
  const double sigma = model.sigma();
  const double bend = (sigma + 1.0) / 6.0;

  ElementMatrices out;
  const std::vector<int>& support = cell.support();
  const int n = static_cast<int>(support.size());
  out.points.resize(n);
  for (int a = 0; a < n; ++a) out.points[a] = dofs.point_id(patch, support[a]);
  for (int r = 0; r < 3; ++r) {
    out.F[r] = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < 3; ++c) out.K[r][c] = Eigen::MatrixXd::Zero(n, n);
  }

  const QuadratureRule rule = rule_for(surf.degree(0), surf.degree(1));
  const double dxi = cell.xi1() - cell.xi0();
  const double deta = cell.eta1() - cell.eta0();

  Eigen::VectorXd N(n), G1(n), G2(n);
  for (int k = 0; k < rule.size(); ++k) {
    const double xi = cell.xi0() + rule.xi[k] * dxi;
    const double eta = cell.eta0() + rule.eta[k] * deta;
    const BasisEval be = cell.basis_at(xi, eta, 1);
    const SurfacePoint sp = cell.geometry_at(xi, eta, 1);

    const double detj = sp.jac.determinant();
    if (!(detj > 0.0) || !std::isfinite(detj))
      throw NumericError("element integration: nonpositive jacobian at " +
                         cell_label(cell, patch));
    const Eigen::Matrix2d jinv = sp.jac.inverse();
    const double wq = rule.weights[k] * dxi * deta * detj;

    for (int a = 0; a < n; ++a) {
      N[a] = be.d(0, a);
      G1[a] = jinv(0, 0) * be.d(1, a) + jinv(1, 0) * be.d(2, a);
      G2[a] = jinv(0, 1) * be.d(1, a) + jinv(1, 1) * be.d(2, a);
    }

    if (want_stiffness) {
      out.K[0][0].noalias() += (wq * kShear) * (G1 * G1.transpose() + G2 * G2.transpose());
      out.K[0][1].noalias() += (wq * kShear) * (G1 * N.transpose());
      out.K[0][2].noalias() += (wq * kShear) * (G2 * N.transpose());
      out.K[1][1].noalias() += wq * (kShear * (N * N.transpose()) +
                                     bend * (G1 * G1.transpose()) +
                                     (1.0 / 12.0) * (G2 * G2.transpose()));
      out.K[2][2].noalias() += wq * (kShear * (N * N.transpose()) +
                                     bend * (G2 * G2.transpose()) +
                                     (1.0 / 12.0) * (G1 * G1.transpose()));
      out.K[1][2].noalias() += wq * ((sigma / 6.0) * (G1 * G2.transpose()) +
                                     (1.0 / 12.0) * (G2 * G1.transpose()));
    }
    if (want_load) {
      const double f = model.load ? model.load(sp.x) : model.fbar;
      out.F[0].noalias() += (wq * f) * N;
      out.F[1].noalias() -= (wq * f * sigma / 10.0) * G1;
      out.F[2].noalias() -= (wq * f * sigma / 10.0) * G2;
    }
  }
  if (want_stiffness) {
    out.K[1][0] = out.K[0][1].transpose();
    out.K[2][0] = out.K[0][2].transpose();
    out.K[2][1] = out.K[1][2].transpose();
  }
  return out;
}

}  // namespace

DofMap build_dofmap(const MultipatchModel& model) {
  DofMap dm;
  const int np = static_cast<int>(model.patches.size());
  dm.patch_offset.resize(np + 1, 0);
  for (int p = 0; p < np; ++p)
    dm.patch_offset[p + 1] = dm.patch_offset[p] + model.patches[p].net().size();
  const int flat_total = dm.patch_offset[np];

  double diam = 0.0;
  for (const auto& patch : model.patches) diam = std::max(diam, patch.diameter());

  std::vector<int> parent(flat_total);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& iface : model.interfaces) {
    const auto& pa = model.patches[iface.patch_a];
    const auto& pb = model.patches[iface.patch_b];
    for (auto [na, nb] : interface_pairs(model, iface)) {
      if ((pa.net().point(na) - pb.net().point(nb)).norm() > 1e-12 * diam)
        throw std::invalid_argument(
            "dof map: interface control points do not coincide");
      const int ra = uf_find(parent, dm.patch_offset[iface.patch_a] + na);
      const int rb = uf_find(parent, dm.patch_offset[iface.patch_b] + nb);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }

  dm.merged.assign(flat_total, -1);
  std::vector<int> id_of_root(flat_total, -1);
  for (int f = 0; f < flat_total; ++f) {
    const int root = uf_find(parent, f);
    if (id_of_root[root] < 0) {
      id_of_root[root] = dm.num_points++;
      int patch = 0;
      while (dm.patch_offset[patch + 1] <= f) ++patch;
      dm.position.push_back(model.patches[patch].net().point(f - dm.patch_offset[patch]));
    }
    dm.merged[f] = id_of_root[root];
  }

  dm.fixed.assign(dm.num_dofs(), false);
  for (const auto& tag : model.tags) {
    if (tag.kind == BcKind::free_edge) continue;
    for (int net_idx : edge_indices(model.patches[tag.patch], tag.side)) {
      const int pt = dm.point_id(tag.patch, net_idx);
      dm.fixed[dm.dof(0, pt)] = true;
      if (tag.kind == BcKind::clamped) {
        dm.fixed[dm.dof(1, pt)] = true;
        dm.fixed[dm.dof(2, pt)] = true;
      }
    }
  }

  dm.free_index.assign(dm.num_dofs(), -1);
  for (int d = 0; d < dm.num_dofs(); ++d)
    if (!dm.fixed[d]) dm.free_index[d] = dm.num_free++;
  return dm;
}

ElementMatrices element_stiffness(const ElementCell& cell, const MultipatchModel& model,
                                  const DofMap& dofs, int patch) {
  return element_terms(cell, model, dofs, patch, true, false);
}

ElementMatrices element_load(const ElementCell& cell, const MultipatchModel& model,
                             const DofMap& dofs, int patch) {
  return element_terms(cell, model, dofs, patch, false, true);
}

Eigen::VectorXd AssembledSystem::expand(const Eigen::VectorXd& free_values) const {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(dofs.num_dofs());
  for (int d = 0; d < dofs.num_dofs(); ++d)
    if (dofs.free_index[d] >= 0) full[d] = free_values[dofs.free_index[d]];
  return full;
}

AssembledSystem assemble(const MultipatchModel& model) {
  AssembledSystem sys;
  sys.dofs = build_dofmap(model);
  const DofMap& dm = sys.dofs;
  if (dm.num_free == 0)
    throw ConfigError("assemble: the boundary conditions constrain every dof");

  const int np = static_cast<int>(model.patches.size());
  std::vector<std::vector<ElementCell>> cells(np);
  for (int p = 0; p < np; ++p) cells[p] = model.patches[p].element_cells();

  // merged-point adjacency from shared cell supports
  std::vector<std::vector<int>> nbr(dm.num_points);
  for (int p = 0; p < np; ++p) {
    for (const auto& cell : cells[p]) {
      std::vector<int> pts;
      pts.reserve(cell.support().size());
      for (int s : cell.support()) pts.push_back(dm.point_id(p, s));
      for (int a : pts) nbr[a].insert(nbr[a].end(), pts.begin(), pts.end());
    }
  }
  for (auto& list : nbr) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  // sparsity over free dofs; generated column order is already ascending
  std::vector<int> rowptr(dm.num_free + 1, 0);
  for (int d = 0; d < dm.num_dofs(); ++d) {
    const int row = dm.free_index[d];
    if (row < 0) continue;
    const int pt = d % dm.num_points;
    int count = 0;
    for (int fb = 0; fb < 3; ++fb)
      for (int b : nbr[pt])
        if (dm.free_index[dm.dof(fb, b)] >= 0) ++count;
    rowptr[row + 1] = count;
  }
  for (int r = 0; r < dm.num_free; ++r) rowptr[r + 1] += rowptr[r];
  const std::size_t nnz = static_cast<std::size_t>(rowptr[dm.num_free]);

  std::vector<int> colidx(nnz);
  for (int d = 0; d < dm.num_dofs(); ++d) {
    const int row = dm.free_index[d];
    if (row < 0) continue;
    const int pt = d % dm.num_points;
    std::size_t pos = static_cast<std::size_t>(rowptr[row]);
    for (int fb = 0; fb < 3; ++fb)
      for (int b : nbr[pt]) {
        const int fj = dm.free_index[dm.dof(fb, b)];
        if (fj >= 0) colidx[pos++] = fj;
      }
  }
  std::vector<double> values(nnz, 0.0);
  sys.rhs = Eigen::VectorXd::Zero(dm.num_free);

  // deterministic serial scatter
  std::vector<std::array<int, 3>> freeloc;
  for (int p = 0; p < np; ++p) {
    for (const auto& cell : cells[p]) {
      const ElementMatrices em = element_terms(cell, model, dm, p, true, true);
      const int n = static_cast<int>(em.points.size());
      freeloc.assign(n, {});
      for (int a = 0; a < n; ++a)
        for (int f = 0; f < 3; ++f)
          freeloc[a][f] = dm.free_index[dm.dof(f, em.points[a])];
      for (int fa = 0; fa < 3; ++fa) {
        for (int a = 0; a < n; ++a) {
          const int fi = freeloc[a][fa];
          if (fi < 0) continue;
          sys.rhs[fi] += em.F[fa][a];
          const int* cbeg = colidx.data() + rowptr[fi];
          const int* cend = colidx.data() + rowptr[fi + 1];
          for (int fb = 0; fb < 3; ++fb) {
            const auto& Kb = em.K[fa][fb];
            for (int b = 0; b < n; ++b) {
              const int fj = freeloc[b][fb];
              if (fj < 0) continue;
              const int* it = std::lower_bound(cbeg, cend, fj);
              values[it - colidx.data()] += Kb(a, b);
            }
          }
        }
      }
    }
  }

  // hand the arrays to an Eigen sparse matrix; the matrix is symmetric, so
  // the row-compressed layout doubles as column-compressed storage
  sys.matrix.resize(dm.num_free, dm.num_free);
  sys.matrix.makeCompressed();
  sys.matrix.resizeNonZeros(static_cast<Eigen::Index>(nnz));
  std::copy(rowptr.begin(), rowptr.end(), sys.matrix.outerIndexPtr());
  std::copy(colidx.begin(), colidx.end(), sys.matrix.innerIndexPtr());
  std::copy(values.begin(), values.end(), sys.matrix.valuePtr());
  return sys;
}

Eigen::VectorXd rigid_mode(const DofMap& dofs, double c0, double a1, double a2) {
  Eigen::VectorXd v(dofs.num_dofs());
  for (int i = 0; i < dofs.num_points; ++i) {
    v[dofs.dof(0, i)] = c0 - a1 * dofs.position[i].x() - a2 * dofs.position[i].y();
    v[dofs.dof(1, i)] = a1;
    v[dofs.dof(2, i)] = a2;
  }
  return v;
}

double energy_product(const MultipatchModel& model, const DofMap& dofs,
                      const Eigen::VectorXd& coeffs) {
  if (coeffs.size() != dofs.num_dofs())
    throw std::invalid_argument("energy_product: coefficient size mismatch");
  const double sigma = model.sigma();
  double total = 0.0;
  for (int p = 0; p < static_cast<int>(model.patches.size()); ++p) {
    const PatchSurface& surf = model.patches[p];
    const QuadratureRule rule = rule_for(surf.degree(0), surf.degree(1));
    for (const auto& cell : surf.element_cells()) {
      const double dxi = cell.xi1() - cell.xi0();
      const double deta = cell.eta1() - cell.eta0();
      for (int k = 0; k < rule.size(); ++k) {
        const double xi = cell.xi0() + rule.xi[k] * dxi;
        const double eta = cell.eta0() + rule.eta[k] * deta;
        const BasisEval be = cell.basis_at(xi, eta, 1);
        const SurfacePoint sp = cell.geometry_at(xi, eta, 1);
        const double detj = sp.jac.determinant();
        if (!(detj > 0.0))
          throw NumericError("energy integration: nonpositive jacobian at " +
                             cell_label(cell, p));
        const Eigen::Matrix2d jinv = sp.jac.inverse();
        const double wq = rule.weights[k] * dxi * deta * detj;

        double u1 = 0, u2 = 0;          // deflection gradient
        double s1 = 0, s2 = 0;          // rotation values
        double s11 = 0, s12 = 0, s21 = 0, s22 = 0;  // rotation gradients
        for (int a = 0; a < static_cast<int>(be.indices.size()); ++a) {
          const int pt = dofs.point_id(p, be.indices[a]);
          const double nv = be.d(0, a);
          const double g1 = jinv(0, 0) * be.d(1, a) + jinv(1, 0) * be.d(2, a);
          const double g2 = jinv(0, 1) * be.d(1, a) + jinv(1, 1) * be.d(2, a);
          const double cu = coeffs[dofs.dof(0, pt)];
          const double c1 = coeffs[dofs.dof(1, pt)];
          const double c2 = coeffs[dofs.dof(2, pt)];
          u1 += cu * g1;
          u2 += cu * g2;
          s1 += c1 * nv;
          s2 += c2 * nv;
          s11 += c1 * g1;
          s12 += c1 * g2;
          s21 += c2 * g1;
          s22 += c2 * g2;
        }
        const double div = s11 + s22;
        const double sym_sq =
            s11 * s11 + s22 * s22 + 0.5 * (s12 + s21) * (s12 + s21);
        const double shear_sq =
            (u1 + s1) * (u1 + s1) + (u2 + s2) * (u2 + s2);
        total += wq * ((sigma * div * div + sym_sq) / 6.0 + kShear * shear_sq);
      }
    }
  }
  return total;
}

void dump_matrix(const AssembledSystem& system, std::ostream& os) {
  const auto& m = system.matrix;
  for (int outer = 0; outer < m.outerSize(); ++outer)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, outer); it; ++it)
      os << outer << " " << it.index() << " " << it.value() << "\n";
}

}  // namespace igaplate
