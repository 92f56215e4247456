#include "igaplate/postprocess.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "igaplate/errors.hpp"
#include "igaplate/quadrature.hpp"

namespace igaplate {

namespace {

constexpr double kShear = 5.0 / 6.0;

struct CellScan {
  // gathered coefficients of the three fields over one support
  Eigen::VectorXd cu, cp1, cp2;
};

CellScan gather(const SolutionField& field, int patch, const std::vector<int>& support) {
  CellScan s;
  const int n = static_cast<int>(support.size());
  s.cu.resize(n);
  s.cp1.resize(n);
  s.cp2.resize(n);
  const DofMap& dm = field.dofs();
  for (int a = 0; a < n; ++a) {
    const int pid = dm.point_id(patch, support[a]);
    s.cu[a] = field.coeffs()[dm.dof(0, pid)];
    s.cp1[a] = field.coeffs()[dm.dof(1, pid)];
    s.cp2[a] = field.coeffs()[dm.dof(2, pid)];
  }
  return s;
}

FieldSample make_sample(const CellScan& c, const BasisEval& b, const SurfacePoint& sp,
                        double sigma) {
  FieldSample fs;
  fs.x = sp.x;
  const Eigen::Matrix2d jinv = sp.jac.inverse();
  const auto& N = b.d;
  Eigen::Vector2d gu(N.row(1).dot(c.cu), N.row(2).dot(c.cu));
  Eigen::Vector2d g1(N.row(1).dot(c.cp1), N.row(2).dot(c.cp1));
  Eigen::Vector2d g2(N.row(1).dot(c.cp2), N.row(2).dot(c.cp2));
  fs.u = N.row(0).dot(c.cu);
  fs.psi1 = N.row(0).dot(c.cp1);
  fs.psi2 = N.row(0).dot(c.cp2);
  fs.du = jinv.transpose() * gu;
  fs.dpsi1 = jinv.transpose() * g1;
  fs.dpsi2 = jinv.transpose() * g2;
  fs.u_check = fs.u - (sigma / 60.0) * (fs.dpsi1.x() + fs.dpsi2.y());
  fs.phi = fs.du + Eigen::Vector2d(fs.psi1, fs.psi2);
  return fs;
}

double oracle_value(const AnalyticSolution& oracle, const Eigen::Vector2d& x,
                    bool corrected) {
  const double coord = oracle.kind == AnalyticSolution::Kind::radial ? x.norm() : x.x();
  return corrected ? oracle.true_deflection(coord) : oracle.deflection(coord);
}

// parametric Hessian of one scalar from a k=2 basis row set
Eigen::Matrix2d param_hessian(const Eigen::MatrixXd& N, const Eigen::VectorXd& c) {
  Eigen::Matrix2d H;
  H(0, 0) = N.row(3).dot(c);
  H(0, 1) = H(1, 0) = N.row(4).dot(c);
  H(1, 1) = N.row(5).dot(c);
  return H;
}

Eigen::Matrix2d physical_hessian(const Eigen::Matrix2d& Hp, const Eigen::Vector2d& grad,
                                 const SurfacePoint& sp, const Eigen::Matrix2d& jinv) {
  Eigen::Matrix2d HX0, HX1;
  HX0 << sp.d2[0].x(), sp.d2[1].x(), sp.d2[1].x(), sp.d2[2].x();
  HX1 << sp.d2[0].y(), sp.d2[1].y(), sp.d2[1].y(), sp.d2[2].y();
  return jinv.transpose() * (Hp - grad.x() * HX0 - grad.y() * HX1) * jinv;
}

}  // namespace

SolutionField::SolutionField(const MultipatchModel& model, DofMap dofs,
                             Eigen::VectorXd coeffs)
    : model_(&model), dofs_(std::move(dofs)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != dofs_.num_dofs())
    throw std::invalid_argument("coefficient vector does not match the dof numbering");
}

FieldSample SolutionField::at(int patch, double xi, double eta) const {
  if (patch < 0 || patch >= static_cast<int>(model_->patches.size()))
    throw std::invalid_argument("patch index out of range");
  const PatchSurface& surf = model_->patches[patch];
  const BasisEval b = surf.basis_at(xi, eta, 1);
  const SurfacePoint sp = surf.eval_derivs(xi, eta, 1);
  return make_sample(gather(*this, patch, b.indices), b, sp, model_->sigma());
}

Eigen::Vector2d SolutionField::recovered_phi(int patch, double xi, double eta) const {
  if (!has_recovered_gradient())
    throw std::logic_error("no recovered gradient: call recover_gradient first");
  if (patch < 0 || patch >= static_cast<int>(model_->patches.size()))
    throw std::invalid_argument("patch index out of range");
  const PatchSurface& surf = model_->patches[patch];
  const BasisEval b = surf.basis_at(xi, eta, 0);
  Eigen::Vector2d phi = Eigen::Vector2d::Zero();
  for (std::size_t a = 0; a < b.indices.size(); ++a) {
    const int pid = dofs_.point_id(patch, b.indices[a]);
    phi.x() += b.d(0, a) * (gx_[pid] + coeffs_[dofs_.dof(1, pid)]);
    phi.y() += b.d(0, a) * (gy_[pid] + coeffs_[dofs_.dof(2, pid)]);
  }
  return phi;
}

void recover_gradient(SolutionField& field) {
  const MultipatchModel& model = field.model();
  const DofMap& dm = field.dofs();
  const int np = dm.num_points;

  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd bx = Eigen::VectorXd::Zero(np), by = Eigen::VectorXd::Zero(np);
  for (std::size_t patch = 0; patch < model.patches.size(); ++patch) {
    const PatchSurface& surf = model.patches[patch];
    const QuadratureRule rule = rule_for(surf.degree(0), surf.degree(1));
    for (const ElementCell& cell : surf.element_cells()) {
      const double dxi = cell.xi1() - cell.xi0(), deta = cell.eta1() - cell.eta0();
      const CellScan sc = gather(field, static_cast<int>(patch), cell.support());
      for (int k = 0; k < rule.size(); ++k) {
        const double xi = cell.xi0() + rule.xi[k] * dxi;
        const double eta = cell.eta0() + rule.eta[k] * deta;
        const BasisEval b = cell.basis_at(xi, eta, 1);
        const SurfacePoint sp = cell.geometry_at(xi, eta, 1);
        const double wq = rule.weights[k] * dxi * deta * sp.jac.determinant();
        const Eigen::Matrix2d jinv = sp.jac.inverse();
        const Eigen::Vector2d gu =
            jinv.transpose() * Eigen::Vector2d(b.d.row(1).dot(sc.cu), b.d.row(2).dot(sc.cu));
        for (std::size_t a = 0; a < b.indices.size(); ++a) {
          const int pa = dm.point_id(static_cast<int>(patch), b.indices[a]);
          for (std::size_t c = 0; c < b.indices.size(); ++c) {
            const int pc = dm.point_id(static_cast<int>(patch), b.indices[c]);
            trips.emplace_back(pa, pc, wq * b.d(0, a) * b.d(0, c));
          }
          bx[pa] += wq * b.d(0, a) * gu.x();
          by[pa] += wq * b.d(0, a) * gu.y();
        }
      }
    }
  }

  Eigen::SparseMatrix<double> M(np, np);
  M.setFromTriplets(trips.begin(), trips.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(M);
  if (ldlt.info() != Eigen::Success)
    throw NumericError("projection mass matrix factorization failed");
  field.gx_ = ldlt.solve(bx);
  field.gy_ = ldlt.solve(by);
}

double l2_error(const SolutionField& field, const AnalyticSolution& oracle,
                bool corrected) {
  const MultipatchModel& model = field.model();
  const double sigma = model.sigma();
  double num = 0.0, den = 0.0;
  for (std::size_t patch = 0; patch < model.patches.size(); ++patch) {
    const PatchSurface& surf = model.patches[patch];
    const QuadratureRule rule = rule_for(surf.degree(0), surf.degree(1));
    for (const ElementCell& cell : surf.element_cells()) {
      const double dxi = cell.xi1() - cell.xi0(), deta = cell.eta1() - cell.eta0();
      const CellScan sc = gather(field, static_cast<int>(patch), cell.support());
      for (int k = 0; k < rule.size(); ++k) {
        const double xi = cell.xi0() + rule.xi[k] * dxi;
        const double eta = cell.eta0() + rule.eta[k] * deta;
        const BasisEval b = cell.basis_at(xi, eta, 1);
        const SurfacePoint sp = cell.geometry_at(xi, eta, 1);
        const double wq = rule.weights[k] * dxi * deta * sp.jac.determinant();
        const FieldSample fs = make_sample(sc, b, sp, sigma);
        const double uc = corrected ? fs.u_check : fs.u;
        const double ua = oracle_value(oracle, sp.x, corrected);
        num += wq * (uc - ua) * (uc - ua);
        den += wq * ua * ua;
      }
    }
  }
  if (!(den > 0.0))
    throw std::invalid_argument("reference field vanishes: error ratio undefined");
  return num / den;
}

namespace {

LineSample line_sample_at(const SolutionField& field, int patch, double xi, double eta,
                          double s) {
  const FieldSample fs = field.at(patch, xi, eta);
  LineSample ls;
  ls.s = s;
  ls.u = fs.u;
  ls.u_check = fs.u_check;
  ls.psi = fs.psi1;
  ls.phi = fs.phi.x();
  ls.phi_rec = field.has_recovered_gradient()
                   ? field.recovered_phi(patch, xi, eta).x()
                   : ls.phi;
  return ls;
}

}  // namespace

std::vector<LineSample> sample_radial(const SolutionField& field, int n) {
  const MultipatchModel& model = field.model();
  if (model.patches.size() != 5 || model.interfaces.size() != 8)
    throw std::invalid_argument("radial sampling expects the five-patch disk layout");
  if (n < 2) throw std::invalid_argument("need at least two samples");

  const double s_inner = model.patches[0].eval(1.0, 0.5).x();
  const double R = model.patches[1].eval(1.0, 0.5).x();

  std::vector<LineSample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double r = R * i / (n - 1);
    if (r <= s_inner) {
      // the central patch maps (xi, 0.5) affinely onto the x axis
      out.push_back(line_sample_at(field, 0, 0.5 * (r / s_inner + 1.0), 0.5, r));
    } else if (i == n - 1) {
      out.push_back(line_sample_at(field, 1, 1.0, 0.5, R));
    } else {
      double lo = 0.0, hi = 1.0;  // x(xi, 0.5) grows monotonically along the ray
      for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        (model.patches[1].eval(mid, 0.5).x() < r ? lo : hi) = mid;
      }
      out.push_back(line_sample_at(field, 1, 0.5 * (lo + hi), 0.5, r));
    }
  }
  return out;
}

std::vector<LineSample> sample_centerline(const SolutionField& field, int n) {
  const MultipatchModel& model = field.model();
  if (model.patches.size() != 1)
    throw std::invalid_argument("centerline sampling expects a single-patch strip");
  if (n < 2) throw std::invalid_argument("need at least two samples");
  std::vector<LineSample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double xi = static_cast<double>(i) / (n - 1);
    out.push_back(line_sample_at(field, 0, xi, 0.5,
                                 model.patches[0].eval(xi, 0.5).x()));
  }
  return out;
}

ResidualStats strong_residual(const SolutionField& field, int m) {
  const MultipatchModel& model = field.model();
  for (const PatchSurface& surf : model.patches)
    if (surf.degree(0) < 2 || surf.degree(1) < 2)
      throw std::invalid_argument("strong residual needs degree >= 2 in both directions");
  if (m < 1) throw std::invalid_argument("need at least one sample per direction");

  const double sigma = model.sigma();
  ResidualStats stats;
  double sum_u = 0.0, sum_rot = 0.0;
  for (std::size_t patch = 0; patch < model.patches.size(); ++patch) {
    const PatchSurface& surf = model.patches[patch];
    for (const ElementCell& cell : surf.element_cells()) {
      const double dxi = cell.xi1() - cell.xi0(), deta = cell.eta1() - cell.eta0();
      const CellScan sc = gather(field, static_cast<int>(patch), cell.support());
      for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
          const double xi = cell.xi0() + (i + 0.5) / m * dxi;
          const double eta = cell.eta0() + (j + 0.5) / m * deta;
          const BasisEval b = cell.basis_at(xi, eta, 2);
          const SurfacePoint sp = cell.geometry_at(xi, eta, 2);
          const Eigen::Matrix2d jinv = sp.jac.inverse();
          const FieldSample fs = make_sample(sc, b, sp, sigma);
          const Eigen::Matrix2d Hu =
              physical_hessian(param_hessian(b.d, sc.cu), fs.du, sp, jinv);
          const Eigen::Matrix2d H1 =
              physical_hessian(param_hessian(b.d, sc.cp1), fs.dpsi1, sp, jinv);
          const Eigen::Matrix2d H2 =
              physical_hessian(param_hessian(b.d, sc.cp2), fs.dpsi2, sp, jinv);

          const double f = model.load ? model.load(sp.x) : model.fbar;
          const double div_psi = fs.dpsi1.x() + fs.dpsi2.y();
          const double ru = -kShear * (Hu.trace() + div_psi) - f;
          const double ddiv1 = H1(0, 0) + H2(0, 1);
          const double ddiv2 = H1(0, 1) + H2(1, 1);
          const double r1 = -(2.0 * sigma + 1.0) / 12.0 * ddiv1 -
                            H1.trace() / 12.0 + kShear * (fs.du.x() + fs.psi1);
          const double r2 = -(2.0 * sigma + 1.0) / 12.0 * ddiv2 -
                            H2.trace() / 12.0 + kShear * (fs.du.y() + fs.psi2);
          const double rot = std::hypot(r1, r2);

          stats.max_u = std::max(stats.max_u, std::abs(ru));
          stats.max_rot = std::max(stats.max_rot, rot);
          sum_u += std::abs(ru);
          sum_rot += rot;
          ++stats.samples;
        }
      }
    }
  }
  stats.mean_u = sum_u / stats.samples;
  stats.mean_rot = sum_rot / stats.samples;
  return stats;
}

double fit_slope(const std::vector<ConvergenceRow>& rows) {
  if (rows.size() < 3)
    throw std::invalid_argument("slope fitting needs at least three refinement levels");
  constexpr double kFloor = 1e-13;  // round-off plateau of the squared-error ratio
  std::vector<const ConvergenceRow*> usable;
  for (const ConvergenceRow& row : rows)
    if (row.l2 > kFloor) usable.push_back(&row);
  if (usable.size() > 3) usable.erase(usable.begin(), usable.end() - 3);
  if (usable.size() < 2)
    throw NumericError("error already at the round-off floor on all levels");

  double mx = 0.0, my = 0.0;
  for (const ConvergenceRow* row : usable) {
    mx += std::log(row->h);
    my += std::log(row->l2);
  }
  mx /= usable.size();
  my /= usable.size();
  double sxx = 0.0, sxy = 0.0;
  for (const ConvergenceRow* row : usable) {
    const double dx = std::log(row->h) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(row->l2) - my);
  }
  return sxy / sxx;
}

}  // namespace igaplate
