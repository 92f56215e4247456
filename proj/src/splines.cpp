#include "igaplate/splines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "igaplate/errors.hpp"

namespace igaplate {

namespace {

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Bernstein basis of degree p on [0, 1]: values plus `nders` derivative rows,
// (nders+1) x (p+1).  Degree-reduction identities give the derivatives.
void bernstein_rows(int p, double u, int nders, Eigen::MatrixXd& out) {
  out.setZero(nders + 1, p + 1);

  // triangular recurrence for the values of degrees 0..p; keep the last three
  std::vector<double> full(p + 1), pm1, pm2;
  full[0] = 1.0;
  for (int d = 1; d <= p; ++d) {
    if (nders >= 1 && d == p) pm1.assign(full.begin(), full.begin() + p);
    if (nders >= 2 && d == p - 1 && p >= 2) pm2.assign(full.begin(), full.begin() + (p - 1));
    double saved = 0.0;
    for (int i = 0; i < d; ++i) {
      const double tmp = full[i];
      full[i] = saved + (1.0 - u) * tmp;
      saved = u * tmp;
    }
    full[d] = saved;
  }
  if (p == 0) {
    out(0, 0) = 1.0;
    return;
  }
  for (int i = 0; i <= p; ++i) out(0, i) = full[i];

  if (nders >= 1) {
    auto lower = [&](const std::vector<double>& v, int i) {
      return (i < 0 || i >= static_cast<int>(v.size())) ? 0.0 : v[i];
    };
    for (int i = 0; i <= p; ++i)
      out(1, i) = p * (lower(pm1, i - 1) - lower(pm1, i));
    if (nders >= 2) {
      if (p >= 2) {
        for (int i = 0; i <= p; ++i)
          out(2, i) = p * (p - 1) *
                      (lower(pm2, i - 2) - 2.0 * lower(pm2, i - 1) + lower(pm2, i));
      }
      // second derivative of a linear is zero; rows beyond stay zero
    }
  }
}

// Quotient rule for rational bases.  `nonrat` holds the tensor B-spline rows
// in the layout of BasisEval; the result has the same layout.
void rationalize(const Eigen::MatrixXd& nonrat, const Eigen::VectorXd& w, int k,
                 Eigen::MatrixXd& out) {
  const int rows = nonrat.rows();
  const int n = nonrat.cols();
  out.resize(rows, n);

  Eigen::VectorXd W(rows);
  for (int r = 0; r < rows; ++r) {
    double acc = 0.0;
    for (int a = 0; a < n; ++a) acc += w[a] * nonrat(r, a);
    W[r] = acc;
  }
  if (!(W[0] > 0.0)) throw NumericError("rational basis: weight function is not positive");

  for (int a = 0; a < n; ++a) out(0, a) = w[a] * nonrat(0, a) / W[0];
  if (k >= 1) {
    for (int a = 0; a < n; ++a) {
      out(1, a) = (w[a] * nonrat(1, a) - out(0, a) * W[1]) / W[0];
      out(2, a) = (w[a] * nonrat(2, a) - out(0, a) * W[2]) / W[0];
    }
  }
  if (k >= 2) {
    for (int a = 0; a < n; ++a) {
      out(3, a) = (w[a] * nonrat(3, a) - 2.0 * out(1, a) * W[1] - out(0, a) * W[3]) / W[0];
      out(4, a) = (w[a] * nonrat(4, a) - out(1, a) * W[2] - out(2, a) * W[1] -
                   out(0, a) * W[4]) / W[0];
      out(5, a) = (w[a] * nonrat(5, a) - 2.0 * out(2, a) * W[2] - out(0, a) * W[5]) / W[0];
    }
  }
}

// tensor-product assembly of two univariate derivative tables into the
// BasisEval row layout
void tensor_rows(const Eigen::MatrixXd& d1, const Eigen::MatrixXd& d2, int p,
                 int q, int k, Eigen::MatrixXd& out) {
  const int rows = (k == 0) ? 1 : (k == 1 ? 3 : 6);
  const int n = (p + 1) * (q + 1);
  out.resize(rows, n);
  for (int j = 0; j <= q; ++j) {
    for (int i = 0; i <= p; ++i) {
      const int a = j * (p + 1) + i;
      out(0, a) = d1(0, i) * d2(0, j);
      if (k >= 1) {
        out(1, a) = d1(1, i) * d2(0, j);
        out(2, a) = d1(0, i) * d2(1, j);
      }
      if (k >= 2) {
        out(3, a) = d1(2, i) * d2(0, j);
        out(4, a) = d1(1, i) * d2(1, j);
        out(5, a) = d1(0, i) * d2(2, j);
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// KnotVector

KnotVector::KnotVector(int degree, std::vector<double> knots)
    : degree_(degree), knots_(std::move(knots)) {
  if (degree_ < 0) throw std::invalid_argument("knot vector: negative degree");
  if (degree_ > 31) throw std::invalid_argument("knot vector: degree above 31 unsupported");
  const int nk = static_cast<int>(knots_.size());
  if (nk < 2 * (degree_ + 1))
    throw std::invalid_argument("knot vector: too few knots for the degree");
  if (!all_finite(knots_))
    throw std::invalid_argument("knot vector: knots must be finite");
  if (!std::is_sorted(knots_.begin(), knots_.end()))
    throw std::invalid_argument("knot vector: knots must be nondecreasing");
  if (!(knots_.front() < knots_.back()))
    throw std::invalid_argument("knot vector: empty parameter range");
  for (int i = 0; i <= degree_; ++i) {
    if (knots_[i] != knots_.front() || knots_[nk - 1 - i] != knots_.back())
      throw std::invalid_argument(
          "knot vector: must be open (end knots repeated degree+1 times)");
  }
  if (nk > 2 * (degree_ + 1)) {
    if (knots_[degree_ + 1] == knots_.front() ||
        knots_[nk - degree_ - 2] == knots_.back())
      throw std::invalid_argument(
          "knot vector: end knots repeated more than degree+1 times");
  }
  // interior multiplicity at most the degree
  int run = 1;
  for (int i = degree_ + 2; i < nk - degree_ - 1; ++i) {
    run = (knots_[i] == knots_[i - 1]) ? run + 1 : 1;
    if (run > degree_)
      throw std::invalid_argument("knot vector: interior multiplicity exceeds degree");
  }
}

int KnotVector::num_spans() const {
  int count = 0;
  for (int i = degree_; i < num_basis(); ++i)
    if (knots_[i + 1] > knots_[i]) ++count;
  return count;
}

std::vector<int> KnotVector::nonempty_spans() const {
  std::vector<int> spans;
  for (int i = degree_; i < num_basis(); ++i)
    if (knots_[i + 1] > knots_[i]) spans.push_back(i);
  return spans;
}

int KnotVector::find_span(double xi) const {
  const int nb = num_basis();
  const double lo = knots_[degree_], hi = knots_[nb];
  const double tol = 1e-12 * (hi - lo);
  if (xi < lo - tol || xi > hi + tol)
    throw std::domain_error("find_span: parameter " + std::to_string(xi) +
                            " outside [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
  if (xi >= hi) return nb - 1;  // right end belongs to the last span
  if (xi <= lo) xi = lo;

  int low = degree_, high = nb, mid = (low + high) / 2;
  while (xi < knots_[mid] || xi >= knots_[mid + 1]) {
    if (xi < knots_[mid])
      high = mid;
    else
      low = mid;
    mid = (low + high) / 2;
  }
  return mid;
}

void KnotVector::basis_funs(int span, double xi, double* out) const {
  const int p = degree_;
  double left[32], right[32];
  out[0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = xi - knots_[span + 1 - j];
    right[j] = knots_[span + j] - xi;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = out[r] / (right[r + 1] + left[j - r]);
      out[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    out[j] = saved;
  }
}

void KnotVector::basis_ders(int span, double xi, int nders,
                            Eigen::MatrixXd& ders) const {
  const int p = degree_;
  const int nd = std::min(nders, p);
  ders.setZero(nders + 1, p + 1);

  Eigen::MatrixXd ndu(p + 1, p + 1);
  double left[32], right[32];
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = xi - knots_[span + 1 - j];
    right[j] = knots_[span + j] - xi;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];
      const double temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }
  for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);
  if (nd == 0) return;

  Eigen::MatrixXd a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= nd; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= nd; ++k) {
    for (int j = 0; j <= p; ++j) ders(k, j) *= factor;
    factor *= (p - k);
  }
}

double KnotVector::greville(int i) const {
  if (i < 0 || i >= num_basis())
    throw std::invalid_argument("greville: basis index out of range");
  if (degree_ == 0) return 0.5 * (knots_[i] + knots_[i + 1]);
  double acc = 0.0;
  for (int j = 1; j <= degree_; ++j) acc += knots_[i + j];
  return acc / degree_;
}

std::vector<Eigen::MatrixXd> KnotVector::extraction_operators() const {
  const int p = degree_;
  const auto& U = knots_;
  const int m = static_cast<int>(U.size());

  std::vector<Eigen::MatrixXd> ops;
  ops.push_back(Eigen::MatrixXd::Identity(p + 1, p + 1));

  int a = p, b = p + 1;
  std::vector<double> alphas(std::max(p, 1), 0.0);
  while (b < m - 1) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Identity(p + 1, p + 1);
    const int i = b;
    while (b < m - 1 && U[b + 1] == U[b]) ++b;
    const int mult = b - i + 1;
    if (mult < p) {
      const double numer = U[b] - U[a];
      for (int j = p; j > mult; --j) alphas[j - mult - 1] = numer / (U[a + j] - U[a]);
      const int r = p - mult;
      Eigen::MatrixXd& cur = ops.back();
      for (int j = 1; j <= r; ++j) {
        const int s = mult + j;
        for (int c = p; c >= s; --c) {
          const double alpha = alphas[c - s];
          cur.col(c) = alpha * cur.col(c) + (1.0 - alpha) * cur.col(c - 1);
        }
        if (b < m - 1)  // seed the overlapping coefficients of the next span
          next.block(r - j, r - j, j + 1, 1) = cur.block(p - j, p, j + 1, 1);
      }
    }
    if (b < m - 1) {
      ops.push_back(next);
      a = b;
      ++b;
    } else {
      break;
    }
  }
  return ops;
}

// ---------------------------------------------------------------------------
// ControlNet

ControlNet::ControlNet(int n1, int n2)
    : n1_(n1), n2_(n2), points_(static_cast<size_t>(n1) * n2, Eigen::Vector2d::Zero()),
      weights_(static_cast<size_t>(n1) * n2, 1.0) {
  if (n1 < 1 || n2 < 1)
    throw std::invalid_argument("control net: dimensions must be positive");
}

// ---------------------------------------------------------------------------
// PatchSurface

PatchSurface::PatchSurface(KnotVector kv1, KnotVector kv2, ControlNet net)
    : kv1_(std::move(kv1)), kv2_(std::move(kv2)), net_(std::move(net)) {
  if (kv1_.num_basis() != net_.n1() || kv2_.num_basis() != net_.n2())
    throw std::invalid_argument("patch: control net size does not match knot vectors");
  for (int a = 0; a < net_.size(); ++a) {
    if (!(net_.weight(a) > 0.0) || !std::isfinite(net_.weight(a)))
      throw std::invalid_argument("patch: weights must be strictly positive");
    if (!net_.point(a).allFinite())
      throw std::invalid_argument("patch: control points must be finite");
  }
}

BasisEval PatchSurface::basis_at(double xi, double eta, int k) const {
  if (k < 0 || k > 2)
    throw std::invalid_argument("basis_at: derivative order must be 0, 1 or 2");
  const int p = kv1_.degree(), q = kv2_.degree();
  const int s1 = kv1_.find_span(xi), s2 = kv2_.find_span(eta);

  Eigen::MatrixXd d1, d2;
  kv1_.basis_ders(s1, xi, k, d1);
  kv2_.basis_ders(s2, eta, k, d2);

  BasisEval eval;
  eval.indices.resize((p + 1) * (q + 1));
  Eigen::VectorXd w((p + 1) * (q + 1));
  for (int j = 0; j <= q; ++j) {
    for (int i = 0; i <= p; ++i) {
      const int a = j * (p + 1) + i;
      const int ni = s1 - p + i, nj = s2 - q + j;
      eval.indices[a] = net_.index(ni, nj);
      w[a] = net_.weight(ni, nj);
    }
  }
  Eigen::MatrixXd nonrat;
  tensor_rows(d1, d2, p, q, k, nonrat);
  rationalize(nonrat, w, k, eval.d);
  return eval;
}

Eigen::Vector2d PatchSurface::eval(double xi, double eta) const {
  return eval_derivs(xi, eta, 0).x;
}

SurfacePoint PatchSurface::eval_derivs(double xi, double eta, int k) const {
  const BasisEval b = basis_at(xi, eta, k);
  SurfacePoint sp;
  const int n = static_cast<int>(b.indices.size());
  for (int a = 0; a < n; ++a) {
    const Eigen::Vector2d& P = net_.point(b.indices[a]);
    sp.x += b.d(0, a) * P;
    if (k >= 1) {
      sp.jac.col(0) += b.d(1, a) * P;
      sp.jac.col(1) += b.d(2, a) * P;
    }
    if (k >= 2)
      for (int r = 0; r < 3; ++r) sp.d2[r] += b.d(3 + r, a) * P;
  }
  return sp;
}

PatchSurface PatchSurface::with_inserted_knots(
    int dir, const std::vector<double>& values) const {
  if (dir != 0 && dir != 1) throw std::invalid_argument("insert: direction must be 0 or 1");
  PatchSurface result = *this;
  for (double x : values) {
    const KnotVector& kv = result.kv(dir);
    const int p = kv.degree();
    if (!(x > kv.front() && x < kv.back()))
      throw std::invalid_argument("insert: knot must lie strictly inside the range");
    const int mult = static_cast<int>(
        std::count(kv.knots().begin(), kv.knots().end(), x));
    if (mult + 1 > p)
      throw std::invalid_argument("insert: multiplicity would exceed the degree");
    const int span = kv.find_span(x);
    const auto& U = kv.knots();

    std::vector<double> new_knots(U);
    new_knots.insert(new_knots.begin() + span + 1, x);

    const ControlNet& old = result.net_;
    const int n1 = old.n1(), n2 = old.n2();
    const int nn1 = (dir == 0) ? n1 + 1 : n1;
    const int nn2 = (dir == 1) ? n2 + 1 : n2;
    ControlNet fresh(nn1, nn2);

    // Boehm single-knot insertion on homogeneous coordinates, applied to every
    // control line running along `dir`
    auto homog = [&](int i, int j) -> Eigen::Vector3d {
      const double w = old.weight(i, j);
      return {w * old.point(i, j).x(), w * old.point(i, j).y(), w};
    };
    const int nline = (dir == 0) ? n2 : n1;
    const int nnew = (dir == 0) ? nn1 : nn2;
    for (int line = 0; line < nline; ++line) {
      for (int t = 0; t < nnew; ++t) {
        Eigen::Vector3d Q;
        if (t <= span - p) {
          Q = (dir == 0) ? homog(t, line) : homog(line, t);
        } else if (t <= span) {
          const double denom = U[t + p] - U[t];
          const double alpha = (x - U[t]) / denom;
          const Eigen::Vector3d a1 = (dir == 0) ? homog(t, line) : homog(line, t);
          const Eigen::Vector3d a0 =
              (dir == 0) ? homog(t - 1, line) : homog(line, t - 1);
          Q = alpha * a1 + (1.0 - alpha) * a0;
        } else {
          Q = (dir == 0) ? homog(t - 1, line) : homog(line, t - 1);
        }
        const int i = (dir == 0) ? t : line;
        const int j = (dir == 0) ? line : t;
        fresh.point(i, j) = Eigen::Vector2d(Q.x() / Q.z(), Q.y() / Q.z());
        fresh.weight(i, j) = Q.z();
      }
    }
    if (dir == 0)
      result = PatchSurface(KnotVector(p, new_knots), result.kv2_, fresh);
    else
      result = PatchSurface(result.kv1_, KnotVector(p, new_knots), fresh);
  }
  return result;
}

PatchSurface PatchSurface::elevated(int dir, int times) const {
  if (dir != 0 && dir != 1) throw std::invalid_argument("elevate: direction must be 0 or 1");
  if (times < 1) throw std::invalid_argument("elevate: times must be at least 1");

  const KnotVector& kv = this->kv(dir);
  const int p = kv.degree();
  const int pnew = p + times;

  // target knot vector: same breakpoints, every multiplicity raised by `times`
  std::vector<double> target;
  const auto& U = kv.knots();
  for (size_t i = 0; i < U.size(); ++i) {
    target.push_back(U[i]);
    const bool group_end = (i + 1 == U.size()) || (U[i + 1] != U[i]);
    if (group_end)
      for (int t = 0; t < times; ++t) target.push_back(U[i]);
  }
  KnotVector kv_new(pnew, target);
  const int nb = kv_new.num_basis();

  // The source curve lies in the elevated space, so interpolation at the
  // Greville abscissae of the target space recovers it exactly (up to
  // roundoff); Schoenberg-Whitney guarantees the system is nonsingular.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nb, nb);
  std::vector<int> spans(nb);
  for (int r = 0; r < nb; ++r) {
    const double g = kv_new.greville(r);
    const int span = kv_new.find_span(g);
    spans[r] = span;
    double vals[32];
    kv_new.basis_funs(span, g, vals);
    for (int c = 0; c <= pnew; ++c) A(r, span - pnew + c) = vals[c];
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);

  const int n1 = net_.n1(), n2 = net_.n2();
  const int nline = (dir == 0) ? n2 : n1;
  const int nn1 = (dir == 0) ? nb : n1;
  const int nn2 = (dir == 1) ? nb : n2;
  ControlNet fresh(nn1, nn2);

  // homogeneous curve evaluation along `dir` of the source patch
  Eigen::MatrixXd rhs(nb, 3);
  for (int line = 0; line < nline; ++line) {
    for (int r = 0; r < nb; ++r) {
      const double g = kv_new.greville(r);
      const int span = kv.find_span(g);
      double vals[32];
      kv.basis_funs(span, g, vals);
      Eigen::Vector3d s = Eigen::Vector3d::Zero();
      for (int c = 0; c <= p; ++c) {
        const int idx = span - p + c;
        const int i = (dir == 0) ? idx : line;
        const int j = (dir == 0) ? line : idx;
        const double w = net_.weight(i, j);
        s += vals[c] * Eigen::Vector3d(w * net_.point(i, j).x(),
                                       w * net_.point(i, j).y(), w);
      }
      rhs.row(r) = s.transpose();
    }
    Eigen::MatrixXd sol = lu.solve(rhs);
    for (int t = 0; t < nb; ++t) {
      const int i = (dir == 0) ? t : line;
      const int j = (dir == 0) ? line : t;
      const double w = sol(t, 2);
      if (!(w > 0.0))
        throw NumericError("elevate: computed a nonpositive weight");
      fresh.point(i, j) = Eigen::Vector2d(sol(t, 0) / w, sol(t, 1) / w);
      fresh.weight(i, j) = w;
    }
  }
  if (dir == 0) return PatchSurface(kv_new, kv2_, fresh);
  return PatchSurface(kv1_, kv_new, fresh);
}

PatchSurface PatchSurface::uniformly_refined(int times) const {
  PatchSurface result = *this;
  for (int t = 0; t < times; ++t) {
    for (int dir = 0; dir < 2; ++dir) {
      const KnotVector& kv = result.kv(dir);
      std::vector<double> mids;
      for (int s : kv.nonempty_spans())
        mids.push_back(0.5 * (kv.knots()[s] + kv.knots()[s + 1]));
      result = result.with_inserted_knots(dir, mids);
    }
  }
  return result;
}

double PatchSurface::diameter() const {
  Eigen::Vector2d lo = net_.point(0), hi = net_.point(0);
  for (int a = 1; a < net_.size(); ++a) {
    lo = lo.cwiseMin(net_.point(a));
    hi = hi.cwiseMax(net_.point(a));
  }
  return (hi - lo).norm();
}

std::vector<ElementCell> PatchSurface::element_cells() const {
  const auto ops1 = kv1_.extraction_operators();
  const auto ops2 = kv2_.extraction_operators();
  const auto spans1 = kv1_.nonempty_spans();
  const auto spans2 = kv2_.nonempty_spans();
  if (ops1.size() != spans1.size() || ops2.size() != spans2.size())
    throw NumericError("element_cells: extraction operator count mismatch");

  std::vector<ElementCell> cells;
  cells.reserve(spans1.size() * spans2.size());
  for (size_t j = 0; j < spans2.size(); ++j)
    for (size_t i = 0; i < spans1.size(); ++i)
      cells.emplace_back(*this, spans1[i], spans2[j], ops1[i], ops2[j]);
  return cells;
}

// ---------------------------------------------------------------------------
// ElementCell

ElementCell::ElementCell(const PatchSurface& patch, int span1, int span2,
                         const Eigen::MatrixXd& C1, const Eigen::MatrixXd& C2)
    : p_(patch.degree(0)), q_(patch.degree(1)), C1_(C1), C2_(C2) {
  const auto& U = patch.kv(0).knots();
  const auto& V = patch.kv(1).knots();
  xi0_ = U[span1];
  xi1_ = U[span1 + 1];
  eta0_ = V[span2];
  eta1_ = V[span2 + 1];

  const int nloc = (p_ + 1) * (q_ + 1);
  support_.resize(nloc);
  w_.resize(nloc);
  pts_.resize(nloc);
  for (int j = 0; j <= q_; ++j) {
    for (int i = 0; i <= p_; ++i) {
      const int a = j * (p_ + 1) + i;
      const int ni = span1 - p_ + i, nj = span2 - q_ + j;
      support_[a] = patch.net().index(ni, nj);
      w_[a] = patch.net().weight(ni, nj);
      pts_[a] = patch.net().point(ni, nj);
    }
  }
}

BasisEval ElementCell::basis_at(double xi, double eta, int k) const {
  if (k < 0 || k > 2)
    throw std::invalid_argument("basis_at: derivative order must be 0, 1 or 2");
  const double du = xi1_ - xi0_, dv = eta1_ - eta0_;
  const double u = (xi - xi0_) / du, v = (eta - eta0_) / dv;

  Eigen::MatrixXd b1, b2;
  bernstein_rows(p_, u, k, b1);
  bernstein_rows(q_, v, k, b2);

  // spline rows = extraction operator times Bernstein rows, with the chain
  // factor for the affine map from the span to [0, 1]
  Eigen::MatrixXd d1 = C1_ * b1.transpose();  // (p+1) x (k+1)
  Eigen::MatrixXd d2 = C2_ * b2.transpose();
  d1.transposeInPlace();                      // (k+1) x (p+1)
  d2.transposeInPlace();
  double f1 = 1.0, f2 = 1.0;
  for (int r = 1; r <= k; ++r) {
    f1 /= du;
    f2 /= dv;
    d1.row(r) *= f1;
    d2.row(r) *= f2;
  }

  BasisEval eval;
  eval.indices = support_;
  Eigen::MatrixXd nonrat;
  tensor_rows(d1, d2, p_, q_, k, nonrat);
  rationalize(nonrat, w_, k, eval.d);
  return eval;
}

SurfacePoint ElementCell::geometry_at(double xi, double eta, int k) const {
  const BasisEval b = basis_at(xi, eta, k);
  SurfacePoint sp;
  const int n = static_cast<int>(pts_.size());
  for (int a = 0; a < n; ++a) {
    const Eigen::Vector2d& P = pts_[a];
    sp.x += b.d(0, a) * P;
    if (k >= 1) {
      sp.jac.col(0) += b.d(1, a) * P;
      sp.jac.col(1) += b.d(2, a) * P;
    }
    if (k >= 2)
      for (int r = 0; r < 3; ++r) sp.d2[r] += b.d(3 + r, a) * P;
  }
  return sp;
}

}  // namespace igaplate
