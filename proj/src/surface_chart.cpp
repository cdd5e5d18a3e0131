#include "laguerre/surface_chart.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace laguerre {

Box Box::cube(int n, double half_width) {
  return Box{Vec::Constant(n, -half_width), Vec::Constant(n, half_width)};
}

bool Box::contains(const Vec& u, double margin) const {
  if (u.size() != lo.size()) return false;
  for (Eigen::Index i = 0; i < u.size(); ++i)
    if (!(u[i] - margin > lo[i] && u[i] + margin < hi[i])) return false;
  return true;
}

std::vector<Vec> Grid::points() const {
  const int n = static_cast<int>(center.size());
  if (points_per_axis < 1) throw InputError("grid needs at least one point per axis");
  std::vector<Vec> out;
  std::vector<int> idx(n, 0);
  const int m = points_per_axis;
  auto coord = [&](int i) {
    return m == 1 ? 0.0 : -half_width + 2.0 * half_width * i / (m - 1);
  };
  while (true) {
    Vec p(n);
    for (int c = 0; c < n; ++c) p[c] = center[c] + coord(idx[c]);
    out.push_back(p);
    int c = n - 1;
    while (c >= 0 && ++idx[c] == m) idx[c--] = 0;
    if (c < 0) break;
  }
  return out;
}

Chart::Chart(int n, Box domain) : n_(n), domain_(std::move(domain)) {
  if (n < 1) throw DimensionError("chart dimension must be positive");
  if (domain_.lo.size() != n || domain_.hi.size() != n)
    throw DimensionError("chart domain does not match dimension");
}

void Chart::exact_jet(const Vec&, JetPoint&) const {
  throw Error("chart does not supply exact derivatives");
}

Vec cross_normal(const Mat& dx) {
  const int n = static_cast<int>(dx.rows());
  const int d = n + 1;
  Vec xi(d);
  Mat M(d, d);
  M.topRows(n) = dx;
  for (int k = 0; k < d; ++k) {
    M.row(n).setZero();
    M(n, k) = 1.0;
    xi[k] = M.determinant();
  }
  const double len = xi.norm();
  if (!(len > 0)) throw ImmersionError("cross product of tangent vectors vanishes");
  return xi / len;
}

namespace {

void check_rank(const Mat& dx) {
  Eigen::JacobiSVD<Mat> svd(dx);
  const auto& s = svd.singularValues();
  if (!(s[s.size() - 1] > 1e-10 * std::max(1.0, s[0])))
    throw ImmersionError("Jacobian is rank deficient");
}

// Weingarten relation d_a xi = -II_ac I^{cb} d_b x.
Mat weingarten_dxi(const Mat& dx, const std::vector<Vec>& ddx, const Vec& xi) {
  const int n = static_cast<int>(dx.rows());
  Mat I = dx * dx.transpose();
  Mat II(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) II(a, b) = ddx[a * n + b].dot(xi);
  return -II * I.inverse() * dx;
}

}  // namespace

JetPoint Chart::evaluate_jet(const Vec& u) const {
  if (u.size() != n_) throw DimensionError("parameter point has wrong dimension");
  if (!domain_.contains(u, 2.0 * fd.step))
    throw MarginError("parameter point too close to the chart boundary");
  JetPoint jet;
  jet.u = u;
  if (exact_derivatives()) {
    exact_jet(u, jet);
  } else {
    if (!(fd.step > 0)) throw InputError("fd step must be positive");
    Patch<Vec> patch(u, fd.step, fd.scheme, [this](const Vec& p) { return position(p); });
    auto id = [](const Vec& v) { return v; };
    jet.x = patch.center();
    jet.dx = Mat(n_, n_ + 1);
    jet.ddx.assign(n_ * n_, Vec());
    for (int a = 0; a < n_; ++a) {
      jet.dx.row(a) = patch.d(a, id).transpose();
      for (int b = 0; b < n_; ++b) jet.ddx[a * n_ + b] = patch.dd(a, b, id);
    }
  }
  check_rank(jet.dx);
  if (!jet.analytic_normal) {
    jet.xi = cross_normal(jet.dx);
    jet.dxi = weingarten_dxi(jet.dx, jet.ddx, jet.xi);
  }
  if (flip_normal) {
    jet.xi = -jet.xi;
    jet.dxi = -jet.dxi;
  }
  return jet;
}

FunctionChart::FunctionChart(int n, Box domain, std::function<Vec(const Vec&)> f,
                             std::string name)
    : Chart(n, std::move(domain)), f_(std::move(f)), name_(std::move(name)) {}

ReparametrizedChart::ReparametrizedChart(std::shared_ptr<const Chart> base, Mat R, Box domain)
    : Chart(base->n(), std::move(domain)), base_(std::move(base)), R_(std::move(R)) {
  if (R_.rows() != n() || R_.cols() != n()) throw DimensionError("reparametrization shape");
  fd = base_->fd;
  flip_normal = false;
}

void ReparametrizedChart::exact_jet(const Vec& w, JetPoint& jet) const {
  const int n = this->n();
  JetPoint b = base_->evaluate_jet(R_ * w);
  jet.x = b.x;
  jet.dx = R_.transpose() * b.dx;
  jet.ddx.assign(n * n, Vec::Zero(n + 1));
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) jet.ddx[a * n + c] += R_(p, a) * R_(q, c) * b.dd(p, q);
  jet.analytic_normal = true;
  jet.xi = b.xi;
  jet.dxi = R_.transpose() * b.dxi;
  if (R_.determinant() < 0) {
    jet.xi = -jet.xi;
    jet.dxi = -jet.dxi;
  }
}

FundamentalForms fundamental_forms(const JetPoint& jet) {
  const int n = jet.n();
  FundamentalForms f;
  f.I = jet.dx * jet.dx.transpose();
  if (std::abs(f.I.determinant()) < 1e-14 * std::pow(f.I.norm(), n))
    throw ImmersionError("first fundamental form is singular");
  f.II = Mat(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) f.II(a, b) = jet.dd(a, b).dot(jet.xi);
  f.III = jet.dxi * jet.dxi.transpose();
  return f;
}

CurvatureFrame frame_from_curvatures(const Vec& k) {
  CurvatureFrame fr;
  const auto n = k.size();
  fr.k = k;
  fr.radii = k.cwiseInverse();
  fr.r = fr.radii.sum() / static_cast<double>(n);
  fr.rho = std::sqrt((fr.radii.array() - fr.r).square().sum());
  return fr;
}

CurvatureFrame principal_decomposition(const JetPoint& jet, const PrincipalOptions& opt) {
  const int n = jet.n();
  const FundamentalForms f = fundamental_forms(jet);
  Mat II = 0.5 * (f.II + f.II.transpose());
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(II, f.I);
  if (es.info() != Eigen::Success) throw DegeneracyError("principal eigenproblem failed");
  const Vec kv = es.eigenvalues();
  const Mat ev = es.eigenvectors();

  const double kmax = kv.cwiseAbs().maxCoeff();
  if (!(kmax > 0)) throw VanishingCurvatureError("all principal curvatures vanish");
  if (kv.maxCoeff() - kv.minCoeff() < opt.umbilic_rel * kmax)
    throw UmbilicError("umbilic point: principal curvatures coincide");
  for (int i = 0; i < n; ++i)
    if (std::abs(kv[i]) <= opt.floor_rel * kmax)
      throw VanishingCurvatureError("a principal curvature vanishes");

  Mat e = ev;
  for (int i = 0; i < n; ++i) {
    e.col(i) /= std::sqrt(e.col(i).dot(f.I * e.col(i)));
    for (int c = 0; c < n; ++c) {
      if (std::abs(e(c, i)) > 1e-12) {
        if (e(c, i) < 0) e.col(i) = -e.col(i);
        break;
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (kv[a] != kv[b]) return kv[a] > kv[b];
    return e(0, a) > e(0, b);
  });
  Vec k(n);
  Mat es_sorted(n, n);
  for (int i = 0; i < n; ++i) {
    k[i] = kv[order[i]];
    es_sorted.col(i) = e.col(order[i]);
  }
  CurvatureFrame fr = frame_from_curvatures(k);
  fr.e = es_sorted;
  for (int i = 0; i + 1 < n; ++i)
    if (k[i] - k[i + 1] < opt.umbilic_rel * kmax) fr.ties = true;
  return fr;
}

bool curvature_line_check(const Chart& chart, const std::vector<Vec>& grid, double tol) {
  for (const Vec& u : grid) {
    const FundamentalForms f = fundamental_forms(chart.evaluate_jet(u));
    const int n = chart.n();
    const double si = f.I.diagonal().cwiseAbs().maxCoeff();
    const double sii = std::max(f.II.diagonal().cwiseAbs().maxCoeff(), 1e-300);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        if (std::abs(f.I(a, b)) > tol * si || std::abs(f.II(a, b)) > tol * sii) return false;
      }
  }
  return true;
}

}  // namespace laguerre
